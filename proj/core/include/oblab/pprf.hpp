#pragma once

#include <array>
#include <cstdint>
#include <utility>
#include <vector>

#include "oblab/bits.hpp"

namespace oblab {

inline constexpr size_t kSeedBytes = 16;

struct Seed {
    std::array<uint8_t, kSeedBytes> bytes{};
    bool operator==(const Seed&) const = default;
};

// Length-doubling generator: left child is SHA-256(seed || 0x00) truncated
// to 16 bytes, right child SHA-256(seed || 0x01). Bit-exact by contract.
std::pair<Seed, Seed> prg(const Seed& s);

struct GgmKey {
    Seed root;
    uint16_t domain_bits = 0;
    uint8_t out_bits = 1;
};

// copath[i] is the seed of the sibling, at depth i+1, of the root-to-point
// path; the punctured point itself is stored in the clear.
struct PuncturedKey {
    BitVec point;
    std::vector<Seed> copath;
    uint16_t domain_bits = 0;
    uint8_t out_bits = 1;
};

// Root is drawn from the module DRBG (stream 0) seeded with rng_seed, so a
// key is reproducible from its seed bytes.
GgmKey keygen(const std::vector<uint8_t>& rng_seed, uint16_t domain_bits, uint8_t out_bits = 1);

// Descends the tree taking the left child on bit 0; the output is the first
// out_bits bits of the leaf seed, MSB first.
BitVec prf_eval(const GgmKey& k, const BitVec& x);
uint64_t prf_eval_u64(const GgmKey& k, uint64_t point);

PuncturedKey puncture(const GgmKey& k, const BitVec& point);

// Equals prf_eval of the source key everywhere except the punctured point,
// where it throws PuncturedPointError.
BitVec punctured_eval(const PuncturedKey& pk, const BitVec& x);
uint64_t punctured_eval_u64(const PuncturedKey& pk, uint64_t point);

// Full leaf expansion (2^depth seeds, index order); the workhorse for
// exhaustive functionality-preservation checks at small domains.
std::vector<Seed> expand_leaves(const Seed& root, uint16_t depth);
// Leaves of the punctured key: identical to the source tree everywhere but
// the punctured index, which is left all-zero.
std::vector<Seed> punctured_expand_leaves(const PuncturedKey& pk);

std::vector<uint8_t> serialize_key(const GgmKey& k);
GgmKey parse_key(const std::vector<uint8_t>& bytes);
std::vector<uint8_t> serialize_punctured_key(const PuncturedKey& pk);
PuncturedKey parse_punctured_key(const std::vector<uint8_t>& bytes);

}  // namespace oblab
