#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "oblab/circuit.hpp"
#include "oblab/drbg.hpp"
#include "oblab/encoding.hpp"
#include "oblab/family.hpp"

namespace oblab {

// Canonical form of a boolean function: its full truth table plus the size
// bookkeeping. Two circuits of equal width, declared size and function map
// to byte-identical canonical forms, which is the whole indistinguishability
// guarantee here — realized perfectly instead of computationally.
class CanonicalCircuit {
  public:
    CanonicalCircuit(TruthTable table, uint64_t declared_size);

    uint32_t num_inputs() const { return table_.num_inputs; }
    uint32_t num_outputs() const { return table_.num_outputs; }
    uint64_t declared_size() const { return declared_size_; }
    const TruthTable& table() const { return table_; }

    uint64_t eval(uint64_t point) const { return table_.row(point); }
    BitVec eval_bits(const BitVec& x) const;

    // [u8 version 0xC1][u16 ell][u16 ell'][u32 declared_size][rows packed
    // MSB-first]. This is the byte string every "identical obfuscation"
    // comparison is about.
    std::vector<uint8_t> canonical_bytes() const;
    static CanonicalCircuit from_bytes(const std::vector<uint8_t>& bytes);

    // Materializes the fixed multiplexer-tree gate form (exponential size;
    // meant for small widths and cross-checks).
    Circuit to_circuit() const;

    bool operator==(const CanonicalCircuit&) const = default;

  private:
    TruthTable table_;
    uint64_t declared_size_;
};

inline constexpr uint8_t kCanonicalVersion = 0xC1;

// Gate count of the multiplexer-tree form; also the padding target d for
// the m-input fingerprint circuits.
uint64_t mux_tree_gate_count(uint32_t num_inputs, uint32_t num_outputs);

// Derandomized truth-table canonicalization. Output depends only on
// (ell, ell', truth table, declared_size).
CanonicalCircuit io_obfuscate(const Circuit& c, uint64_t budget_bits = kDefaultTableBudgetBits);
CanonicalCircuit io_obfuscate(const CanonicalCircuit& c);

// Appends dead CONST0 gates so declared_size becomes target; the function
// is unchanged. target below the current declared size throws.
Circuit pad_circuit(const Circuit& c, uint64_t target);

// A candidate obfuscator maps a family-member circuit to an m-bit encoding
// that decodes to the same function (correctness + exact-m-bit slowdown).
struct VbbCandidate {
    std::string name;
    std::function<EncodedCircuit(const Circuit&, const Family&, Drbg&)> transform;
};

// Shipped candidates: "identity" re-encodes the member; "rewire" emits a
// functionally identical encoding whose ignored tail bits are randomized.
const std::vector<VbbCandidate>& vbb_candidates();

EncodedCircuit vbb_obfuscate(const VbbCandidate& candidate, const Circuit& c, const Family& f,
                             const std::vector<uint8_t>& rng_seed);

}  // namespace oblab
