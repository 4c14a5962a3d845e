#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "oblab/bits.hpp"

namespace oblab {

std::array<uint8_t, 32> sha256(const uint8_t* data, size_t len);

// Deterministic byte generator: block_i = SHA-256(seed || stream_id_u32 ||
// i_u32), big-endian counters, blocks concatenated. Experiments give each
// trial its own stream id so results are independent of scheduling.
class Drbg {
  public:
    Drbg(std::vector<uint8_t> seed, uint32_t stream_id);

    uint8_t byte();
    std::vector<uint8_t> bytes(size_t n);
    // One bit per consumed byte (its LSB); keeps draw positions unambiguous.
    uint8_t bit();
    BitVec bits(size_t n);
    // Uniform in [0, bound) by rejection over 64-bit draws; bound > 0.
    uint64_t uniform(uint64_t bound);

  private:
    void refill();

    std::vector<uint8_t> seed_;
    uint32_t stream_id_;
    uint32_t counter_ = 0;
    std::array<uint8_t, 32> block_{};
    size_t pos_ = 32;  // forces refill on first draw
};

}  // namespace oblab
