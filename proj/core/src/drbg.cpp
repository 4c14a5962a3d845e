#include "oblab/drbg.hpp"

#include <openssl/sha.h>

#include "oblab/errors.hpp"

namespace oblab {

std::array<uint8_t, 32> sha256(const uint8_t* data, size_t len) {
    std::array<uint8_t, 32> out{};
    SHA256(data, len, out.data());
    return out;
}

Drbg::Drbg(std::vector<uint8_t> seed, uint32_t stream_id)
    : seed_(std::move(seed)), stream_id_(stream_id) {}

void Drbg::refill() {
    std::vector<uint8_t> msg = seed_;
    put_u32(msg, stream_id_);
    put_u32(msg, counter_);
    block_ = sha256(msg.data(), msg.size());
    ++counter_;
    pos_ = 0;
}

uint8_t Drbg::byte() {
    if (pos_ >= block_.size()) refill();
    return block_[pos_++];
}

std::vector<uint8_t> Drbg::bytes(size_t n) {
    std::vector<uint8_t> out(n);
    for (size_t i = 0; i < n; ++i) out[i] = byte();
    return out;
}

uint8_t Drbg::bit() { return byte() & 1u; }

BitVec Drbg::bits(size_t n) {
    BitVec out(n);
    for (size_t i = 0; i < n; ++i) out.set(i, bit());
    return out;
}

uint64_t Drbg::uniform(uint64_t bound) {
    if (bound == 0) throw ParamError("Drbg::uniform: bound must be positive");
    const uint64_t limit = UINT64_MAX - (UINT64_MAX % bound);
    for (;;) {
        uint64_t v = 0;
        for (int i = 0; i < 8; ++i) v = (v << 8) | byte();
        if (v < limit) return v % bound;
    }
}

}  // namespace oblab
