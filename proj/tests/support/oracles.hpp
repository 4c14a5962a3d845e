#pragma once

// Independent reference implementations used only as test oracles. These
// deliberately avoid the circuit IR and the library's tree-walk code: the
// SPN is composed round by round on a bit array, and the GGM reference
// recurses on raw SHA-256 calls.

#include <openssl/sha.h>

#include <array>
#include <cstdint>
#include <numeric>
#include <vector>

#include "oblab/family_params.hpp"

namespace oracles {

inline constexpr std::array<uint8_t, 16> kSboxRef = {0x6, 0x4, 0xC, 0x5, 0x0, 0x7, 0x2, 0xE,
                                                     0x1, 0xF, 0x3, 0xD, 0x8, 0xA, 0x9, 0xB};

inline uint32_t perm_multiplier_ref(uint32_t ell) {
    uint32_t c = 3;
    while (std::gcd(c, ell) != 1) c += 2;
    return c;
}

inline uint64_t spn_ref_eval(uint64_t key, uint64_t point, const oblab::FamilyParams& p) {
    const uint32_t ell = p.input_bits;
    std::vector<uint8_t> s(ell);
    for (uint32_t j = 0; j < ell; ++j) s[j] = (point >> (ell - 1 - j)) & 1u;
    const uint32_t mult = perm_multiplier_ref(ell);
    for (uint32_t r = 0; r < p.rounds; ++r) {
        for (uint32_t base = 0; base + 4 <= ell; base += 4) {
            const uint8_t v = static_cast<uint8_t>(s[base] * 8 + s[base + 1] * 4 +
                                                   s[base + 2] * 2 + s[base + 3]);
            const uint8_t u = kSboxRef[v];
            s[base] = (u >> 3) & 1u;
            s[base + 1] = (u >> 2) & 1u;
            s[base + 2] = (u >> 1) & 1u;
            s[base + 3] = u & 1u;
        }
        std::vector<uint8_t> ns(ell);
        for (uint32_t i = 0; i < ell; ++i) ns[i] = s[(mult * i + 1) % ell];
        s = ns;
        for (uint32_t j = 0; j < ell; ++j) {
            const uint32_t ki = (j + 7 * r) % p.key_bits;
            s[j] ^= static_cast<uint8_t>((key >> (p.key_bits - 1 - ki)) & 1u);
        }
    }
    uint64_t out = 0;
    for (uint32_t j = 0; j < p.output_bits; ++j) out = (out << 1) | s[j];
    return out;
}

inline std::array<uint8_t, 16> ggm_ref_leaf(std::array<uint8_t, 16> seed,
                                            const std::vector<uint8_t>& path_bits, size_t at = 0) {
    if (at == path_bits.size()) return seed;
    uint8_t msg[17];
    for (int i = 0; i < 16; ++i) msg[i] = seed[i];
    msg[16] = path_bits[at] ? 0x01 : 0x00;
    uint8_t digest[32];
    SHA256(msg, sizeof msg, digest);
    std::array<uint8_t, 16> child{};
    for (int i = 0; i < 16; ++i) child[i] = digest[i];
    return ggm_ref_leaf(child, path_bits, at + 1);
}

}  // namespace oracles
