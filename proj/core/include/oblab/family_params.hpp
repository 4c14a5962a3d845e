#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace oblab {

// Parameters of the keyed circuit family, the probe set and the encoding
// space. JSON field names (kappa, ell, ell_prime, t, i_k, m, k_stat, rounds)
// are part of the config format and fixed.
struct FamilyParams {
    uint32_t key_bits = 0;       // kappa
    uint32_t input_bits = 0;     // ell
    uint32_t output_bits = 1;    // ell_prime
    uint32_t probe_count = 0;    // t
    std::vector<uint64_t> probe_points;  // i_k, ordered, distinct
    uint32_t encoding_bits = 0;  // m
    uint32_t stat_gap_bits = 0;  // k_stat
    uint32_t rounds = 0;

    uint32_t value_bits() const { return probe_count * output_bits; }

    // Throws ParamError when any structural constraint fails. Enforced
    // bounds include t <= 2^ell, distinct probes, m + k_stat <= t*ell',
    // kappa + 2 <= m, rounds*ell >= kappa, and desk-scale ceilings
    // (t*ell' <= 64, m <= 28) that keep exhaustive scans enumerable.
    void validate() const;

    bool operator==(const FamilyParams&) const = default;
};

// Built-in profiles. "tiny" keeps every 2^m scan in the millisecond range
// for exhaustive testing; "default" stays within minutes.
FamilyParams tiny_profile();
FamilyParams default_profile();
// "tiny" | "default"; anything else throws ParamError.
FamilyParams profile_by_name(const std::string& name);

// Probe set used by the built-in profiles: points (37*q + 11) mod 2^ell for
// q in [0, t), distinct whenever gcd(37, 2^ell) = 1.
std::vector<uint64_t> spread_probe_points(uint32_t count, uint32_t input_bits);

}  // namespace oblab
