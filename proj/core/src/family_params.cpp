#include "oblab/family_params.hpp"

#include <algorithm>
#include <bit>
#include <set>

#include "oblab/errors.hpp"

namespace oblab {

namespace {

uint32_t ceil_log2(uint32_t v) {
    uint32_t bits = 0;
    while ((uint32_t{1} << bits) < v) ++bits;
    return bits;
}

}  // namespace

void FamilyParams::validate() const {
    if (key_bits == 0 || key_bits > 24) throw ParamError("params: kappa must be in [1, 24]");
    if (input_bits == 0 || input_bits > 20) throw ParamError("params: ell must be in [1, 20]");
    if (output_bits == 0 || output_bits > 8) throw ParamError("params: ell_prime must be in [1, 8]");
    if (rounds == 0 || rounds > 16) throw ParamError("params: rounds must be in [1, 16]");
    if (encoding_bits < 4 || encoding_bits > 28)
        throw ParamError("params: m must be in [4, 28]");
    if (probe_count == 0) throw ParamError("params: t must be positive");
    if (input_bits < 64 && probe_count > (uint64_t{1} << input_bits))
        throw ParamError("params: t exceeds the input domain");
    if (probe_points.size() != probe_count)
        throw ParamError("params: i_k length differs from t");
    std::set<uint64_t> seen;
    for (uint64_t p : probe_points) {
        if (p >= (uint64_t{1} << input_bits))
            throw ParamError("params: probe point outside the input domain");
        if (!seen.insert(p).second) throw ParamError("params: probe points must be distinct");
    }
    if (value_bits() > 64)
        throw ParamError("params: t*ell_prime must be at most 64");
    if (encoding_bits + stat_gap_bits > value_bits())
        throw ParamError("params: m + k_stat must be at most t*ell_prime");
    if (key_bits + 2 > encoding_bits)
        throw ParamError("params: kappa + 2 must be at most m (member encoding)");
    if (static_cast<uint64_t>(rounds) * input_bits < key_bits)
        throw ParamError("params: rounds*ell must cover kappa key bits");
    // Generic layout must at least fit the output-wire indices.
    const uint32_t w = ceil_log2(encoding_bits);
    if (2 + output_bits * w > encoding_bits)
        throw ParamError("params: m too small for the generic encoding layout");
}

std::vector<uint64_t> spread_probe_points(uint32_t count, uint32_t input_bits) {
    const uint64_t domain = uint64_t{1} << input_bits;
    std::vector<uint64_t> points(count);
    for (uint32_t q = 0; q < count; ++q) points[q] = (37 * uint64_t{q} + 11) % domain;
    return points;
}

FamilyParams tiny_profile() {
    FamilyParams p;
    p.key_bits = 6;
    p.input_bits = 6;
    p.output_bits = 1;
    p.probe_count = 16;
    p.probe_points = spread_probe_points(16, 6);
    p.encoding_bits = 8;
    p.stat_gap_bits = 8;
    p.rounds = 5;
    p.validate();
    return p;
}

FamilyParams default_profile() {
    FamilyParams p;
    p.key_bits = 16;
    p.input_bits = 8;
    p.output_bits = 1;
    p.probe_count = 32;
    p.probe_points = spread_probe_points(32, 8);
    p.encoding_bits = 24;
    p.stat_gap_bits = 8;
    p.rounds = 4;
    p.validate();
    return p;
}

FamilyParams profile_by_name(const std::string& name) {
    if (name == "tiny") return tiny_profile();
    if (name == "default") return default_profile();
    throw ParamError("unknown profile '" + name + "'");
}

}  // namespace oblab
