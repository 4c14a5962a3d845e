#pragma once

#include <string>
#include <vector>

#include "oblab/advantage.hpp"
#include "oblab/pprf.hpp"

namespace oblab {

// Indistinguishability at the punctured point, as a bounded statistical
// game. Each trial samples a fresh key and point, punctures, and shows every
// registered distinguisher the tuple (point, punctured key, candidate bit),
// once with the real PRF bit and once with a fresh coin. The cheating
// distinguisher additionally holds the unpunctured key and serves as the
// negative control.
struct DistinguisherResult {
    std::string name;
    bool honest = true;
    AdvantageEstimate estimate;
};

std::vector<DistinguisherResult> punctured_point_test(uint16_t domain_bits, size_t trials,
                                                      double delta,
                                                      const std::vector<uint8_t>& master_seed);

}  // namespace oblab
