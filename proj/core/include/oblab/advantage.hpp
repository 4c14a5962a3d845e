#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace oblab {

// sqrt(ln(2/delta) / (2n)): two-sided Hoeffding confidence radius for an
// empirical mean of n {0,1} outcomes.
double hoeffding_radius(size_t n, double delta);

struct AdvantageEstimate {
    double success_rate_a = 0.0;
    double success_rate_b = 0.0;
    double advantage = 0.0;  // |rate_a - rate_b|
    double radius = 0.0;
    size_t trials = 0;
};

// Requires equal lengths and at least 100 trials.
AdvantageEstimate estimate_advantage(const std::vector<uint8_t>& outcomes_a,
                                     const std::vector<uint8_t>& outcomes_b, double delta);

}  // namespace oblab
