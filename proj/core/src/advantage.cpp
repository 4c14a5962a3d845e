#include "oblab/advantage.hpp"

#include <cmath>

#include "oblab/errors.hpp"

namespace oblab {

double hoeffding_radius(size_t n, double delta) {
    if (n == 0) throw ParamError("hoeffding_radius: n must be positive");
    if (delta <= 0.0 || delta >= 1.0) throw ParamError("hoeffding_radius: delta in (0,1)");
    return std::sqrt(std::log(2.0 / delta) / (2.0 * static_cast<double>(n)));
}

AdvantageEstimate estimate_advantage(const std::vector<uint8_t>& outcomes_a,
                                     const std::vector<uint8_t>& outcomes_b, double delta) {
    if (outcomes_a.size() != outcomes_b.size())
        throw ParamError("estimate_advantage: outcome vectors differ in length");
    if (outcomes_a.size() < 100)
        throw ParamError("estimate_advantage: need at least 100 trials");
    size_t ones_a = 0, ones_b = 0;
    for (uint8_t v : outcomes_a) ones_a += v ? 1 : 0;
    for (uint8_t v : outcomes_b) ones_b += v ? 1 : 0;
    AdvantageEstimate e;
    e.trials = outcomes_a.size();
    e.success_rate_a = static_cast<double>(ones_a) / static_cast<double>(e.trials);
    e.success_rate_b = static_cast<double>(ones_b) / static_cast<double>(e.trials);
    e.advantage = std::fabs(e.success_rate_a - e.success_rate_b);
    e.radius = hoeffding_radius(e.trials, delta);
    return e;
}

}  // namespace oblab
