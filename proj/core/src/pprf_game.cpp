#include "oblab/pprf_game.hpp"

#include "oblab/drbg.hpp"
#include "oblab/errors.hpp"
#include "oblab/parallel.hpp"

namespace oblab {

std::vector<DistinguisherResult> punctured_point_test(uint16_t domain_bits, size_t trials,
                                                      double delta,
                                                      const std::vector<uint8_t>& master_seed) {
    if (trials < 100) throw ParamError("punctured_point_test: need at least 100 trials");
    enum { kAlwaysOne, kCopathRecompute, kCheatRoot, kNumD };
    std::vector<std::vector<uint8_t>> real(kNumD, std::vector<uint8_t>(trials));
    std::vector<std::vector<uint8_t>> unif(kNumD, std::vector<uint8_t>(trials));

    parallel_for(0, trials, [&](size_t i) {
        Drbg td(master_seed, static_cast<uint32_t>(i));
        const GgmKey key = keygen(td.bytes(16), domain_bits, 1);
        const BitVec star = td.bits(domain_bits);
        const PuncturedKey pk = puncture(key, star);
        const uint8_t real_bit = static_cast<uint8_t>(prf_eval(key, star).to_u64());
        const uint8_t coin = td.bit();

        // The copath distinguisher cannot reach the punctured leaf; the
        // nearest thing it can recompute is the sibling leaf's bit.
        BitVec sibling = star;
        sibling.set(domain_bits - 1, star[domain_bits - 1] ^ 1u);
        const uint8_t copath_guess = static_cast<uint8_t>(punctured_eval(pk, sibling).to_u64());

        for (int which = 0; which < 2; ++which) {
            const uint8_t candidate = which == 0 ? real_bit : coin;
            auto& sink = which == 0 ? real : unif;
            sink[kAlwaysOne][i] = 1;
            sink[kCopathRecompute][i] = candidate == copath_guess;
            sink[kCheatRoot][i] = candidate == real_bit;
        }
    });

    std::vector<DistinguisherResult> out;
    out.push_back({"always-one", true, estimate_advantage(real[kAlwaysOne], unif[kAlwaysOne], delta)});
    out.push_back({"copath-recompute", true,
                   estimate_advantage(real[kCopathRecompute], unif[kCopathRecompute], delta)});
    out.push_back({"cheat-root", false, estimate_advantage(real[kCheatRoot], unif[kCheatRoot], delta)});
    return out;
}

}  // namespace oblab
