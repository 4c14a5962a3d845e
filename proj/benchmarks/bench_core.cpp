#include <benchmark/benchmark.h>

#include "oblab/experiments.hpp"
#include "oblab/family.hpp"
#include "oblab/obfuscation.hpp"
#include "oblab/pprf.hpp"
#include "oblab/we.hpp"

namespace {

using namespace oblab;

const Family& tiny_family() {
    static const Family f(tiny_profile());
    return f;
}

void BM_PrgExpand(benchmark::State& state) {
    Seed s;
    for (auto _ : state) {
        auto [l, r] = prg(s);
        benchmark::DoNotOptimize(l);
        s = r;
    }
}
BENCHMARK(BM_PrgExpand);

void BM_PrfEval(benchmark::State& state) {
    const GgmKey k = keygen({0x01}, static_cast<uint16_t>(state.range(0)), 1);
    uint64_t x = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(prf_eval_u64(k, x));
        x = (x + 1) & ((uint64_t{1} << k.domain_bits) - 1);
    }
}
BENCHMARK(BM_PrfEval)->Arg(16)->Arg(32);

void BM_PuncturedEval(benchmark::State& state) {
    const GgmKey k = keygen({0x02}, 16, 1);
    const PuncturedKey pk = puncture(k, BitVec::from_u64(12345, 16));
    uint64_t x = 0;
    for (auto _ : state) {
        if (x == 12345) ++x;
        benchmark::DoNotOptimize(punctured_eval_u64(pk, x));
        x = (x + 1) & 0xFFFF;
    }
}
BENCHMARK(BM_PuncturedEval);

void BM_MemberCircuitEval(benchmark::State& state) {
    const Family& f = tiny_family();
    const Circuit c = f.member_circuit(0x2A);
    uint64_t x = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(eval_circuit_u64(c, x));
        x = (x + 1) & 63;
    }
}
BENCHMARK(BM_MemberCircuitEval);

void BM_TruthTable(benchmark::State& state) {
    const Family& f = tiny_family();
    const Circuit c = f.member_circuit(0x15);
    for (auto _ : state) benchmark::DoNotOptimize(truth_table(c));
}
BENCHMARK(BM_TruthTable);

void BM_WeEncryptTiny(benchmark::State& state) {
    const Family& f = tiny_family();
    f.encoding_values();  // warm the scan cache outside the loop
    const Statement x{BitVec::from_u64(0xBEEF, f.params().value_bits())};
    for (auto _ : state) benchmark::DoNotOptimize(we_encrypt(x, 1, f));
}
BENCHMARK(BM_WeEncryptTiny);

void BM_FingerprintAuxTiny(benchmark::State& state) {
    const Family& f = tiny_family();
    f.encoding_values();
    uint8_t n = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(sample_fingerprint_aux({n++}, f));
    }
}
BENCHMARK(BM_FingerprintAuxTiny);

}  // namespace

BENCHMARK_MAIN();
