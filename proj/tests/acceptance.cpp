// Acceptance suite: one binary, one pass/fail line per criterion. Each
// criterion pins its tolerances and sizes in code and is timed against its
// stated wall-clock budget. The master seed makes every run replayable.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <set>
#include <string>
#include <vector>

#include "oblab/advantage.hpp"
#include "oblab/drbg.hpp"
#include "oblab/encoding.hpp"
#include "oblab/experiments.hpp"
#include "oblab/family.hpp"
#include "oblab/obfuscation.hpp"
#include "oblab/parallel.hpp"
#include "oblab/pprf.hpp"
#include "oblab/pprf_game.hpp"
#include "oblab/report.hpp"
#include "oblab/we.hpp"

using namespace oblab;

namespace {

const std::vector<uint8_t> kMasterSeed = {0xAC, 0x5E, 0xED, 0x01};

struct Outcome {
    int id;
    std::string label;
    bool pass;
    double seconds;
    double limit_seconds;
    std::string detail;
};

std::vector<Outcome> g_outcomes;

template <typename Fn>
void criterion(int id, const std::string& label, double limit_seconds, Fn&& fn) {
    const auto start = std::chrono::steady_clock::now();
    std::string detail;
    bool pass = false;
    try {
        pass = fn(detail);
    } catch (const std::exception& e) {
        detail = std::string("exception: ") + e.what();
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = secs <= limit_seconds;
    g_outcomes.push_back({id, label, pass && in_time, secs, limit_seconds, detail});
    std::printf("[%s] criterion %2d: %-38s  %6.2fs (limit %.0fs)%s%s\n",
                (pass && in_time) ? "PASS" : "FAIL", id, label.c_str(), secs, limit_seconds,
                detail.empty() ? "" : "  -- ", detail.c_str());
    std::fflush(stdout);
}

double binom_sigma(double p, size_t n) { return std::sqrt(p * (1.0 - p) / static_cast<double>(n)); }

// Random circuits for the perfect-indistinguishability criterion.
Circuit random_circuit(Drbg& d, uint32_t ell, uint32_t ellp, size_t gates) {
    Circuit c;
    c.num_inputs = ell;
    c.num_outputs = ellp;
    for (size_t j = 0; j < gates; ++j) {
        Gate g;
        g.op = static_cast<GateOp>(d.uniform(6));
        const uint32_t limit = ell + static_cast<uint32_t>(j);
        if (gate_arity(g.op) >= 1) g.a = static_cast<uint32_t>(d.uniform(limit));
        if (gate_arity(g.op) >= 2) g.b = static_cast<uint32_t>(d.uniform(limit));
        c.gates.push_back(g);
    }
    for (uint32_t j = 0; j < ellp; ++j)
        c.output_wires.push_back(static_cast<uint32_t>(d.uniform(c.wire_count())));
    c.declared_size = c.gates.size();
    return c;
}

Circuit rewrite_equivalent(const Circuit& src) {
    Circuit c = src;
    for (Gate& g : c.gates) {
        if (gate_arity(g.op) == 2) std::swap(g.a, g.b);
    }
    for (uint32_t& out : c.output_wires) {
        c.gates.push_back(Gate{GateOp::Not, out, 0});
        c.gates.push_back(
            Gate{GateOp::Not, c.num_inputs + static_cast<uint32_t>(c.gates.size() - 1), 0});
        out = c.num_inputs + static_cast<uint32_t>(c.gates.size() - 1);
    }
    c.declared_size = c.gates.size();
    return c;
}

const Family& tiny() {
    static const Family f(tiny_profile());
    return f;
}

// 1. Functionality preservation under puncturing, exhaustive at domain 10.
bool crit_pprf_preservation(std::string& detail) {
    const uint16_t domain = 10;
    const uint32_t keys = 20;
    const uint64_t points = uint64_t{1} << domain;
    std::vector<uint64_t> mismatches(keys, 0);
    parallel_for(0, keys, [&](size_t ki) {
        Drbg kd(kMasterSeed, 100 + static_cast<uint32_t>(ki));
        const GgmKey key = keygen(kd.bytes(16), domain, 1);
        const auto leaves = expand_leaves(key.root, domain);
        uint64_t bad = 0;
        for (uint64_t star = 0; star < points; ++star) {
            const PuncturedKey pk = puncture(key, BitVec::from_u64(star, domain));
            const auto pleaves = punctured_expand_leaves(pk);
            for (uint64_t x = 0; x < points; ++x) {
                if (x == star) continue;
                if (!(pleaves[x] == leaves[x])) ++bad;
            }
            const uint64_t probe = star ^ 1u;
            if (punctured_eval_u64(pk, probe) != prf_eval_u64(key, probe)) ++bad;
        }
        mismatches[ki] = bad;
    });
    uint64_t total = 0;
    for (uint64_t b : mismatches) total += b;
    detail = "mismatches=" + std::to_string(total) + " over 20 keys x 1024 points";
    return total == 0;
}

// 2. Punctured-point uniformity for the registered distinguishers.
bool crit_punctured_uniformity(std::string& detail) {
    const uint16_t domain = static_cast<uint16_t>(tiny().params().value_bits());
    std::vector<uint8_t> seed = kMasterSeed;
    seed.push_back(0x02);
    const auto results = punctured_point_test(domain, 10000, 0.01, seed);
    bool ok = true;
    for (const DistinguisherResult& res : results) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%s=%.4f ", res.name.c_str(), res.estimate.advantage);
        detail += buf;
        if (res.honest) {
            ok = ok && res.estimate.advantage <= res.estimate.radius;
        } else {
            ok = ok && res.estimate.advantage >= 0.45;
        }
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "radius=%.4f", results[0].estimate.radius);
    detail += buf;
    return ok;
}

// 3. Perfect canonicalization on 100 equal and 100 distinct pairs.
bool crit_perfect_io(std::string& detail) {
    size_t equal_ok = 0, distinct_ok = 0;
    for (uint32_t i = 0; i < 100; ++i) {
        Drbg d(kMasterSeed, 300 + i);
        const uint32_t ell = 2 + static_cast<uint32_t>(d.uniform(5));
        const Circuit a = random_circuit(d, ell, 1 + static_cast<uint32_t>(d.uniform(2)),
                                         3 + d.uniform(8));
        const Circuit b = rewrite_equivalent(a);
        const uint64_t size = std::max(a.declared_size, b.declared_size) + d.uniform(4);
        if (io_obfuscate(pad_circuit(a, size)).canonical_bytes() ==
            io_obfuscate(pad_circuit(b, size)).canonical_bytes())
            ++equal_ok;
    }
    for (uint32_t i = 0; i < 100; ++i) {
        Drbg d(kMasterSeed, 400 + i);
        const uint32_t ell = 2 + static_cast<uint32_t>(d.uniform(5));
        Circuit a = random_circuit(d, ell, 1, 3 + d.uniform(8));
        Circuit b = random_circuit(d, ell, 1, 3 + d.uniform(8));
        while (truth_table(a) == truth_table(b)) b = random_circuit(d, ell, 1, 3 + d.uniform(8));
        const uint64_t size = std::max(a.declared_size, b.declared_size);
        if (io_obfuscate(pad_circuit(a, size)).canonical_bytes() !=
            io_obfuscate(pad_circuit(b, size)).canonical_bytes())
            ++distinct_ok;
    }
    detail = "equal=" + std::to_string(equal_ok) + "/100 distinct=" + std::to_string(distinct_ok) +
             "/100";
    return equal_ok == 100 && distinct_ok == 100;
}

// 4. Witness-encryption correctness is exact.
bool crit_we_correctness(std::string& detail) {
    const Family& f = tiny();
    size_t ok = 0;
    for (uint32_t i = 0; i < 100; ++i) {
        Drbg d(kMasterSeed, 500 + i);
        const FamilyMember m = sample_member(d.bytes(16), f);
        const Statement x{eval_on_set(m.circuit, f.params().probe_points)};
        const EncodedCircuit witness = encode_circuit(m.circuit, f.params());
        const uint8_t b = d.bit();
        if (we_decrypt(we_encrypt(x, b, f), witness) == b) ++ok;
    }
    detail = std::to_string(ok) + "/100";
    return ok == 100;
}

// 5. Off-language statements give byte-identical ciphertext pairs.
bool crit_we_off_language(std::string& detail) {
    const Family& f = tiny();
    Drbg d(kMasterSeed, 600);
    size_t found = 0, equal = 0, attempts = 0;
    while (found < 100 && attempts < 100000) {
        ++attempts;
        const Statement x{d.bits(f.params().value_bits())};
        if (language_membership(x, f).member) continue;  // brute-force verified
        ++found;
        if (ciphertext_to_bytes(we_encrypt(x, 0, f), x) ==
            ciphertext_to_bytes(we_encrypt(x, 1, f), x))
            ++equal;
    }
    detail = "equal=" + std::to_string(equal) + "/" + std::to_string(found);
    return found == 100 && equal == 100;
}

// 6. Dependent-aux attack: planted bits and the fixed key predicate.
bool crit_thm1_attack(std::string& detail) {
    const Family& f = tiny();
    std::string parts;
    bool all = true;
    for (const VbbCandidate& cand : vbb_candidates()) {
        size_t ok_random = 0, ok_fixed = 0;
        for (uint32_t i = 0; i < 100; ++i) {
            Drbg d(kMasterSeed, 700 + i);
            const FamilyMember m = sample_member(d.bytes(16), f);
            const EncodedCircuit obf = vbb_obfuscate(cand, m.circuit, f, d.bytes(16));
            const WitnessAttackResult r =
                witness_decrypt_attack(m, obf, d.bytes(16), f, PlantKind::RandomBit);
            if (r.recovered == r.planted) ++ok_random;
            const WitnessAttackResult kp =
                witness_decrypt_attack(m, obf, d.bytes(16), f, PlantKind::KeyParity);
            if (kp.recovered == (__builtin_popcountll(m.key) & 1u)) ++ok_fixed;
        }
        parts += cand.name + "=" + std::to_string(ok_random) + "/100 fixed=" +
                 std::to_string(ok_fixed) + "/100 ";
        all = all && ok_random == 100 && ok_fixed == 100;
    }
    detail = parts;
    return all;
}

// 7. Independent-aux attack equals the predicate for every candidate.
bool crit_thm2_attack(std::string& detail) {
    const Family& f = tiny();
    std::string parts;
    bool all = true;
    for (const VbbCandidate& cand : vbb_candidates()) {
        size_t ok = 0;
        for (uint32_t i = 0; i < 100; ++i) {
            Drbg d(kMasterSeed, 800 + i);
            const FamilyMember m = sample_member(d.bytes(16), f);
            const EncodedCircuit obf = vbb_obfuscate(cand, m.circuit, f, d.bytes(16));
            const AuxSample z = sample_fingerprint_aux(d.bytes(32), f);
            if (fingerprint_attack(z, obf) == fingerprint_predicate(z, m, f)) ++ok;
        }
        parts += cand.name + "=" + std::to_string(ok) + "/100 ";
        all = all && ok == 100;
    }
    detail = parts;
    return all;
}

// 8. Hybrid chain: rare compressibility, exact byte-equality, identical
// spliced/punctured outputs, for every registered honest simulator.
bool crit_hybrids(std::string& detail) {
    const Family& f = tiny();
    const size_t trials = 200;
    const double p0 = std::pow(2.0, -static_cast<double>(f.params().stat_gap_bits));
    const double frac_bound = p0 + 3.0 * binom_sigma(p0, trials);
    bool all = true;
    std::string parts;
    uint32_t index = 0;
    for (const RegisteredSimulator& reg : simulator_registry()) {
        if (!reg.honest) continue;
        std::vector<uint8_t> seed = kMasterSeed;
        seed.push_back(static_cast<uint8_t>(0x90 + index++));
        const HybridReport h = run_hybrid_chain(reg.sim, trials, 0.01, f, seed, 1024);
        const double frac = static_cast<double>(h.compressible_count) / trials;
        const bool ok = frac <= frac_bound && h.aux_mismatch_count == 0 &&
                        h.output_mismatch_count == 0;
        parts += reg.name + "(compressible=" + std::to_string(h.compressible_count) +
                 " aux_mismatch=" + std::to_string(h.aux_mismatch_count) + " out_mismatch=" +
                 std::to_string(h.output_mismatch_count) + ") ";
        all = all && ok;
    }
    detail = parts;
    return all;
}

// 9. Counting bound for uniform replacements, Monte Carlo at 10^4.
bool crit_incompressibility_rate(std::string& detail) {
    const Family& f = tiny();
    const size_t n = 10000;
    std::vector<uint8_t> hits(n);
    parallel_for(0, n, [&](size_t i) {
        Drbg d(kMasterSeed, 900000 + static_cast<uint32_t>(i));
        hits[i] =
            language_membership(Statement{d.bits(f.params().value_bits())}, f).member ? 1 : 0;
    });
    size_t members = 0;
    for (uint8_t h : hits) members += h;
    const double rate = static_cast<double>(members) / static_cast<double>(n);
    const double p0 = std::pow(2.0, static_cast<double>(f.params().encoding_bits) -
                                        static_cast<double>(f.params().value_bits()));
    const double bound = p0 + 3.0 * binom_sigma(p0, n);
    char buf[96];
    std::snprintf(buf, sizeof buf, "rate=%.5f bound=%.5f", rate, bound);
    detail = buf;
    return rate <= bound;
}

// 10. Lemma transform exactness under shared seeds.
bool crit_lemma_exactness(std::string& detail) {
    const Family& f = tiny();
    const std::vector<SimulatorDescription> universals = {
        SimulatorDescription{RandomGuessSim{}}, SimulatorDescription{BruteForceSim{2}}};
    const std::vector<AdversaryDescription> adversaries = {
        AdversaryDescription{ConstantAdv{1}}, AdversaryDescription{ApplyAuxCircuitAdv{}},
        AdversaryDescription{WeDecryptAdv{}}};
    size_t equal = 0, total = 0;
    for (const auto& uni : universals) {
        for (const auto& adv : adversaries) {
            const SimulatorDescription wrapped = lemma_wrap_simulator(uni, adv);
            for (uint32_t i = 0; i < 100; ++i) {
                Drbg d(kMasterSeed, 1000 + i);
                const FamilyMember m = sample_member(d.bytes(16), f);
                std::vector<uint8_t> aux;
                if (std::holds_alternative<WeDecryptAdv>(adv)) {
                    const Statement x{eval_on_set(m.circuit, f.params().probe_points)};
                    aux = ciphertext_to_bytes(we_encrypt(x, d.bit(), f), x);
                } else {
                    aux = sample_fingerprint_aux(d.bytes(32), f).public_bytes;
                }
                const auto seed = d.bytes(16);
                OracleHandle o1 = make_oracle(f, m, std::nullopt, 1024);
                OracleHandle o2 = make_oracle(f, m, std::nullopt, 1024);
                HardwiredAuxAdv hard{serialize_adversary(adv), aux};
                ++total;
                if (run_simulator(wrapped, o1, aux, seed, f) ==
                    run_simulator(uni, o2, serialize_adversary(AdversaryDescription{hard}), seed,
                                  f))
                    ++equal;
            }
        }
    }
    detail = std::to_string(equal) + "/" + std::to_string(total) + " shared-seed equalities";
    return equal == total;
}

// 11. Every registered budgeted simulator stays within 1/2 + radius on both
// attack experiments at 10^4 trials.
bool crit_simulator_bound(std::string& detail) {
    const Family& f = tiny();
    const size_t n = 10000;
    const double radius = hoeffding_radius(n, 0.01);
    bool all = true;
    std::string parts;
    for (int flavor = 0; flavor < 2; ++flavor) {
        uint32_t sim_index = 0;
        for (const RegisteredSimulator& reg : simulator_registry()) {
            if (!reg.honest) continue;
            // Every (experiment, simulator) pair gets its own trial streams.
            const uint32_t base = 1100000 + (static_cast<uint32_t>(flavor) * 8 + sim_index++) * 100000;
            std::vector<uint8_t> success(n);
            parallel_for(0, n, [&](size_t i) {
                Drbg td(kMasterSeed, base + static_cast<uint32_t>(i));
                const FamilyMember m = sample_member(td.bytes(16), f);
                std::vector<uint8_t> aux;
                uint8_t predicate;
                if (flavor == 1) {
                    const AuxSample z = sample_fingerprint_aux(td.bytes(32), f);
                    predicate = fingerprint_predicate(z, m, f);
                    aux = z.public_bytes;
                } else {
                    const uint8_t planted = td.bit();
                    const Statement x{eval_on_set(m.circuit, f.params().probe_points)};
                    aux = ciphertext_to_bytes(we_encrypt(x, planted, f), x);
                    predicate = planted;
                }
                OracleHandle oracle = make_oracle(f, m, std::nullopt, 1024);
                success[i] =
                    run_simulator(reg.sim, oracle, aux, td.bytes(16), f) == predicate;
            });
            size_t wins = 0;
            for (uint8_t s : success) wins += s;
            const double rate = static_cast<double>(wins) / static_cast<double>(n);
            char buf[64];
            std::snprintf(buf, sizeof buf, "%s/%s=%.4f ", flavor ? "ind" : "dep",
                          reg.name.c_str(), rate);
            parts += buf;
            all = all && rate <= 0.5 + radius;
        }
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "bound=%.4f", 0.5 + radius);
    detail = parts + buf;
    return all;
}

// 12. Replaying any experiment with the same config and seed reproduces all
// non-timing report fields byte for byte.
bool crit_reproducibility(std::string& detail) {
    size_t same = 0;
    for (const std::string& id : experiment_ids()) {
        ExperimentConfig c;
        c.experiment = id;
        c.profile = "tiny";
        c.trials = id == "hybrids" ? 100 : 200;
        c.rng_seed_hex = "ac5eed02";
        c.pprf_domain_bits = 8;
        c.pprf_keys = 5;
        const ExperimentReport r1 = run_experiment(c);
        const ExperimentReport r2 = run_experiment(c);
        if (report_without_timing(r1.to_json()) == report_without_timing(r2.to_json())) ++same;
    }
    detail = std::to_string(same) + "/" + std::to_string(experiment_ids().size()) +
             " experiments reproduce";
    return same == experiment_ids().size();
}

}  // namespace

int main() {
    std::printf("acceptance suite, master seed %s\n", to_hex(kMasterSeed).c_str());
    criterion(1, "pprf functionality preservation", 60, crit_pprf_preservation);
    criterion(2, "punctured-point uniformity", 120, crit_punctured_uniformity);
    criterion(3, "perfect canonical obfuscation", 60, crit_perfect_io);
    criterion(4, "witness-encryption correctness", 60, crit_we_correctness);
    criterion(5, "witness-encryption off-language secrecy", 300, crit_we_off_language);
    criterion(6, "dependent-aux attack totality", 300, crit_thm1_attack);
    criterion(7, "independent-aux attack totality", 300, crit_thm2_attack);
    criterion(8, "hybrid chain exactness", 900, crit_hybrids);
    criterion(9, "incompressibility counting bound", 600, crit_incompressibility_rate);
    criterion(10, "lemma transform exactness", 60, crit_lemma_exactness);
    criterion(11, "registered-simulator bound", 600, crit_simulator_bound);
    criterion(12, "report reproducibility", 600, crit_reproducibility);

    size_t passed = 0;
    for (const Outcome& o : g_outcomes) passed += o.pass ? 1 : 0;
    std::printf("%zu/%zu criteria passed\n", passed, g_outcomes.size());
    return passed == g_outcomes.size() ? 0 : 1;
}
