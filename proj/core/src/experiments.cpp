#include "oblab/experiments.hpp"

#include <unordered_map>

#include "oblab/errors.hpp"
#include "oblab/parallel.hpp"
#include "oblab/we.hpp"

namespace oblab {

// --------------------------- adversaries ----------------------------------

namespace {

constexpr uint8_t kTagConstant = 0;
constexpr uint8_t kTagApplyAuxCircuit = 1;
constexpr uint8_t kTagWeDecrypt = 2;
constexpr uint8_t kTagHardwiredAux = 3;

void append_with_header(std::vector<uint8_t>& out, uint8_t tag,
                        const std::vector<uint8_t>& payload) {
    out.push_back(tag);
    put_u32(out, static_cast<uint32_t>(payload.size()));
    out.insert(out.end(), payload.begin(), payload.end());
}

}  // namespace

std::vector<uint8_t> serialize_adversary(const AdversaryDescription& adv) {
    std::vector<uint8_t> out;
    if (const auto* c = std::get_if<ConstantAdv>(&adv)) {
        append_with_header(out, kTagConstant, {static_cast<uint8_t>(c->bit & 1u)});
    } else if (const auto* a = std::get_if<ApplyAuxCircuitAdv>(&adv)) {
        append_with_header(out, kTagApplyAuxCircuit, a->circuit_bytes);
    } else if (const auto* w = std::get_if<WeDecryptAdv>(&adv)) {
        append_with_header(out, kTagWeDecrypt, w->ciphertext_bytes);
    } else {
        const auto& h = std::get<HardwiredAuxAdv>(adv);
        std::vector<uint8_t> payload = h.inner_serialized;
        put_u32(payload, static_cast<uint32_t>(h.aux.size()));
        payload.insert(payload.end(), h.aux.begin(), h.aux.end());
        append_with_header(out, kTagHardwiredAux, payload);
    }
    return out;
}

std::optional<AdversaryDescription> parse_adversary(const std::vector<uint8_t>& bytes) {
    if (bytes.size() < 5) return std::nullopt;
    const uint8_t tag = bytes[0];
    const uint32_t len = get_u32(bytes, 1);
    if (bytes.size() != size_t{5} + len) return std::nullopt;
    const std::vector<uint8_t> payload(bytes.begin() + 5, bytes.end());
    switch (tag) {
        case kTagConstant:
            if (payload.size() != 1 || payload[0] > 1) return std::nullopt;
            return AdversaryDescription{ConstantAdv{payload[0]}};
        case kTagApplyAuxCircuit:
            return AdversaryDescription{ApplyAuxCircuitAdv{payload}};
        case kTagWeDecrypt:
            return AdversaryDescription{WeDecryptAdv{payload}};
        case kTagHardwiredAux: {
            if (payload.size() < 5) return std::nullopt;
            const uint32_t inner_len = get_u32(payload, 1);
            const size_t inner_total = size_t{5} + inner_len;
            if (payload.size() < inner_total + 4) return std::nullopt;
            HardwiredAuxAdv h;
            h.inner_serialized.assign(payload.begin(), payload.begin() + inner_total);
            const uint32_t aux_len = get_u32(payload, inner_total);
            if (payload.size() != inner_total + 4 + aux_len) return std::nullopt;
            h.aux.assign(payload.begin() + inner_total + 4, payload.end());
            // Reject opaque inner bytes now so evaluation stays total.
            if (!parse_adversary(h.inner_serialized)) return std::nullopt;
            return AdversaryDescription{std::move(h)};
        }
        default:
            return std::nullopt;
    }
}

uint8_t eval_adversary(const AdversaryDescription& adv, const EncodedCircuit& obf,
                       const std::vector<uint8_t>& aux, const Family& f) {
    try {
        if (const auto* c = std::get_if<ConstantAdv>(&adv)) return c->bit & 1u;
        if (const auto* a = std::get_if<ApplyAuxCircuitAdv>(&adv)) {
            const auto& bytes = a->circuit_bytes.empty() ? aux : a->circuit_bytes;
            const CanonicalCircuit cc = CanonicalCircuit::from_bytes(bytes);
            if (cc.num_inputs() != obf.bits.size()) return 0;
            return static_cast<uint8_t>(cc.eval(obf.index()) & 1u);
        }
        if (const auto* w = std::get_if<WeDecryptAdv>(&adv)) {
            const auto& bytes = w->ciphertext_bytes.empty() ? aux : w->ciphertext_bytes;
            const auto [ct, stmt] = ciphertext_from_bytes(bytes);
            return we_decrypt(ct, obf);
        }
        const auto& h = std::get<HardwiredAuxAdv>(adv);
        const auto inner = parse_adversary(h.inner_serialized);
        if (!inner) return 0;
        return eval_adversary(*inner, obf, h.aux, f);
    } catch (const Error&) {
        return 0;
    }
}

uint8_t universal_adversary(const std::vector<uint8_t>& aux, const EncodedCircuit& obf,
                            const Family& f) {
    const auto adv = parse_adversary(aux);
    if (!adv) return 0;
    return eval_adversary(*adv, obf, {}, f);
}

// --------------------------- simulators -----------------------------------

namespace {

// A simulator that has located a candidate witness turns the auxiliary input
// against it: decrypt it, apply it, or run it as an adversary. Unusable aux
// degrades to a coin flip.
uint8_t interpret_aux_with_witness(const std::vector<uint8_t>& aux, uint64_t witness_index,
                                   const Family& f, Drbg& d) {
    const EncodedCircuit witness{BitVec::from_u64(witness_index, f.params().encoding_bits)};
    try {
        if (!aux.empty() && aux[0] == kCiphertextVersion) {
            const auto [ct, stmt] = ciphertext_from_bytes(aux);
            return we_decrypt(ct, witness);
        }
        if (!aux.empty() && aux[0] == kCanonicalVersion) {
            const CanonicalCircuit cc = CanonicalCircuit::from_bytes(aux);
            if (cc.num_inputs() == f.params().encoding_bits)
                return static_cast<uint8_t>(cc.eval(witness_index) & 1u);
            return d.bit();
        }
        if (const auto adv = parse_adversary(aux)) return eval_adversary(*adv, witness, {}, f);
    } catch (const Error&) {
        // fall through to the coin
    }
    return d.bit();
}

uint64_t query_probe_values(OracleHandle& oracle, const Family& f) {
    uint64_t observed = 0;
    for (uint64_t point : f.params().probe_points) {
        observed = (observed << f.params().output_bits) | oracle.query(point);
    }
    return observed;
}

}  // namespace

uint8_t run_simulator(const SimulatorDescription& sim, OracleHandle& oracle,
                      const std::vector<uint8_t>& aux, const std::vector<uint8_t>& rng_seed,
                      const Family& f) {
    Drbg d(rng_seed, 0);
    const FamilyParams& p = f.params();

    if (std::holds_alternative<RandomGuessSim>(sim.program)) return d.bit();
    if (const auto* c = std::get_if<ConstantSim>(&sim.program)) return c->bit & 1u;

    if (std::holds_alternative<QueryOutsideProbeSim>(sim.program)) {
        const uint64_t domain = uint64_t{1} << p.input_bits;
        for (uint64_t point = 0; point < domain; ++point) {
            if (!f.probe_index(point)) return static_cast<uint8_t>(oracle.query(point) & 1u);
        }
        return 0;  // probe set covers the whole domain
    }

    if (const auto* g = std::get_if<ProbeKeyGuessSim>(&sim.program)) {
        const uint64_t observed = query_probe_values(oracle, f);
        const uint64_t guess = d.bits(p.key_bits).to_u64();
        const bool hit = f.member_values(guess) == observed;
        if (g->indicator_only) return hit ? 1 : 0;
        if (hit) return interpret_aux_with_witness(aux, encode_member_key(guess, p).index(), f, d);
        return d.bit();
    }

    if (const auto* b = std::get_if<BruteForceSim>(&sim.program)) {
        const uint64_t observed = query_probe_values(oracle, f);
        const auto& values = f.encoding_values();
        for (uint64_t i = 0; i < b->budget; ++i) {
            const uint64_t w = d.uniform(f.encoding_count());
            if (values[w] == observed) return interpret_aux_with_witness(aux, w, f, d);
        }
        return d.bit();
    }

    const auto& wu = std::get<WrappedUniversalSim>(sim.program);
    HardwiredAuxAdv hardwired{serialize_adversary(wu.adversary), aux};
    const auto handed = serialize_adversary(AdversaryDescription{std::move(hardwired)});
    return run_simulator(*wu.universal, oracle, handed, rng_seed, f);
}

SimulatorDescription lemma_wrap_simulator(const SimulatorDescription& universal,
                                          const AdversaryDescription& adv) {
    WrappedUniversalSim wrapped;
    wrapped.universal = std::make_shared<SimulatorDescription>(universal);
    wrapped.adversary = adv;
    return SimulatorDescription{std::move(wrapped)};
}

const std::vector<RegisteredSimulator>& simulator_registry() {
    static const std::vector<RegisteredSimulator> registry = [] {
        std::vector<RegisteredSimulator> r;
        r.push_back({"random-guess", SimulatorDescription{RandomGuessSim{}}, true, 64});
        r.push_back({"probe-key-guess", SimulatorDescription{ProbeKeyGuessSim{false}}, true, 64});
        r.push_back({"brute-force-2", SimulatorDescription{BruteForceSim{2}}, true, 64});
        return r;
    }();
    return registry;
}

const std::vector<RegisteredSimulator>& pe_distinguisher_registry() {
    static const std::vector<RegisteredSimulator> registry = [] {
        std::vector<RegisteredSimulator> r;
        r.push_back({"constant-one", SimulatorDescription{ConstantSim{1}}, true, 64});
        r.push_back({"query-outside-probes", SimulatorDescription{QueryOutsideProbeSim{}}, true, 64});
        r.push_back({"probe-key-guess", SimulatorDescription{ProbeKeyGuessSim{true}}, true, 64});
        return r;
    }();
    return registry;
}

// ----------------------- fingerprint circuits -----------------------------

GgmKey fingerprint_keygen(const std::vector<uint8_t>& rng_seed, const Family& f) {
    return keygen(rng_seed, static_cast<uint16_t>(f.params().value_bits()), 1);
}

namespace {

void check_fingerprint_key(uint16_t domain_bits, uint8_t out_bits, const Family& f,
                           const char* who) {
    if (domain_bits != f.params().value_bits() || out_bits != 1)
        throw ParamError(std::string(who) + ": key domain must be t*ell' bits with 1 output bit");
}

// PRF over the decoded probe values, memoized per distinct value vector.
template <typename EvalFn>
TruthTable value_prf_table(const Family& f, EvalFn&& prf_bit) {
    f.check_table_budget(f.encoding_count(), 1);
    const auto& values = f.encoding_values();
    TruthTable table = make_truth_table(f.params().encoding_bits, 1);
    std::unordered_map<uint64_t, uint8_t> memo;
    const uint64_t total = f.encoding_count();
    for (uint64_t w = 0; w < total; ++w) {
        const uint64_t v = values[w];
        auto it = memo.find(v);
        if (it == memo.end()) it = memo.emplace(v, prf_bit(v)).first;
        if (it->second) table.set_row(w, 1);
    }
    return table;
}

}  // namespace

TruthTable fingerprint_table(const GgmKey& s, const Family& f) {
    check_fingerprint_key(s.domain_bits, s.out_bits, f, "fingerprint_table");
    return value_prf_table(f, [&](uint64_t v) {
        return static_cast<uint8_t>(prf_eval_u64(s, v) & 1u);
    });
}

TruthTable punctured_fingerprint_table(const PuncturedKey& pk, const Family& f) {
    check_fingerprint_key(pk.domain_bits, pk.out_bits, f, "punctured_fingerprint_table");
    const uint64_t hole = pk.point.to_u64();
    return value_prf_table(f, [&](uint64_t v) -> uint8_t {
        if (v == hole) return 0;
        return static_cast<uint8_t>(punctured_eval_u64(pk, v) & 1u);
    });
}

uint64_t aux_circuit_size(const Family& f) {
    return mux_tree_gate_count(f.params().encoding_bits, 1);
}

Circuit build_fingerprint_circuit(const GgmKey& s, const Family& f) {
    return CanonicalCircuit(fingerprint_table(s, f), aux_circuit_size(f)).to_circuit();
}

Circuit build_punctured_fingerprint_circuit(const PuncturedKey& pk, const Family& f) {
    return CanonicalCircuit(punctured_fingerprint_table(pk, f), aux_circuit_size(f)).to_circuit();
}

AuxSample sample_fingerprint_aux(const std::vector<uint8_t>& rng_seed, const Family& f) {
    Drbg d(rng_seed, 0);
    const GgmKey s = fingerprint_keygen(d.bytes(32), f);
    const CanonicalCircuit z(fingerprint_table(s, f), aux_circuit_size(f));
    return AuxSample{z.canonical_bytes(), serialize_key(s)};
}

uint8_t fingerprint_attack(const AuxSample& aux, const EncodedCircuit& obf) {
    const CanonicalCircuit cc = CanonicalCircuit::from_bytes(aux.public_bytes);
    if (cc.num_inputs() != obf.bits.size())
        throw WidthError("fingerprint_attack: obfuscation width differs from the aux domain");
    return static_cast<uint8_t>(cc.eval(obf.index()) & 1u);
}

uint8_t fingerprint_predicate(const AuxSample& aux, const FamilyMember& member, const Family& f) {
    const GgmKey s = parse_key(aux.secret_bytes);
    const uint64_t values = eval_on_set(member.circuit, f.params().probe_points).to_u64();
    return static_cast<uint8_t>(prf_eval_u64(s, values) & 1u);
}

// ------------------------------ attacks -----------------------------------

WitnessAttackResult witness_decrypt_attack(const FamilyMember& member, const EncodedCircuit& obf,
                                           const std::vector<uint8_t>& rng_seed, const Family& f,
                                           PlantKind plant) {
    Drbg d(rng_seed, 0);
    WitnessAttackResult out;
    out.planted = plant == PlantKind::RandomBit
                      ? d.bit()
                      : static_cast<uint8_t>(__builtin_popcountll(member.key) & 1u);
    const Statement x{eval_on_set(member.circuit, f.params().probe_points)};
    const Ciphertext ct = we_encrypt(x, out.planted, f);
    out.aux.public_bytes = ciphertext_to_bytes(ct, x);
    out.aux.secret_bytes = {out.planted};
    out.recovered = we_decrypt(ct, obf);
    return out;
}

// --------------------------- hybrid chain ---------------------------------

HybridReport run_hybrid_chain(const SimulatorDescription& sim, size_t trials, double delta,
                              const Family& f, const std::vector<uint8_t>& master_seed,
                              uint64_t oracle_budget) {
    if (trials < 100) throw ParamError("run_hybrid_chain: need at least 100 trials");
    struct Trial {
        uint8_t plain_ok, spliced_ok, punctured_ok;
        bool compressible, aux_equal, outputs_equal;
    };
    std::vector<Trial> results(trials);

    parallel_for(0, trials, [&](size_t i) {
        Drbg td(master_seed, static_cast<uint32_t>(i));
        const FamilyMember member = sample_member(td.bytes(16), f);
        const GgmKey s = fingerprint_keygen(td.bytes(32), f);
        const ReplacementValues y = sample_replacement(td.bytes(16), f);
        const auto sim_seed = td.bytes(16);

        const CanonicalCircuit aux_plain(fingerprint_table(s, f), aux_circuit_size(f));
        const auto aux_plain_bytes = aux_plain.canonical_bytes();

        const PuncturedKey pk = puncture(s, y.bits);
        const CanonicalCircuit aux_punct(punctured_fingerprint_table(pk, f),
                                         aux_circuit_size(f));
        const auto aux_punct_bytes = aux_punct.canonical_bytes();

        const uint64_t member_values = eval_on_set(member.circuit, f.params().probe_points).to_u64();
        const uint8_t expect_plain = static_cast<uint8_t>(prf_eval_u64(s, member_values) & 1u);
        const uint8_t expect_repl = static_cast<uint8_t>(prf_eval_u64(s, y.as_u64()) & 1u);

        OracleHandle plain = make_oracle(f, member, std::nullopt, oracle_budget);
        const uint8_t out0 = run_simulator(sim, plain, aux_plain_bytes, sim_seed, f);

        OracleHandle spliced1 = make_oracle(f, member, y, oracle_budget);
        const uint8_t out1 = run_simulator(sim, spliced1, aux_plain_bytes, sim_seed, f);

        OracleHandle spliced2 = make_oracle(f, member, y, oracle_budget);
        const uint8_t out2 = run_simulator(sim, spliced2, aux_punct_bytes, sim_seed, f);

        Trial t;
        t.plain_ok = out0 == expect_plain;
        t.spliced_ok = out1 == expect_repl;
        t.punctured_ok = out2 == expect_repl;
        t.compressible = compressibility_check(y, f).has_value();
        t.aux_equal = aux_plain_bytes == aux_punct_bytes;
        t.outputs_equal = out1 == out2;
        results[i] = t;
    });

    HybridReport report;
    report.trials = trials;
    report.delta = delta;
    report.radius = hoeffding_radius(trials, delta);
    size_t ok0 = 0, ok1 = 0, ok2 = 0;
    for (const Trial& t : results) {
        ok0 += t.plain_ok;
        ok1 += t.spliced_ok;
        ok2 += t.punctured_ok;
        if (t.compressible) {
            ++report.compressible_count;
            continue;
        }
        if (!t.aux_equal) ++report.aux_mismatch_count;
        if (!t.outputs_equal) ++report.output_mismatch_count;
    }
    report.plain_success = static_cast<double>(ok0) / static_cast<double>(trials);
    report.spliced_success = static_cast<double>(ok1) / static_cast<double>(trials);
    report.punctured_success = static_cast<double>(ok2) / static_cast<double>(trials);
    return report;
}

AdvantageEstimate pseudo_entropy_advantage(const SimulatorDescription& distinguisher,
                                           size_t trials, double delta, const Family& f,
                                           const std::vector<uint8_t>& master_seed,
                                           uint64_t oracle_budget) {
    std::vector<uint8_t> plain(trials), spliced(trials);
    parallel_for(0, trials, [&](size_t i) {
        Drbg td(master_seed, static_cast<uint32_t>(i));
        const FamilyMember member = sample_member(td.bytes(16), f);
        const ReplacementValues y = sample_replacement(td.bytes(16), f);
        const auto sim_seed = td.bytes(16);
        OracleHandle o_plain = make_oracle(f, member, std::nullopt, oracle_budget);
        plain[i] = run_simulator(distinguisher, o_plain, {}, sim_seed, f);
        OracleHandle o_spliced = make_oracle(f, member, y, oracle_budget);
        spliced[i] = run_simulator(distinguisher, o_spliced, {}, sim_seed, f);
    });
    return estimate_advantage(plain, spliced, delta);
}

}  // namespace oblab
