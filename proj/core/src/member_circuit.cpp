#include "oblab/member_circuit.hpp"

#include <numeric>
#include <vector>

#include "oblab/errors.hpp"

namespace oblab {

namespace {

// Builds the template once, recording where the key-mix CONST gates land so
// match_member_circuit can read the key back out.
struct TemplateBuild {
    Circuit circuit;
    // (gate index, key bit index) for every key-mix CONST gate.
    std::vector<std::pair<size_t, uint32_t>> key_gate_slots;
};

// Smallest multiplier >= 3 coprime to ell, so the state map i -> (mult*i + 1)
// mod ell is a permutation for every width (it is 3 whenever gcd(3, ell) = 1).
uint32_t permutation_multiplier(uint32_t ell) {
    for (uint32_t c = 3;; c += 2) {
        if (std::gcd(c, ell) == 1) return c;
    }
}

TemplateBuild build_template(uint64_t key, const FamilyParams& p) {
    TemplateBuild out;
    Circuit& c = out.circuit;
    c.num_inputs = p.input_bits;
    c.num_outputs = p.output_bits;

    const uint32_t ell = p.input_bits;
    const uint32_t mult = permutation_multiplier(ell);
    std::vector<uint32_t> state(ell);
    for (uint32_t i = 0; i < ell; ++i) state[i] = i;

    auto emit = [&](GateOp op, uint32_t a = 0, uint32_t b = 0) -> uint32_t {
        c.gates.push_back(Gate{op, a, b});
        return c.num_inputs + static_cast<uint32_t>(c.gates.size() - 1);
    };

    for (uint32_t r = 0; r < p.rounds; ++r) {
        // S-box layer, one nibble at a time.
        for (uint32_t base = 0; base + 4 <= ell; base += 4) {
            const uint32_t in0 = state[base], in1 = state[base + 1];
            const uint32_t in2 = state[base + 2], in3 = state[base + 3];
            const uint32_t n0 = emit(GateOp::Not, in0);
            const uint32_t n1 = emit(GateOp::Not, in1);
            const uint32_t n2 = emit(GateOp::Not, in2);
            const uint32_t n3 = emit(GateOp::Not, in3);
            for (uint32_t o = 0; o < 4; ++o) {
                uint32_t acc = 0;
                bool have = false;
                for (uint32_t v = 0; v < 16; ++v) {
                    if (((kSbox[v] >> (3 - o)) & 1u) == 0) continue;
                    const uint32_t l0 = (v & 8u) ? in0 : n0;
                    const uint32_t l1 = (v & 4u) ? in1 : n1;
                    const uint32_t l2 = (v & 2u) ? in2 : n2;
                    const uint32_t l3 = (v & 1u) ? in3 : n3;
                    const uint32_t m01 = emit(GateOp::And, l0, l1);
                    const uint32_t m23 = emit(GateOp::And, l2, l3);
                    const uint32_t minterm = emit(GateOp::And, m01, m23);
                    acc = have ? emit(GateOp::Or, acc, minterm) : minterm;
                    have = true;
                }
                state[base + o] = acc;
            }
        }

        // Bit permutation.
        std::vector<uint32_t> gathered(ell);
        for (uint32_t i = 0; i < ell; ++i) gathered[i] = state[(mult * i + 1) % ell];
        state = gathered;

        // Key mix.
        for (uint32_t j = 0; j < ell; ++j) {
            const uint32_t key_idx = (j + 7 * r) % p.key_bits;
            const uint8_t bit = static_cast<uint8_t>((key >> (p.key_bits - 1 - key_idx)) & 1u);
            out.key_gate_slots.emplace_back(c.gates.size(), key_idx);
            const uint32_t kw = emit(bit ? GateOp::Const1 : GateOp::Const0);
            state[j] = emit(GateOp::Xor, state[j], kw);
        }
    }

    for (uint32_t j = 0; j < p.output_bits; ++j) c.output_wires.push_back(state[j]);
    c.declared_size = c.gates.size();
    return out;
}

}  // namespace

Circuit build_member_circuit(uint64_t key, const FamilyParams& p) {
    if (p.key_bits < 64 && key >= (uint64_t{1} << p.key_bits))
        throw ParamError("member key wider than kappa bits");
    return build_template(key, p).circuit;
}

uint64_t member_circuit_gate_count(const FamilyParams& p) {
    static thread_local std::optional<std::pair<FamilyParams, uint64_t>> cache;
    if (cache && cache->first == p) return cache->second;
    const uint64_t n = build_template(0, p).circuit.gates.size();
    cache = {p, n};
    return n;
}

std::optional<uint64_t> match_member_circuit(const Circuit& c, const FamilyParams& p) {
    TemplateBuild ref = build_template(0, p);
    if (c.gates.size() != ref.circuit.gates.size()) return std::nullopt;

    uint64_t key = 0;
    uint64_t assigned = 0;
    for (const auto& [gate_idx, key_idx] : ref.key_gate_slots) {
        const GateOp op = c.gates[gate_idx].op;
        uint8_t bit;
        if (op == GateOp::Const0) {
            bit = 0;
        } else if (op == GateOp::Const1) {
            bit = 1;
        } else {
            return std::nullopt;
        }
        const uint64_t mask = uint64_t{1} << (p.key_bits - 1 - key_idx);
        // The schedule may visit a key bit twice; all sightings must agree.
        if (assigned & mask) {
            if (((key & mask) != 0) != (bit != 0)) return std::nullopt;
        } else {
            assigned |= mask;
            if (bit) key |= mask;
        }
    }
    if (build_member_circuit(key, p).same_gates(c)) return key;
    return std::nullopt;
}

}  // namespace oblab
