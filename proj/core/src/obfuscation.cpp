#include "oblab/obfuscation.hpp"

#include "oblab/errors.hpp"
#include "oblab/member_circuit.hpp"

namespace oblab {

CanonicalCircuit::CanonicalCircuit(TruthTable table, uint64_t declared_size)
    : table_(std::move(table)), declared_size_(declared_size) {}

BitVec CanonicalCircuit::eval_bits(const BitVec& x) const {
    if (x.size() != table_.num_inputs) throw WidthError("canonical eval: width mismatch");
    return table_.row_bits(x.to_u64());
}

std::vector<uint8_t> CanonicalCircuit::canonical_bytes() const {
    std::vector<uint8_t> out;
    out.push_back(kCanonicalVersion);
    put_u16(out, static_cast<uint16_t>(table_.num_inputs));
    put_u16(out, static_cast<uint16_t>(table_.num_outputs));
    put_u32(out, static_cast<uint32_t>(declared_size_));
    out.insert(out.end(), table_.packed.begin(), table_.packed.end());
    return out;
}

CanonicalCircuit CanonicalCircuit::from_bytes(const std::vector<uint8_t>& bytes) {
    if (bytes.size() < 9 || bytes[0] != kCanonicalVersion)
        throw ParamError("canonical form: bad header");
    TruthTable t;
    t.num_inputs = get_u16(bytes, 1);
    t.num_outputs = get_u16(bytes, 3);
    const uint64_t declared = get_u32(bytes, 5);
    if (t.num_inputs > 62 || t.num_outputs == 0)
        throw ParamError("canonical form: unsupported widths");
    const uint64_t bits = (uint64_t{1} << t.num_inputs) * t.num_outputs;
    if (bytes.size() != 9 + (bits + 7) / 8)
        throw ParamError("canonical form: body length mismatch");
    t.packed.assign(bytes.begin() + 9, bytes.end());
    return CanonicalCircuit(std::move(t), declared);
}

uint64_t mux_tree_gate_count(uint32_t num_inputs, uint32_t num_outputs) {
    // ell selector inverters, then per output one CONST leaf per row and a
    // 3-gate mux per internal node.
    return num_inputs +
           uint64_t{num_outputs} * ((uint64_t{1} << num_inputs) +
                                    3 * ((uint64_t{1} << num_inputs) - 1));
}

Circuit CanonicalCircuit::to_circuit() const {
    const uint32_t ell = table_.num_inputs;
    Circuit c;
    c.num_inputs = ell;
    c.num_outputs = table_.num_outputs;

    auto emit = [&](GateOp op, uint32_t a = 0, uint32_t b = 0) -> uint32_t {
        c.gates.push_back(Gate{op, a, b});
        return c.num_inputs + static_cast<uint32_t>(c.gates.size() - 1);
    };

    std::vector<uint32_t> not_wires(ell);
    for (uint32_t i = 0; i < ell; ++i) not_wires[i] = emit(GateOp::Not, i);

    for (uint32_t o = 0; o < table_.num_outputs; ++o) {
        // Post-order over input prefixes, left (bit 0) first.
        auto build = [&](auto&& self, uint32_t depth, uint64_t prefix) -> uint32_t {
            if (depth == ell) {
                const uint8_t bit =
                    static_cast<uint8_t>((table_.row(prefix) >> (table_.num_outputs - 1 - o)) & 1u);
                return emit(bit ? GateOp::Const1 : GateOp::Const0);
            }
            const uint32_t left = self(self, depth + 1, prefix << 1);
            const uint32_t right = self(self, depth + 1, (prefix << 1) | 1);
            const uint32_t take_left = emit(GateOp::And, not_wires[depth], left);
            const uint32_t take_right = emit(GateOp::And, depth, right);
            return emit(GateOp::Or, take_left, take_right);
        };
        c.output_wires.push_back(build(build, 0, 0));
    }
    c.declared_size = c.gates.size();
    return c;
}

CanonicalCircuit io_obfuscate(const Circuit& c, uint64_t budget_bits) {
    return CanonicalCircuit(truth_table(c, budget_bits), c.declared_size);
}

CanonicalCircuit io_obfuscate(const CanonicalCircuit& c) { return c; }

Circuit pad_circuit(const Circuit& c, uint64_t target) {
    if (target < c.declared_size)
        throw ParamError("pad_circuit: target below the current declared size");
    Circuit out = c;
    const uint64_t extra = target - c.declared_size;
    for (uint64_t i = 0; i < extra; ++i) out.gates.push_back(Gate{GateOp::Const0, 0, 0});
    out.declared_size = target;
    return out;
}

namespace {

EncodedCircuit require_member_encoding(const Circuit& c, const Family& f) {
    const auto key = match_member_circuit(c, f.params());
    if (!key)
        throw NotEncodableError("vbb candidate: circuit is not a family member instance");
    return encode_member_key(*key, f.params());
}

}  // namespace

const std::vector<VbbCandidate>& vbb_candidates() {
    static const std::vector<VbbCandidate> candidates = {
        VbbCandidate{"identity",
                     [](const Circuit& c, const Family& f, Drbg&) {
                         return require_member_encoding(c, f);
                     }},
        VbbCandidate{"rewire",
                     [](const Circuit& c, const Family& f, Drbg& d) {
                         EncodedCircuit e = require_member_encoding(c, f);
                         // Randomize the ignored tail: same decoded circuit,
                         // generally a different m-bit string.
                         const FamilyParams& p = f.params();
                         for (uint32_t i = 2 + p.key_bits; i < p.encoding_bits; ++i)
                             e.bits.set(i, d.bit());
                         return e;
                     }},
    };
    return candidates;
}

EncodedCircuit vbb_obfuscate(const VbbCandidate& candidate, const Circuit& c, const Family& f,
                             const std::vector<uint8_t>& rng_seed) {
    Drbg d(rng_seed, 0);
    EncodedCircuit e = candidate.transform(c, f, d);
    if (e.bits.size() != f.params().encoding_bits)
        throw Error("vbb candidate produced a wrong-width encoding");
    return e;
}

}  // namespace oblab
