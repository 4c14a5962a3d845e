#include "oblab/encoding.hpp"

#include <algorithm>

#include "oblab/errors.hpp"
#include "oblab/member_circuit.hpp"

namespace oblab {

namespace {

constexpr uint64_t kModeMember = 0;
constexpr uint64_t kModeGeneric = 1;

Circuit const0_circuit(const FamilyParams& p) {
    Circuit c;
    c.num_inputs = p.input_bits;
    c.num_outputs = p.output_bits;
    c.gates.push_back(Gate{GateOp::Const0, 0, 0});
    for (uint32_t j = 0; j < p.output_bits; ++j) c.output_wires.push_back(p.input_bits);
    c.declared_size = 1;
    return c;
}

}  // namespace

uint32_t generic_operand_bits(const FamilyParams& p) {
    uint32_t bits = 0;
    while ((uint32_t{1} << bits) < p.encoding_bits) ++bits;
    return bits;
}

uint32_t generic_gate_budget(const FamilyParams& p) {
    const uint32_t w = generic_operand_bits(p);
    const uint32_t fixed = 2 + p.output_bits * w;
    if (fixed > p.encoding_bits) return 0;
    return (p.encoding_bits - fixed) / (3 + 2 * w);
}

Circuit decode_circuit(const EncodedCircuit& e, const FamilyParams& p) {
    if (e.bits.size() != p.encoding_bits)
        throw WidthError("decode_circuit: encoding is not m bits");
    const uint64_t mode = (uint64_t{e.bits[0]} << 1) | e.bits[1];

    if (mode == kModeMember) {
        const uint64_t key = e.bits.slice(2, p.key_bits).to_u64();
        return build_member_circuit(key, p);
    }
    if (mode != kModeGeneric) return const0_circuit(p);

    const uint32_t w = generic_operand_bits(p);
    const uint32_t budget = generic_gate_budget(p);
    Circuit c;
    c.num_inputs = p.input_bits;
    c.num_outputs = p.output_bits;
    size_t pos = 2;
    for (uint32_t j = 0; j < budget; ++j) {
        const uint64_t op_raw = e.bits.slice(pos, 3).to_u64();
        pos += 3;
        const uint64_t a_raw = e.bits.slice(pos, w).to_u64();
        pos += w;
        const uint64_t b_raw = e.bits.slice(pos, w).to_u64();
        pos += w;
        Gate g;
        g.op = static_cast<GateOp>(std::min<uint64_t>(op_raw, 5));
        const uint64_t limit = p.input_bits + j;  // wires defined before this gate
        g.a = static_cast<uint32_t>(std::min<uint64_t>(a_raw, limit - 1));
        g.b = static_cast<uint32_t>(std::min<uint64_t>(b_raw, limit - 1));
        if (gate_arity(g.op) < 2) g.b = 0;
        if (gate_arity(g.op) < 1) g.a = 0;
        c.gates.push_back(g);
    }
    const uint64_t wire_limit = p.input_bits + budget;
    for (uint32_t j = 0; j < p.output_bits; ++j) {
        const uint64_t o_raw = e.bits.slice(pos, w).to_u64();
        pos += w;
        c.output_wires.push_back(static_cast<uint32_t>(std::min<uint64_t>(o_raw, wire_limit - 1)));
    }
    c.declared_size = c.gates.size();
    return c;
}

Circuit decode_index(uint64_t w, const FamilyParams& p) {
    return decode_circuit(EncodedCircuit{BitVec::from_u64(w, p.encoding_bits)}, p);
}

EncodedCircuit encode_member_key(uint64_t key, const FamilyParams& p) {
    if (p.key_bits < 64 && key >= (uint64_t{1} << p.key_bits))
        throw ParamError("encode_member_key: key wider than kappa bits");
    BitVec bits(p.encoding_bits);
    const BitVec key_bits = BitVec::from_u64(key, p.key_bits);
    for (uint32_t i = 0; i < p.key_bits; ++i) bits.set(2 + i, key_bits[i]);
    return EncodedCircuit{bits};
}

EncodedCircuit encode_circuit(const Circuit& c, const FamilyParams& p) {
    if (c.num_inputs != p.input_bits || c.num_outputs != p.output_bits)
        throw NotEncodableError("encode_circuit: width differs from the family layout");

    if (auto key = match_member_circuit(c, p)) return encode_member_key(*key, p);

    const uint32_t budget = generic_gate_budget(p);
    if (c.gates.size() > budget)
        throw NotEncodableError("encode_circuit: " + std::to_string(c.gates.size()) +
                                " gates exceed the generic budget of " + std::to_string(budget));
    const uint32_t w = generic_operand_bits(p);
    const uint64_t field_max = uint64_t{1} << w;
    BitVec bits(p.encoding_bits);
    bits.set(0, 0);
    bits.set(1, 1);
    size_t pos = 2;
    auto put = [&](uint64_t v, uint32_t width) {
        const BitVec f = BitVec::from_u64(v, width);
        for (uint32_t i = 0; i < width; ++i) bits.set(pos + i, f[i]);
        pos += width;
    };
    for (uint32_t j = 0; j < budget; ++j) {
        if (j < c.gates.size()) {
            const Gate& g = c.gates[j];
            const uint32_t a = gate_arity(g.op) >= 1 ? g.a : 0;
            const uint32_t b = gate_arity(g.op) >= 2 ? g.b : 0;
            if (a >= field_max || b >= field_max)
                throw NotEncodableError("encode_circuit: operand does not fit the field width");
            put(static_cast<uint64_t>(g.op), 3);
            put(a, w);
            put(b, w);
        } else {
            put(static_cast<uint64_t>(GateOp::Const0), 3);  // dead filler gate
            put(0, w);
            put(0, w);
        }
    }
    for (uint32_t j = 0; j < p.output_bits; ++j) {
        if (c.output_wires[j] >= field_max)
            throw NotEncodableError("encode_circuit: output wire does not fit the field width");
        put(c.output_wires[j], w);
    }
    return EncodedCircuit{bits};
}

}  // namespace oblab
