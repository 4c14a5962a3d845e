#include "oblab/circuit.hpp"

#include "oblab/errors.hpp"

namespace oblab {

const char* gate_op_name(GateOp op) {
    switch (op) {
        case GateOp::And: return "AND";
        case GateOp::Or: return "OR";
        case GateOp::Xor: return "XOR";
        case GateOp::Not: return "NOT";
        case GateOp::Const0: return "CONST0";
        case GateOp::Const1: return "CONST1";
    }
    return "?";
}

void Circuit::validate() const {
    for (size_t j = 0; j < gates.size(); ++j) {
        const Gate& g = gates[j];
        const uint32_t limit = num_inputs + static_cast<uint32_t>(j);
        const int arity = gate_arity(g.op);
        if (arity >= 1 && g.a >= limit)
            throw Error("circuit: gate " + std::to_string(j) + " references a later wire");
        if (arity >= 2 && g.b >= limit)
            throw Error("circuit: gate " + std::to_string(j) + " references a later wire");
    }
    if (output_wires.size() != num_outputs)
        throw Error("circuit: output count does not match declared width");
    for (uint32_t w : output_wires) {
        if (w >= wire_count()) throw Error("circuit: output references a missing wire");
    }
    if (declared_size < gates.size())
        throw Error("circuit: declared_size below live gate count");
}

bool Circuit::same_gates(const Circuit& other) const {
    if (num_inputs != other.num_inputs || num_outputs != other.num_outputs ||
        declared_size != other.declared_size ||
        gates.size() != other.gates.size() || output_wires != other.output_wires)
        return false;
    for (size_t j = 0; j < gates.size(); ++j) {
        const Gate &g = gates[j], &h = other.gates[j];
        if (g.op != h.op) return false;
        const int arity = gate_arity(g.op);
        if (arity >= 1 && g.a != h.a) return false;
        if (arity >= 2 && g.b != h.b) return false;
    }
    return true;
}

uint64_t TruthTable::row(size_t i) const {
    uint64_t v = 0;
    const size_t base = i * num_outputs;
    for (uint32_t j = 0; j < num_outputs; ++j) {
        const size_t bit = base + j;
        v = (v << 1) | ((packed[bit / 8] >> (7 - (bit % 8))) & 1u);
    }
    return v;
}

void TruthTable::set_row(size_t i, uint64_t value) {
    const size_t base = i * num_outputs;
    for (uint32_t j = 0; j < num_outputs; ++j) {
        const size_t bit = base + j;
        const uint8_t mask = static_cast<uint8_t>(1u << (7 - (bit % 8)));
        if ((value >> (num_outputs - 1 - j)) & 1u) {
            packed[bit / 8] |= mask;
        } else {
            packed[bit / 8] &= static_cast<uint8_t>(~mask);
        }
    }
}

BitVec TruthTable::row_bits(size_t i) const { return BitVec::from_u64(row(i), num_outputs); }

TruthTable make_truth_table(uint32_t num_inputs, uint32_t num_outputs) {
    if (num_inputs > 62) throw ParamError("truth table: too many inputs");
    TruthTable t;
    t.num_inputs = num_inputs;
    t.num_outputs = num_outputs;
    const uint64_t bits = (uint64_t{1} << num_inputs) * num_outputs;
    t.packed.assign(static_cast<size_t>((bits + 7) / 8), 0);
    return t;
}

namespace {

void eval_wires(const Circuit& c, std::vector<uint8_t>& wires) {
    for (size_t j = 0; j < c.gates.size(); ++j) {
        const Gate& g = c.gates[j];
        uint8_t v = 0;
        switch (g.op) {
            case GateOp::And: v = wires[g.a] & wires[g.b]; break;
            case GateOp::Or: v = wires[g.a] | wires[g.b]; break;
            case GateOp::Xor: v = wires[g.a] ^ wires[g.b]; break;
            case GateOp::Not: v = wires[g.a] ^ 1u; break;
            case GateOp::Const0: v = 0; break;
            case GateOp::Const1: v = 1; break;
        }
        wires[c.num_inputs + j] = v;
    }
}

}  // namespace

BitVec eval_circuit(const Circuit& c, const BitVec& x) {
    if (x.size() != c.num_inputs)
        throw WidthError("eval_circuit: input width mismatch");
    std::vector<uint8_t> wires(c.wire_count());
    for (uint32_t i = 0; i < c.num_inputs; ++i) wires[i] = x[i];
    eval_wires(c, wires);
    BitVec out(c.num_outputs);
    for (uint32_t j = 0; j < c.num_outputs; ++j) out.set(j, wires[c.output_wires[j]]);
    return out;
}

uint64_t eval_circuit_u64(const Circuit& c, uint64_t point) {
    if (c.num_inputs > 64) throw WidthError("eval_circuit_u64: too wide");
    std::vector<uint8_t> wires(c.wire_count());
    for (uint32_t i = 0; i < c.num_inputs; ++i) {
        wires[i] = static_cast<uint8_t>((point >> (c.num_inputs - 1 - i)) & 1u);
    }
    eval_wires(c, wires);
    uint64_t out = 0;
    for (uint32_t j = 0; j < c.num_outputs; ++j) out = (out << 1) | wires[c.output_wires[j]];
    return out;
}

TruthTable truth_table(const Circuit& c, uint64_t budget_bits) {
    if (c.num_inputs > 62) throw BudgetError("truth_table: input width over 62 bits");
    const uint64_t bits = (uint64_t{1} << c.num_inputs) * c.num_outputs;
    if (bits > budget_bits)
        throw BudgetError("truth_table: " + std::to_string(bits) +
                          " bits exceeds budget of " + std::to_string(budget_bits));
    TruthTable t = make_truth_table(c.num_inputs, c.num_outputs);
    std::vector<uint8_t> wires(c.wire_count());
    const uint64_t rows = uint64_t{1} << c.num_inputs;
    for (uint64_t i = 0; i < rows; ++i) {
        for (uint32_t j = 0; j < c.num_inputs; ++j) {
            wires[j] = static_cast<uint8_t>((i >> (c.num_inputs - 1 - j)) & 1u);
        }
        eval_wires(c, wires);
        uint64_t v = 0;
        for (uint32_t j = 0; j < c.num_outputs; ++j) v = (v << 1) | wires[c.output_wires[j]];
        t.set_row(i, v);
    }
    return t;
}

BitVec eval_on_set(const Circuit& c, const std::vector<uint64_t>& points) {
    BitVec out;
    for (uint64_t p : points) {
        if (c.num_inputs < 64 && p >= (uint64_t{1} << c.num_inputs))
            throw WidthError("eval_on_set: point outside the input domain");
        out.append(BitVec::from_u64(eval_circuit_u64(c, p), c.num_outputs));
    }
    return out;
}

}  // namespace oblab
