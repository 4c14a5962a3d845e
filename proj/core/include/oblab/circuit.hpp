#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "oblab/bits.hpp"

namespace oblab {

enum class GateOp : uint8_t { And = 0, Or = 1, Xor = 2, Not = 3, Const0 = 4, Const1 = 5 };

constexpr int gate_arity(GateOp op) {
    switch (op) {
        case GateOp::And:
        case GateOp::Or:
        case GateOp::Xor: return 2;
        case GateOp::Not: return 1;
        default: return 0;
    }
}

const char* gate_op_name(GateOp op);

// Operands index wires: wire w < num_inputs is input bit w, wire
// num_inputs + j is the output of gates[j]. Unused operand slots are 0.
struct Gate {
    GateOp op;
    uint32_t a = 0;
    uint32_t b = 0;
};

// Gate-list boolean circuit. declared_size carries padding: it may exceed
// the live gate count and participates in size comparisons, never in
// evaluation.
struct Circuit {
    uint32_t num_inputs = 0;
    uint32_t num_outputs = 0;
    std::vector<Gate> gates;
    std::vector<uint32_t> output_wires;
    uint64_t declared_size = 0;

    uint32_t wire_count() const { return num_inputs + static_cast<uint32_t>(gates.size()); }
    // Throws Error if topology, output references or declared_size are broken.
    void validate() const;

    bool same_gates(const Circuit& other) const;
};

struct TruthTable {
    uint32_t num_inputs = 0;
    uint32_t num_outputs = 0;
    // Row i holds the outputs for the input whose bits are the MSB-first
    // binary digits of i; bit j of a row is output j. Packed MSB-first.
    std::vector<uint8_t> packed;

    size_t row_count() const { return size_t{1} << num_inputs; }
    uint64_t row(size_t i) const;
    void set_row(size_t i, uint64_t value);
    BitVec row_bits(size_t i) const;

    bool operator==(const TruthTable&) const = default;
};

TruthTable make_truth_table(uint32_t num_inputs, uint32_t num_outputs);

// Evaluation. Input convention everywhere: x[0] is the most significant bit
// of the point index, i.e. point p maps to bits (p >> (l-1-j)) & 1.
BitVec eval_circuit(const Circuit& c, const BitVec& x);
uint64_t eval_circuit_u64(const Circuit& c, uint64_t point);

inline constexpr uint64_t kDefaultTableBudgetBits = uint64_t{1} << 28;

TruthTable truth_table(const Circuit& c, uint64_t budget_bits = kDefaultTableBudgetBits);

// Concatenation of eval_circuit over the points of I, in I's order.
BitVec eval_on_set(const Circuit& c, const std::vector<uint64_t>& points);

// DSL front end; parse(print(c)) reproduces c gate for gate.
Circuit parse_circuit(const std::string& text);
std::string print_circuit(const Circuit& c);

}  // namespace oblab
