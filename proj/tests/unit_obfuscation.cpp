#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oblab/drbg.hpp"
#include "oblab/errors.hpp"
#include "oblab/family.hpp"
#include "oblab/obfuscation.hpp"

using namespace oblab;

namespace {
const Family& tiny() {
    static const Family f(tiny_profile());
    return f;
}
}  // namespace

TEST_CASE("two xor implementations canonicalize to identical bytes") {
    const Circuit a = parse_circuit("in 2; out 1; g0 = XOR x0 x1; return g0;");
    // x ^ y = (x | y) & ~(x & y), padded to the same declared size
    const Circuit b = parse_circuit(
        "in 2; out 1; g0 = OR x0 x1; g1 = AND x0 x1; g2 = NOT g1; g3 = AND g0 g2; return g3;");
    const uint64_t size = std::max(a.declared_size, b.declared_size);
    CHECK(io_obfuscate(pad_circuit(a, size)).canonical_bytes() ==
          io_obfuscate(pad_circuit(b, size)).canonical_bytes());
    // different declared sizes -> different bytes even for equal functions
    CHECK(io_obfuscate(a).canonical_bytes() != io_obfuscate(b).canonical_bytes());
}

TEST_CASE("canonical byte layout is bit-exact") {
    const Circuit and_c = parse_circuit("in 2; out 1; g0 = AND x0 x1; return g0;");
    const auto bytes = io_obfuscate(and_c).canonical_bytes();
    // [C1][0002][0001][00000001][rows 0001 packed MSB-first -> 0x10]
    CHECK(bytes == std::vector<uint8_t>{0xC1, 0x00, 0x02, 0x00, 0x01, 0x00, 0x00, 0x00, 0x01, 0x10});
    const CanonicalCircuit back = CanonicalCircuit::from_bytes(bytes);
    CHECK(back.canonical_bytes() == bytes);
    CHECK(back.eval(3) == 1);
    CHECK(back.eval(2) == 0);
}

TEST_CASE("idempotence") {
    Drbg d({0x61}, 0);
    const FamilyMember m = sample_member(d.bytes(8), tiny());
    const CanonicalCircuit once = io_obfuscate(m.circuit);
    CHECK(io_obfuscate(once).canonical_bytes() == once.canonical_bytes());
}

TEST_CASE("the multiplexer-tree form computes the table") {
    Drbg d({0x62}, 0);
    const FamilyMember m = sample_member(d.bytes(8), tiny());
    const CanonicalCircuit cc = io_obfuscate(m.circuit);
    const Circuit mux = cc.to_circuit();
    mux.validate();
    CHECK(mux.gates.size() == mux_tree_gate_count(cc.num_inputs(), cc.num_outputs()));
    for (uint64_t x = 0; x < 64; ++x) {
        CHECK(eval_circuit_u64(mux, x) == cc.eval(x));
        CHECK(cc.eval(x) == eval_circuit_u64(m.circuit, x));
    }
}

TEST_CASE("multi-output canonicalization") {
    const Circuit c = parse_circuit("in 3; out 2; g0 = XOR x0 x2; g1 = AND x1 x2; return g0, g1;");
    const CanonicalCircuit cc = io_obfuscate(c);
    const Circuit mux = cc.to_circuit();
    for (uint64_t x = 0; x < 8; ++x) CHECK(eval_circuit_u64(mux, x) == eval_circuit_u64(c, x));
}

TEST_CASE("pad keeps the function and raises only the declared size") {
    const Circuit and_c = parse_circuit("in 2; out 1; g0 = AND x0 x1; return g0;");
    const Circuit same = pad_circuit(and_c, and_c.declared_size);
    CHECK(same.same_gates(and_c));
    const Circuit padded = pad_circuit(and_c, 10);
    padded.validate();
    CHECK(padded.declared_size == 10);
    for (uint64_t x = 0; x < 4; ++x)
        CHECK(eval_circuit_u64(padded, x) == eval_circuit_u64(and_c, x));
    CHECK_THROWS_AS(pad_circuit(padded, 5), ParamError);
}

TEST_CASE("padding equal functions to equal size gives identical obfuscations") {
    const Circuit a = parse_circuit("in 2; out 1; g0 = OR x1 x0; return g0;");
    const Circuit b = parse_circuit("in 2; out 1; g0 = OR x0 x1; g1 = NOT g0; g2 = NOT g1; return g2;");
    for (uint64_t d = 3; d < 8; ++d) {
        CHECK(io_obfuscate(pad_circuit(a, d)).canonical_bytes() ==
              io_obfuscate(pad_circuit(b, d)).canonical_bytes());
    }
}

TEST_CASE("identity candidate re-encodes the member") {
    const Family& f = tiny();
    const FamilyMember m = sample_member({0x63}, f);
    const EncodedCircuit e = vbb_obfuscate(vbb_candidates()[0], m.circuit, f, {0x00});
    CHECK(e == encode_circuit(m.circuit, f.params()));
}

TEST_CASE("rewire candidate keeps the function and varies the bytes") {
    // Needs ignored tail bits, so run at the default profile (m > kappa + 2).
    const Family f(default_profile());
    const FamilyMember m = sample_member({0x64}, f);
    const VbbCandidate& rewire = vbb_candidates()[1];
    CHECK(rewire.name == "rewire");
    int distinct = 0;
    const EncodedCircuit first = vbb_obfuscate(rewire, m.circuit, f, {0x00});
    for (uint8_t s = 1; s <= 10; ++s) {
        const EncodedCircuit e = vbb_obfuscate(rewire, m.circuit, f, {s});
        if (!(e == first)) ++distinct;
        const Circuit back = decode_circuit(e, f.params());
        for (uint64_t x = 0; x < 256; x += 7)
            CHECK(eval_circuit_u64(back, x) == eval_circuit_u64(m.circuit, x));
        CHECK(e.bits.size() == f.params().encoding_bits);
    }
    CHECK(distinct >= 5);
}

TEST_CASE("candidates reject non-members") {
    const Family& f = tiny();
    const Circuit c = parse_circuit("in 6; out 1; g0 = AND x0 x1; return g0;");
    CHECK_THROWS_AS(vbb_obfuscate(vbb_candidates()[0], c, f, {0x00}), NotEncodableError);
}

TEST_CASE("truth-table budget flows through io_obfuscate") {
    const Circuit wide = parse_circuit("in 22; out 1; g0 = AND x0 x1; return g0;");
    CHECK_THROWS_AS(io_obfuscate(wide, 1 << 20), BudgetError);
}

TEST_CASE("multiplexer tree stays faithful at twelve inputs") {
    // exercises deep recursion and the gate-count formula at a width where
    // the tree has thousands of gates
    Drbg d({0x65}, 0);
    Circuit c;
    c.num_inputs = 12;
    c.num_outputs = 1;
    for (int j = 0; j < 30; ++j) {
        Gate g;
        g.op = static_cast<GateOp>(d.uniform(6));
        const uint32_t limit = c.num_inputs + static_cast<uint32_t>(j);
        if (gate_arity(g.op) >= 1) g.a = static_cast<uint32_t>(d.uniform(limit));
        if (gate_arity(g.op) >= 2) g.b = static_cast<uint32_t>(d.uniform(limit));
        c.gates.push_back(g);
    }
    c.output_wires.push_back(static_cast<uint32_t>(d.uniform(c.wire_count())));
    c.declared_size = c.gates.size();
    const CanonicalCircuit cc = io_obfuscate(c);
    const Circuit mux = cc.to_circuit();
    mux.validate();
    CHECK(mux.gates.size() == mux_tree_gate_count(12, 1));
    for (uint64_t x = 0; x < (uint64_t{1} << 12); ++x)
        CHECK(eval_circuit_u64(mux, x) == cc.eval(x));
}
