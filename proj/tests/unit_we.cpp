#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oblab/drbg.hpp"
#include "oblab/encoding.hpp"
#include "oblab/errors.hpp"
#include "oblab/we.hpp"

using namespace oblab;

namespace {
const Family& tiny() {
    static const Family f(tiny_profile());
    return f;
}

Statement member_statement(const FamilyMember& m, const Family& f) {
    return Statement{eval_on_set(m.circuit, f.params().probe_points)};
}
}  // namespace

TEST_CASE("decryption with valid witnesses is exact over 50 members") {
    const Family& f = tiny();
    Drbg d({0x71}, 0);
    for (int i = 0; i < 50; ++i) {
        const FamilyMember m = sample_member(d.bytes(16), f);
        const Statement x = member_statement(m, f);
        const EncodedCircuit witness = encode_circuit(m.circuit, f.params());
        for (uint8_t b = 0; b <= 1; ++b) {
            CHECK(we_decrypt(we_encrypt(x, b, f), witness) == b);
        }
    }
}

TEST_CASE("invalid witnesses decrypt to zero") {
    const Family& f = tiny();
    const FamilyMember m = sample_member({0x72}, f);
    const Statement x = member_statement(m, f);
    const Ciphertext ct = we_encrypt(x, 1, f);
    // pick an encoding that disagrees with x on the probes
    for (uint64_t w = 0; w < 256; ++w) {
        if (f.encoding_values()[w] != x.values.to_u64()) {
            CHECK(we_decrypt(ct, EncodedCircuit{BitVec::from_u64(w, 8)}) == 0);
            break;
        }
    }
    // all-zero witness against a statement it cannot match
    Statement mismatch{BitVec::from_u64(f.encoding_values()[0] ^ 1u, 16)};
    if (!language_membership(mismatch, f).member) {
        CHECK(we_decrypt(we_encrypt(mismatch, 1, f), EncodedCircuit{BitVec(8)}) == 0);
    }
}

TEST_CASE("off-language ciphertext pairs are byte-identical") {
    const Family& f = tiny();
    Drbg d({0x73}, 0);
    int checked = 0;
    while (checked < 25) {
        const Statement x{d.bits(16)};
        if (language_membership(x, f).member) continue;
        ++checked;
        CHECK(ciphertext_to_bytes(we_encrypt(x, 0, f), x) ==
              ciphertext_to_bytes(we_encrypt(x, 1, f), x));
    }
    // and an in-language pair differs
    const FamilyMember m = sample_member({0x74}, f);
    const Statement x = member_statement(m, f);
    CHECK(ciphertext_to_bytes(we_encrypt(x, 0, f), x) !=
          ciphertext_to_bytes(we_encrypt(x, 1, f), x));
}

TEST_CASE("zero-plaintext ciphertexts are the canonical constant zero") {
    const Family& f = tiny();
    Drbg d({0x75}, 0);
    const Statement x{d.bits(16)};
    const Ciphertext ct = we_encrypt(x, 0, f);
    for (uint64_t w = 0; w < 256; ++w) CHECK(ct.body.eval(w) == 0);
}

TEST_CASE("membership returns the lexicographically least witness") {
    const Family& f = tiny();
    const FamilyMember m = sample_member({0x76}, f);
    const Statement x = member_statement(m, f);
    const Membership mem = language_membership(x, f);
    REQUIRE(mem.member);
    const uint64_t got = mem.witness->index();
    const auto& values = f.encoding_values();
    for (uint64_t w = 0; w < got; ++w) CHECK(values[w] != x.values.to_u64());
    CHECK(values[got] == x.values.to_u64());
    // the member's own encoding is a witness, so the least is at most it
    CHECK(got <= encode_circuit(m.circuit, f.params()).index());
}

TEST_CASE("montecarlo membership rate respects the counting bound") {
    const Family& f = tiny();
    Drbg d({0x77}, 0);
    const int n = 4000;
    int members = 0;
    for (int i = 0; i < n; ++i) {
        if (language_membership(Statement{d.bits(16)}, f).member) ++members;
    }
    const double rate = static_cast<double>(members) / n;
    const double p0 = 1.0 / 256.0;  // 2^(m - t*ell')
    CHECK(rate <= p0 + 3.0 * std::sqrt(p0 * (1 - p0) / n));
}

TEST_CASE("ciphertext files round trip") {
    const Family& f = tiny();
    const FamilyMember m = sample_member({0x78}, f);
    const Statement x = member_statement(m, f);
    const Ciphertext ct = we_encrypt(x, 1, f);
    const auto bytes = ciphertext_to_bytes(ct, x);
    CHECK(bytes[0] == kCiphertextVersion);
    const auto [ct2, x2] = ciphertext_from_bytes(bytes);
    CHECK(x2.values == x.values);
    CHECK(ct2.body.canonical_bytes() == ct.body.canonical_bytes());
    CHECK_THROWS_AS(ciphertext_from_bytes({0x00, 0x01}), ParamError);
}

TEST_CASE("statement width is checked") {
    const Family& f = tiny();
    CHECK_THROWS_AS(we_encrypt(Statement{BitVec(7)}, 0, f), WidthError);
    const Ciphertext ct = we_encrypt(Statement{BitVec(16)}, 0, f);
    CHECK_THROWS_AS(we_decrypt(ct, EncodedCircuit{BitVec(9)}), WidthError);
}
