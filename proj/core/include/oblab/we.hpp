#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "oblab/bits.hpp"
#include "oblab/family.hpp"
#include "oblab/obfuscation.hpp"

namespace oblab {

// A claimed value vector over the probe set (t*ell' bits). The statement is
// in the language iff some m-bit encoding decodes to a circuit taking these
// values on the probes; that encoding is the witness.
struct Statement {
    BitVec values;
};

// The ciphertext is the canonical obfuscation of the witness checker
// W(w) = b if decode(w) matches the statement on the probe set, else 0.
struct Ciphertext {
    CanonicalCircuit body;
};

// Deterministic: encryption is a pure function of (statement, bit, family).
// For statements outside the language the checker is constantly 0, so the
// two ciphertexts are byte-identical and the plaintext is hidden perfectly.
Ciphertext we_encrypt(const Statement& x, uint8_t bit, const Family& f);

// Returns body(w); equals the planted bit whenever w is a valid witness.
uint8_t we_decrypt(const Ciphertext& ct, const EncodedCircuit& witness);

struct Membership {
    bool member = false;
    std::optional<EncodedCircuit> witness;  // lexicographically least
};

// Exact decision by exhaustive scan of all 2^m encodings.
Membership language_membership(const Statement& x, const Family& f);

// Ciphertext file: [u8 version 0xE1][u32 statement bit length][statement
// bits packed MSB-first][canonical bytes of the body].
inline constexpr uint8_t kCiphertextVersion = 0xE1;

std::vector<uint8_t> ciphertext_to_bytes(const Ciphertext& ct, const Statement& x);
std::pair<Ciphertext, Statement> ciphertext_from_bytes(const std::vector<uint8_t>& bytes);

}  // namespace oblab
