#pragma once

#include <array>
#include <cstdint>
#include <optional>

#include "oblab/circuit.hpp"
#include "oblab/family_params.hpp"

namespace oblab {

// 4-bit S-box used by the keyed substitution-permutation members.
inline constexpr std::array<uint8_t, 16> kSbox = {0x6, 0x4, 0xC, 0x5, 0x0, 0x7, 0x2, 0xE,
                                                  0x1, 0xF, 0x3, 0xD, 0x8, 0xA, 0x9, 0xB};

// Round structure, per round r:
//   1. S-box on each full 4-bit nibble of the state (MSB-first within the
//      nibble); trailing ell mod 4 bits pass through,
//   2. bit gather: new_state[i] = old_state[(3*i + 1) mod ell],
//   3. key mix: state[j] ^= key[(j + 5*r) mod kappa], emitted as a CONST
//      gate plus an XOR gate so the gate count is key-independent.
// Output: the first ell_prime state bits after the last round.
//
// The gate sequence is a fixed template; only CONST0/CONST1 choices at the
// key-mix positions vary with the key, which makes the key recoverable.
Circuit build_member_circuit(uint64_t key, const FamilyParams& p);

// Recovers the key if `c` is gate-for-gate an instance of the member
// template under these params; nullopt otherwise.
std::optional<uint64_t> match_member_circuit(const Circuit& c, const FamilyParams& p);

// Gate count of the template (key independent).
uint64_t member_circuit_gate_count(const FamilyParams& p);

}  // namespace oblab
