#pragma once

#include <cstdint>

#include "oblab/bits.hpp"
#include "oblab/circuit.hpp"
#include "oblab/family_params.hpp"

namespace oblab {

// Fixed-width m-bit circuit description. Every m-bit string decodes to some
// circuit (decoding is total), so "circuit of size at most m" means exactly
// "image of some m-bit string under decode_circuit".
//
// Layout, MSB first:
//   bits[0..1]  mode tag
//     00 member mode: next kappa bits are the member key, remainder ignored
//     01 generic mode: generic_gate_budget() records of
//        (3-bit op, two operand fields of generic_operand_bits() each),
//        then ell_prime output-wire fields, then ignored padding
//     10, 11 reserved: decodes as the constant-0 circuit
// Ignored and reserved bits still count toward the string's identity.
struct EncodedCircuit {
    BitVec bits;

    uint64_t index() const { return bits.to_u64(); }
    bool operator==(const EncodedCircuit&) const = default;
};

uint32_t generic_operand_bits(const FamilyParams& p);  // ceil(log2 m)
uint32_t generic_gate_budget(const FamilyParams& p);

// Total: never fails on any m-bit input. Out-of-range operand codes are
// clamped to the last wire defined before the gate; out-of-range ops to
// CONST1; out-of-range output fields to the last wire.
Circuit decode_circuit(const EncodedCircuit& e, const FamilyParams& p);
Circuit decode_index(uint64_t w, const FamilyParams& p);

// Member mode with an all-zero tail.
EncodedCircuit encode_member_key(uint64_t key, const FamilyParams& p);

// Member-template instances encode in member mode; anything else must fit
// the generic gate budget or NotEncodableError is thrown.
EncodedCircuit encode_circuit(const Circuit& c, const FamilyParams& p);

}  // namespace oblab
