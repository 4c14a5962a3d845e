#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "oblab/advantage.hpp"
#include "oblab/drbg.hpp"
#include "oblab/encoding.hpp"
#include "oblab/family.hpp"
#include "oblab/obfuscation.hpp"
#include "oblab/pprf.hpp"

namespace oblab {

// ---------------------------------------------------------------------------
// Adversary descriptions: closed, serializable programs run on an m-bit
// obfuscation plus an auxiliary byte string. Serialization is
// [u8 tag][u32 payload length][payload] with tags 0..3 as below.
// ---------------------------------------------------------------------------

struct ConstantAdv {
    uint8_t bit = 0;
};

// Interprets a canonical circuit (payload if nonempty, else the runtime aux)
// and applies it to the obfuscation.
struct ApplyAuxCircuitAdv {
    std::vector<uint8_t> circuit_bytes;
};

// Decrypts a ciphertext file (payload if nonempty, else the runtime aux)
// using the obfuscation as the witness.
struct WeDecryptAdv {
    std::vector<uint8_t> ciphertext_bytes;
};

// An inner adversary with its auxiliary input frozen in; the runtime aux is
// ignored. Payload: inner serialization || u32 aux length || aux bytes.
struct HardwiredAuxAdv {
    std::vector<uint8_t> inner_serialized;
    std::vector<uint8_t> aux;
};

using AdversaryDescription =
    std::variant<ConstantAdv, ApplyAuxCircuitAdv, WeDecryptAdv, HardwiredAuxAdv>;

std::vector<uint8_t> serialize_adversary(const AdversaryDescription& adv);
std::optional<AdversaryDescription> parse_adversary(const std::vector<uint8_t>& bytes);

// Total: malformed embedded payloads or width mismatches yield 0.
uint8_t eval_adversary(const AdversaryDescription& adv, const EncodedCircuit& obf,
                       const std::vector<uint8_t>& aux, const Family& f);

// The dispatcher adversary: interprets aux as a serialized adversary and
// runs it on the obfuscation; anything malformed yields 0.
uint8_t universal_adversary(const std::vector<uint8_t>& aux, const EncodedCircuit& obf,
                            const Family& f);

// ---------------------------------------------------------------------------
// Simulator descriptions: oracle-access programs with a query budget
// (enforced by the OracleHandle they run against).
// ---------------------------------------------------------------------------

struct RandomGuessSim {};

struct ConstantSim {
    uint8_t bit = 0;
};

// Queries one point outside the probe set and answers with that bit; spliced
// and plain oracles agree there, so its outcome never separates them.
struct QueryOutsideProbeSim {};

// Queries the whole probe set, guesses a member key, and checks the guess
// against the observed values. indicator_only reports the comparison bit
// (the distinguisher flavor); otherwise a correct guess is used as a
// witness against the auxiliary input and a wrong one degrades to a coin.
struct ProbeKeyGuessSim {
    bool indicator_only = false;
};

// Queries the probe set, then samples `budget` candidate encodings; a
// candidate matching the observed values is used as a witness against the
// auxiliary input. No match degrades to a coin.
struct BruteForceSim {
    uint64_t budget = 0;
};

struct SimulatorDescription;

// The simulator built from a universal simulator and an adversary: on aux,
// hardwires aux into the adversary and hands the serialized result to the
// universal simulator as its input.
struct WrappedUniversalSim {
    std::shared_ptr<const SimulatorDescription> universal;
    AdversaryDescription adversary;
};

struct SimulatorDescription {
    std::variant<RandomGuessSim, ConstantSim, QueryOutsideProbeSim, ProbeKeyGuessSim,
                 BruteForceSim, WrappedUniversalSim>
        program;
};

// Deterministic in (program, oracle contents, aux, rng_seed).
uint8_t run_simulator(const SimulatorDescription& sim, OracleHandle& oracle,
                      const std::vector<uint8_t>& aux, const std::vector<uint8_t>& rng_seed,
                      const Family& f);

SimulatorDescription lemma_wrap_simulator(const SimulatorDescription& universal,
                                          const AdversaryDescription& adv);

struct RegisteredSimulator {
    std::string name;
    SimulatorDescription sim;
    bool honest = true;  // negative controls are excluded from the bounds
    uint64_t query_budget = 0;
};

// Budgeted simulators scored in the attack experiments.
const std::vector<RegisteredSimulator>& simulator_registry();
// Oracle distinguishers for the pseudo-entropy statistic.
const std::vector<RegisteredSimulator>& pe_distinguisher_registry();

// ---------------------------------------------------------------------------
// Fingerprint circuits and the auxiliary-input distribution: the m-input
// circuit that decodes its input, evaluates it over the probe set and
// applies the PRF to the value vector; plus the punctured variant that
// answers 0 on the punctured value.
// ---------------------------------------------------------------------------

// PRF key for value fingerprints: domain t*ell' bits, one output bit.
GgmKey fingerprint_keygen(const std::vector<uint8_t>& rng_seed, const Family& f);

TruthTable fingerprint_table(const GgmKey& s, const Family& f);
TruthTable punctured_fingerprint_table(const PuncturedKey& pk, const Family& f);

// Gate-circuit forms (multiplexer tree over the table; size is the padding
// target d, identical for both variants).
Circuit build_fingerprint_circuit(const GgmKey& s, const Family& f);
Circuit build_punctured_fingerprint_circuit(const PuncturedKey& pk, const Family& f);
uint64_t aux_circuit_size(const Family& f);  // d

// Auxiliary sample: public bytes handed to adversaries/simulators, secret
// bytes used only for scoring.
struct AuxSample {
    std::vector<uint8_t> public_bytes;
    std::vector<uint8_t> secret_bytes;
};

// Obfuscated fingerprint circuit for a fresh PRF key; secret = that key.
AuxSample sample_fingerprint_aux(const std::vector<uint8_t>& rng_seed, const Family& f);

// The independent-aux attack: applies the fingerprint aux to the candidate
// obfuscation. Against any correct candidate this equals the PRF of the
// member's probe values, i.e. the predicate, always.
uint8_t fingerprint_attack(const AuxSample& aux, const EncodedCircuit& obf);

// Scored predicates come in two shapes: the PRF of the member's probe values
// (whose key hides in a fingerprint aux sample) and a planted bit (inside a
// witness-encryption aux sample). Scoring reads only the secret bytes.
uint8_t fingerprint_predicate(const AuxSample& aux, const FamilyMember& member, const Family& f);

// The dependent-aux attack: plants a bit (random, or a fixed key predicate —
// the parity of the member key) inside a witness encryption of the member's
// probe values, then decrypts with the obfuscation as witness.
enum class PlantKind { RandomBit, KeyParity };

struct WitnessAttackResult {
    AuxSample aux;  // public = ciphertext file bytes, secret = planted bit
    uint8_t planted = 0;
    uint8_t recovered = 0;
};

WitnessAttackResult witness_decrypt_attack(const FamilyMember& member, const EncodedCircuit& obf,
                                           const std::vector<uint8_t>& rng_seed, const Family& f,
                                           PlantKind plant = PlantKind::RandomBit);

// ---------------------------------------------------------------------------
// Hybrid chain: plain oracle with the fingerprint aux, spliced oracle with
// the same aux, spliced oracle with the punctured aux. Equal-seed runs make
// per-trial comparisons exact; trials with a compressible replacement are
// counted and excluded from the byte-equality assertions.
// ---------------------------------------------------------------------------

struct HybridReport {
    size_t trials = 0;
    double delta = 0.0;
    double radius = 0.0;
    double plain_success = 0.0;          // scored against PRF(member values)
    double spliced_success = 0.0;        // scored against PRF(replacement)
    double punctured_success = 0.0;      // scored against PRF(replacement)
    size_t compressible_count = 0;
    size_t aux_mismatch_count = 0;       // incompressible trials, aux bytes differ
    size_t output_mismatch_count = 0;    // incompressible trials, spliced vs punctured outputs differ
};

HybridReport run_hybrid_chain(const SimulatorDescription& sim, size_t trials, double delta,
                              const Family& f, const std::vector<uint8_t>& master_seed,
                              uint64_t oracle_budget);

// |Pr[D^plain = 1] - Pr[D^spliced = 1]| over paired equal-seed trials.
AdvantageEstimate pseudo_entropy_advantage(const SimulatorDescription& distinguisher,
                                           size_t trials, double delta, const Family& f,
                                           const std::vector<uint8_t>& master_seed,
                                           uint64_t oracle_budget);

}  // namespace oblab
