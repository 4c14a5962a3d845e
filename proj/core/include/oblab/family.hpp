#pragma once

#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <unordered_map>
#include <vector>

#include "oblab/bits.hpp"
#include "oblab/circuit.hpp"
#include "oblab/encoding.hpp"
#include "oblab/family_params.hpp"

namespace oblab {

struct FamilyMember {
    uint64_t key = 0;
    Circuit circuit;
};

// Uniform t*ell' bits spliced over the probe values; min-entropy is exactly
// t*ell', which params guarantee is at least m + k_stat.
struct ReplacementValues {
    BitVec bits;
    uint64_t as_u64() const { return bits.to_u64(); }
};

// Validated params plus lazily built, immutable-after-build lookup tables:
// the probe values of every member key and of every m-bit encoding. All
// tables are derived through the public decode/eval path and shared
// read-only, so the heavy 2^m work happens once per run.
class Family {
  public:
    explicit Family(FamilyParams p, uint64_t table_budget_bits = kDefaultTableBudgetBits);

    const FamilyParams& params() const { return p_; }
    uint64_t encoding_count() const { return uint64_t{1} << p_.encoding_bits; }
    uint64_t table_budget_bits() const { return table_budget_; }
    // Throws BudgetError unless rows * row_bits fits the table budget.
    void check_table_budget(uint64_t rows, uint64_t row_bits) const;

    Circuit member_circuit(uint64_t key) const;
    // C_key over the probe set, as a t*ell'-bit value.
    uint64_t member_values(uint64_t key) const;
    // decode(w) over the probe set; per-call honest path, no caches.
    uint64_t encoding_values_uncached(uint64_t w) const;
    // Table of encoding_values_uncached for every w (2^m entries).
    const std::vector<uint64_t>& encoding_values() const;

    // Position of a point in the probe set, if any.
    std::optional<uint32_t> probe_index(uint64_t point) const;

  private:
    FamilyParams p_;
    uint64_t table_budget_;
    mutable std::mutex mu_;
    mutable std::shared_ptr<const std::vector<uint64_t>> member_values_;
    mutable std::shared_ptr<const std::vector<uint64_t>> encoding_values_;
    std::unordered_map<uint64_t, uint32_t> probe_pos_;

    const std::vector<uint64_t>& member_values_table() const;
};

FamilyMember sample_member(const std::vector<uint8_t>& rng_seed, const Family& f);
ReplacementValues sample_replacement(const std::vector<uint8_t>& rng_seed, const Family& f);

// Oracle for one experiment trial: answers outside the probe set always come
// from the member; with a splice set, probe points answer from the
// replacement bits. Counts queries and throws BudgetError past the budget.
// Stateful; confine each handle to a single trial thread.
class OracleHandle {
  public:
    OracleHandle(const Family& f, FamilyMember member, std::optional<ReplacementValues> splice,
                 uint64_t query_budget);

    uint64_t query(uint64_t point);  // ell'-bit value
    uint64_t query_count() const { return count_; }
    uint64_t query_budget() const { return budget_; }

  private:
    const Family& family_;
    FamilyMember member_;
    std::optional<ReplacementValues> splice_;
    uint64_t budget_;
    uint64_t count_ = 0;
};

OracleHandle make_oracle(const Family& f, FamilyMember member,
                         std::optional<ReplacementValues> splice, uint64_t query_budget);

// Looks for an m-bit encoding matching y over the probe set; delegates to
// language membership. nullopt means y is incompressible at this size.
std::optional<EncodedCircuit> compressibility_check(const ReplacementValues& y, const Family& f);

}  // namespace oblab
