#include "oblab/family.hpp"

#include "oblab/drbg.hpp"
#include "oblab/errors.hpp"
#include "oblab/member_circuit.hpp"
#include "oblab/parallel.hpp"
#include "oblab/we.hpp"

namespace oblab {

Family::Family(FamilyParams p, uint64_t table_budget_bits)
    : p_(std::move(p)), table_budget_(table_budget_bits) {
    p_.validate();
    for (uint32_t i = 0; i < p_.probe_count; ++i) probe_pos_[p_.probe_points[i]] = i;
}

void Family::check_table_budget(uint64_t rows, uint64_t row_bits) const {
    if (rows > table_budget_ / (row_bits ? row_bits : 1))
        throw BudgetError("table of " + std::to_string(rows) + " rows x " +
                          std::to_string(row_bits) + " bits exceeds the budget of " +
                          std::to_string(table_budget_) + " bits");
}

Circuit Family::member_circuit(uint64_t key) const { return build_member_circuit(key, p_); }

const std::vector<uint64_t>& Family::member_values_table() const {
    {
        std::lock_guard<std::mutex> lock(mu_);
        if (member_values_) return *member_values_;
    }
    const uint64_t keys = uint64_t{1} << p_.key_bits;
    auto table = std::make_shared<std::vector<uint64_t>>(keys);
    parallel_for(0, keys, [&](size_t key) {
        const Circuit c = build_member_circuit(key, p_);
        (*table)[key] = eval_on_set(c, p_.probe_points).to_u64();
    });
    std::lock_guard<std::mutex> lock(mu_);
    if (!member_values_) member_values_ = std::move(table);
    return *member_values_;
}

uint64_t Family::member_values(uint64_t key) const { return member_values_table()[key]; }

uint64_t Family::encoding_values_uncached(uint64_t w) const {
    const Circuit c = decode_index(w, p_);
    return eval_on_set(c, p_.probe_points).to_u64();
}

const std::vector<uint64_t>& Family::encoding_values() const {
    check_table_budget(encoding_count(), 64);
    {
        std::lock_guard<std::mutex> lock(mu_);
        if (encoding_values_) return *encoding_values_;
    }
    const auto& members = member_values_table();
    const uint64_t total = encoding_count();
    const uint64_t quarter = total >> 2;
    const uint64_t member_block = quarter >> p_.key_bits;  // encodings per key
    auto table = std::make_shared<std::vector<uint64_t>>(total);

    // Member mode: all encodings sharing a key share its values.
    parallel_for(0, size_t{1} << p_.key_bits, [&](size_t key) {
        const uint64_t v = members[key];
        const uint64_t base = key * member_block;
        for (uint64_t i = 0; i < member_block; ++i) (*table)[base + i] = v;
    });
    // Generic mode: per-encoding decode.
    parallel_for(quarter, 2 * quarter, [&](size_t w) {
        (*table)[w] = encoding_values_uncached(w);
    });
    // Reserved modes decode to the constant-0 circuit.
    const uint64_t reserved_value = encoding_values_uncached(2 * quarter);
    parallel_for(2 * quarter, total, [&](size_t w) { (*table)[w] = reserved_value; });

    std::lock_guard<std::mutex> lock(mu_);
    if (!encoding_values_) encoding_values_ = std::move(table);
    return *encoding_values_;
}

std::optional<uint32_t> Family::probe_index(uint64_t point) const {
    const auto it = probe_pos_.find(point);
    if (it == probe_pos_.end()) return std::nullopt;
    return it->second;
}

FamilyMember sample_member(const std::vector<uint8_t>& rng_seed, const Family& f) {
    Drbg d(rng_seed, 0);
    FamilyMember m;
    m.key = d.bits(f.params().key_bits).to_u64();
    m.circuit = f.member_circuit(m.key);
    return m;
}

ReplacementValues sample_replacement(const std::vector<uint8_t>& rng_seed, const Family& f) {
    Drbg d(rng_seed, 0);
    return ReplacementValues{d.bits(f.params().value_bits())};
}

OracleHandle::OracleHandle(const Family& f, FamilyMember member,
                           std::optional<ReplacementValues> splice, uint64_t query_budget)
    : family_(f), member_(std::move(member)), splice_(std::move(splice)), budget_(query_budget) {
    if (splice_ && splice_->bits.size() != f.params().value_bits())
        throw WidthError("oracle: replacement values have the wrong length");
}

uint64_t OracleHandle::query(uint64_t point) {
    if (point >= (uint64_t{1} << family_.params().input_bits))
        throw WidthError("oracle: point outside the input domain");
    if (count_ >= budget_)
        throw BudgetError("oracle: query budget of " + std::to_string(budget_) + " exhausted");
    ++count_;
    if (splice_) {
        if (auto idx = family_.probe_index(point)) {
            const uint32_t lp = family_.params().output_bits;
            return splice_->bits.slice(*idx * lp, lp).to_u64();
        }
    }
    return eval_circuit_u64(member_.circuit, point);
}

OracleHandle make_oracle(const Family& f, FamilyMember member,
                         std::optional<ReplacementValues> splice, uint64_t query_budget) {
    return OracleHandle(f, std::move(member), std::move(splice), query_budget);
}

std::optional<EncodedCircuit> compressibility_check(const ReplacementValues& y, const Family& f) {
    const Membership result = language_membership(Statement{y.bits}, f);
    return result.witness;
}

}  // namespace oblab
