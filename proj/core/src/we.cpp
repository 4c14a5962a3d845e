#include "oblab/we.hpp"

#include <algorithm>

#include "oblab/errors.hpp"
#include "oblab/parallel.hpp"

namespace oblab {

namespace {

void check_statement(const Statement& x, const Family& f) {
    if (x.values.size() != f.params().value_bits())
        throw WidthError("statement: expected " + std::to_string(f.params().value_bits()) +
                         " bits, got " + std::to_string(x.values.size()));
}

}  // namespace

Ciphertext we_encrypt(const Statement& x, uint8_t bit, const Family& f) {
    check_statement(x, f);
    const FamilyParams& p = f.params();
    f.check_table_budget(f.encoding_count(), 1);
    const uint64_t target = x.values.to_u64();
    const auto& values = f.encoding_values();
    TruthTable table = make_truth_table(p.encoding_bits, 1);
    if (bit) {
        const uint64_t total = f.encoding_count();
        for (uint64_t w = 0; w < total; ++w) {
            if (values[w] == target) table.set_row(w, 1);
        }
    }
    return Ciphertext{CanonicalCircuit(std::move(table),
                                       mux_tree_gate_count(p.encoding_bits, 1))};
}

uint8_t we_decrypt(const Ciphertext& ct, const EncodedCircuit& witness) {
    if (witness.bits.size() != ct.body.num_inputs())
        throw WidthError("we_decrypt: witness width differs from the ciphertext domain");
    return static_cast<uint8_t>(ct.body.eval(witness.index()) & 1u);
}

Membership language_membership(const Statement& x, const Family& f) {
    check_statement(x, f);
    f.check_table_budget(f.encoding_count(), 1);
    const uint64_t target = x.values.to_u64();
    const auto& values = f.encoding_values();
    const uint64_t total = f.encoding_count();

    // Partitioned scan, reduced with min so the witness is the
    // lexicographically least match no matter the thread count.
    const size_t workers = worker_count();
    const uint64_t chunk = (total + workers - 1) / workers;
    std::vector<uint64_t> first_hit(workers, total);
    parallel_for(0, workers, [&](size_t wk) {
        const uint64_t lo = wk * chunk;
        const uint64_t hi = std::min<uint64_t>(total, lo + chunk);
        for (uint64_t w = lo; w < hi; ++w) {
            if (values[w] == target) {
                first_hit[wk] = w;
                return;
            }
        }
    });
    uint64_t best = total;
    for (uint64_t h : first_hit) best = std::min(best, h);
    if (best == total) return Membership{};
    return Membership{true,
                      EncodedCircuit{BitVec::from_u64(best, f.params().encoding_bits)}};
}

std::vector<uint8_t> ciphertext_to_bytes(const Ciphertext& ct, const Statement& x) {
    std::vector<uint8_t> out;
    out.push_back(kCiphertextVersion);
    put_u32(out, static_cast<uint32_t>(x.values.size()));
    const auto packed = x.values.to_packed();
    out.insert(out.end(), packed.begin(), packed.end());
    const auto body = ct.body.canonical_bytes();
    out.insert(out.end(), body.begin(), body.end());
    return out;
}

std::pair<Ciphertext, Statement> ciphertext_from_bytes(const std::vector<uint8_t>& bytes) {
    if (bytes.size() < 5 || bytes[0] != kCiphertextVersion)
        throw ParamError("ciphertext: bad header");
    const uint32_t stmt_bits = get_u32(bytes, 1);
    const size_t stmt_bytes = (stmt_bits + 7) / 8;
    if (bytes.size() < 5 + stmt_bytes) throw ParamError("ciphertext: truncated statement");
    const std::vector<uint8_t> packed(bytes.begin() + 5, bytes.begin() + 5 + stmt_bytes);
    Statement x{BitVec::from_packed(packed, stmt_bits)};
    const std::vector<uint8_t> body(bytes.begin() + 5 + stmt_bytes, bytes.end());
    return {Ciphertext{CanonicalCircuit::from_bytes(body)}, std::move(x)};
}

}  // namespace oblab
