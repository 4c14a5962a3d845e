#include "oblab/pprf.hpp"

#include "oblab/drbg.hpp"
#include "oblab/errors.hpp"

namespace oblab {

namespace {

Seed truncate32(const std::array<uint8_t, 32>& digest) {
    Seed s;
    for (size_t i = 0; i < kSeedBytes; ++i) s.bytes[i] = digest[i];
    return s;
}

BitVec leaf_output(const Seed& leaf, uint8_t out_bits) {
    BitVec out(out_bits);
    for (uint8_t i = 0; i < out_bits; ++i) {
        out.set(i, (leaf.bytes[i / 8] >> (7 - (i % 8))) & 1u);
    }
    return out;
}

void check_point_width(size_t got, uint16_t want, const char* who) {
    if (got != want)
        throw WidthError(std::string(who) + ": point width " + std::to_string(got) +
                         " != domain_bits " + std::to_string(want));
}

}  // namespace

std::pair<Seed, Seed> prg(const Seed& s) {
    std::array<uint8_t, kSeedBytes + 1> msg{};
    for (size_t i = 0; i < kSeedBytes; ++i) msg[i] = s.bytes[i];
    msg[kSeedBytes] = 0x00;
    const Seed left = truncate32(sha256(msg.data(), msg.size()));
    msg[kSeedBytes] = 0x01;
    const Seed right = truncate32(sha256(msg.data(), msg.size()));
    return {left, right};
}

GgmKey keygen(const std::vector<uint8_t>& rng_seed, uint16_t domain_bits, uint8_t out_bits) {
    if (domain_bits == 0 || domain_bits > 64)
        throw ParamError("keygen: domain_bits must be in [1, 64]");
    if (out_bits == 0 || out_bits > 8 * kSeedBytes)
        throw ParamError("keygen: out_bits must be in [1, 128]");
    GgmKey k;
    k.domain_bits = domain_bits;
    k.out_bits = out_bits;
    Drbg d(rng_seed, 0);
    const auto root = d.bytes(kSeedBytes);
    for (size_t i = 0; i < kSeedBytes; ++i) k.root.bytes[i] = root[i];
    return k;
}

BitVec prf_eval(const GgmKey& k, const BitVec& x) {
    check_point_width(x.size(), k.domain_bits, "prf_eval");
    Seed node = k.root;
    for (size_t i = 0; i < x.size(); ++i) {
        auto [l, r] = prg(node);
        node = x[i] ? r : l;
    }
    return leaf_output(node, k.out_bits);
}

uint64_t prf_eval_u64(const GgmKey& k, uint64_t point) {
    return prf_eval(k, BitVec::from_u64(point, k.domain_bits)).to_u64();
}

PuncturedKey puncture(const GgmKey& k, const BitVec& point) {
    check_point_width(point.size(), k.domain_bits, "puncture");
    PuncturedKey pk;
    pk.point = point;
    pk.domain_bits = k.domain_bits;
    pk.out_bits = k.out_bits;
    pk.copath.reserve(k.domain_bits);
    Seed node = k.root;
    for (size_t i = 0; i < point.size(); ++i) {
        auto [l, r] = prg(node);
        pk.copath.push_back(point[i] ? l : r);
        node = point[i] ? r : l;
    }
    return pk;
}

BitVec punctured_eval(const PuncturedKey& pk, const BitVec& x) {
    check_point_width(x.size(), pk.domain_bits, "punctured_eval");
    size_t diff = pk.domain_bits;
    for (size_t i = 0; i < x.size(); ++i) {
        if (x[i] != pk.point[i]) {
            diff = i;
            break;
        }
    }
    if (diff == pk.domain_bits)
        throw PuncturedPointError("punctured_eval: x equals the punctured point");
    Seed node = pk.copath[diff];
    for (size_t i = diff + 1; i < x.size(); ++i) {
        auto [l, r] = prg(node);
        node = x[i] ? r : l;
    }
    return leaf_output(node, pk.out_bits);
}

uint64_t punctured_eval_u64(const PuncturedKey& pk, uint64_t point) {
    return punctured_eval(pk, BitVec::from_u64(point, pk.domain_bits)).to_u64();
}

std::vector<Seed> expand_leaves(const Seed& root, uint16_t depth) {
    if (depth > 24) throw BudgetError("expand_leaves: depth over 24");
    std::vector<Seed> level{root};
    for (uint16_t d = 0; d < depth; ++d) {
        std::vector<Seed> next(level.size() * 2);
        for (size_t i = 0; i < level.size(); ++i) {
            auto [l, r] = prg(level[i]);
            next[2 * i] = l;
            next[2 * i + 1] = r;
        }
        level = std::move(next);
    }
    return level;
}

std::vector<Seed> punctured_expand_leaves(const PuncturedKey& pk) {
    if (pk.domain_bits > 24) throw BudgetError("punctured_expand_leaves: depth over 24");
    std::vector<Seed> leaves(size_t{1} << pk.domain_bits);
    uint64_t prefix = 0;  // path bits consumed so far
    for (size_t d = 0; d < pk.domain_bits; ++d) {
        const uint8_t bit = pk.point[d];
        const uint64_t sibling_prefix = (prefix << 1) | (bit ^ 1u);
        const uint16_t sub_depth = static_cast<uint16_t>(pk.domain_bits - d - 1);
        const auto sub = expand_leaves(pk.copath[d], sub_depth);
        const uint64_t base = sibling_prefix << sub_depth;
        for (size_t i = 0; i < sub.size(); ++i) leaves[base + i] = sub[i];
        prefix = (prefix << 1) | bit;
    }
    return leaves;
}

std::vector<uint8_t> serialize_key(const GgmKey& k) {
    std::vector<uint8_t> out;
    out.push_back(1);
    put_u16(out, k.domain_bits);
    out.push_back(k.out_bits);
    out.insert(out.end(), k.root.bytes.begin(), k.root.bytes.end());
    return out;
}

GgmKey parse_key(const std::vector<uint8_t>& bytes) {
    if (bytes.size() != 1 + 2 + 1 + kSeedBytes || bytes[0] != 1)
        throw ParamError("parse_key: not a serialized PRF key");
    GgmKey k;
    k.domain_bits = get_u16(bytes, 1);
    k.out_bits = bytes[3];
    for (size_t i = 0; i < kSeedBytes; ++i) k.root.bytes[i] = bytes[4 + i];
    return k;
}

std::vector<uint8_t> serialize_punctured_key(const PuncturedKey& pk) {
    std::vector<uint8_t> out;
    out.push_back(2);
    put_u16(out, pk.domain_bits);
    out.push_back(pk.out_bits);
    const auto point = pk.point.to_packed();
    out.insert(out.end(), point.begin(), point.end());
    for (const Seed& s : pk.copath) out.insert(out.end(), s.bytes.begin(), s.bytes.end());
    return out;
}

PuncturedKey parse_punctured_key(const std::vector<uint8_t>& bytes) {
    if (bytes.size() < 4 || bytes[0] != 2)
        throw ParamError("parse_punctured_key: not a serialized punctured key");
    PuncturedKey pk;
    pk.domain_bits = get_u16(bytes, 1);
    pk.out_bits = bytes[3];
    const size_t point_bytes = (pk.domain_bits + 7) / 8;
    const size_t want = 4 + point_bytes + size_t{pk.domain_bits} * kSeedBytes;
    if (bytes.size() != want)
        throw ParamError("parse_punctured_key: truncated or oversized buffer");
    const std::vector<uint8_t> packed(bytes.begin() + 4, bytes.begin() + 4 + point_bytes);
    pk.point = BitVec::from_packed(packed, pk.domain_bits);
    pk.copath.resize(pk.domain_bits);
    size_t at = 4 + point_bytes;
    for (auto& s : pk.copath) {
        for (size_t i = 0; i < kSeedBytes; ++i) s.bytes[i] = bytes[at + i];
        at += kSeedBytes;
    }
    return pk;
}

}  // namespace oblab
