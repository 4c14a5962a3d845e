#include "oblab/bits.hpp"

#include <stdexcept>

#include "oblab/errors.hpp"

namespace oblab {

BitVec BitVec::from_u64(uint64_t value, size_t width) {
    if (width > 64) throw WidthError("BitVec::from_u64: width > 64");
    BitVec out(width);
    for (size_t i = 0; i < width; ++i) {
        out.bits_[i] = static_cast<uint8_t>((value >> (width - 1 - i)) & 1u);
    }
    return out;
}

BitVec BitVec::from_string(const std::string& s) {
    BitVec out;
    out.bits_.reserve(s.size());
    for (char c : s) {
        if (c == '0') {
            out.bits_.push_back(0);
        } else if (c == '1') {
            out.bits_.push_back(1);
        } else {
            throw WidthError("BitVec::from_string: character is not 0/1");
        }
    }
    return out;
}

BitVec BitVec::from_packed(const std::vector<uint8_t>& bytes, size_t nbits) {
    if (bytes.size() * 8 < nbits)
        throw WidthError("BitVec::from_packed: buffer too short");
    BitVec out(nbits);
    for (size_t i = 0; i < nbits; ++i) {
        out.bits_[i] = (bytes[i / 8] >> (7 - (i % 8))) & 1u;
    }
    return out;
}

void BitVec::append(const BitVec& other) {
    bits_.insert(bits_.end(), other.bits_.begin(), other.bits_.end());
}

BitVec BitVec::slice(size_t from, size_t len) const {
    if (from + len > bits_.size()) throw WidthError("BitVec::slice: out of range");
    BitVec out(len);
    for (size_t i = 0; i < len; ++i) out.bits_[i] = bits_[from + i];
    return out;
}

uint64_t BitVec::to_u64() const {
    if (bits_.size() > 64) throw WidthError("BitVec::to_u64: size > 64");
    uint64_t v = 0;
    for (uint8_t b : bits_) v = (v << 1) | b;
    return v;
}

std::vector<uint8_t> BitVec::to_packed() const {
    std::vector<uint8_t> out((bits_.size() + 7) / 8, 0);
    for (size_t i = 0; i < bits_.size(); ++i) {
        if (bits_[i]) out[i / 8] |= static_cast<uint8_t>(1u << (7 - (i % 8)));
    }
    return out;
}

std::string BitVec::to_string() const {
    std::string s;
    s.reserve(bits_.size());
    for (uint8_t b : bits_) s.push_back(b ? '1' : '0');
    return s;
}

void put_u16(std::vector<uint8_t>& out, uint16_t v) {
    out.push_back(static_cast<uint8_t>(v >> 8));
    out.push_back(static_cast<uint8_t>(v));
}

void put_u32(std::vector<uint8_t>& out, uint32_t v) {
    out.push_back(static_cast<uint8_t>(v >> 24));
    out.push_back(static_cast<uint8_t>(v >> 16));
    out.push_back(static_cast<uint8_t>(v >> 8));
    out.push_back(static_cast<uint8_t>(v));
}

uint16_t get_u16(const std::vector<uint8_t>& in, size_t at) {
    if (at + 2 > in.size()) throw WidthError("get_u16: buffer too short");
    return static_cast<uint16_t>((in[at] << 8) | in[at + 1]);
}

uint32_t get_u32(const std::vector<uint8_t>& in, size_t at) {
    if (at + 4 > in.size()) throw WidthError("get_u32: buffer too short");
    return (static_cast<uint32_t>(in[at]) << 24) |
           (static_cast<uint32_t>(in[at + 1]) << 16) |
           (static_cast<uint32_t>(in[at + 2]) << 8) |
           static_cast<uint32_t>(in[at + 3]);
}

std::string to_hex(const std::vector<uint8_t>& bytes) {
    static const char* digits = "0123456789abcdef";
    std::string s;
    s.reserve(bytes.size() * 2);
    for (uint8_t b : bytes) {
        s.push_back(digits[b >> 4]);
        s.push_back(digits[b & 0xF]);
    }
    return s;
}

static int hex_nibble(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
}

std::vector<uint8_t> from_hex(const std::string& hex) {
    if (hex.size() % 2 != 0) throw ParamError("from_hex: odd length");
    std::vector<uint8_t> out(hex.size() / 2);
    for (size_t i = 0; i < out.size(); ++i) {
        int hi = hex_nibble(hex[2 * i]);
        int lo = hex_nibble(hex[2 * i + 1]);
        if (hi < 0 || lo < 0) throw ParamError("from_hex: invalid digit");
        out[i] = static_cast<uint8_t>((hi << 4) | lo);
    }
    return out;
}

}  // namespace oblab
