#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace oblab {

// Bit string with one logical bit per element, most-significant-first in all
// integer and byte-packing conversions. This is the working currency for PRF
// points, circuit inputs, statements and encodings; sizes are desk-scale so
// clarity beats packing.
class BitVec {
  public:
    BitVec() = default;
    explicit BitVec(size_t n, uint8_t fill = 0) : bits_(n, fill ? 1 : 0) {}

    static BitVec from_u64(uint64_t value, size_t width);
    static BitVec from_string(const std::string& zeros_and_ones);
    // Unpacks `nbits` bits from a byte buffer, MSB of byte 0 first.
    static BitVec from_packed(const std::vector<uint8_t>& bytes, size_t nbits);

    size_t size() const { return bits_.size(); }
    bool empty() const { return bits_.empty(); }
    uint8_t operator[](size_t i) const { return bits_[i]; }
    void set(size_t i, uint8_t v) { bits_[i] = v ? 1 : 0; }
    void push_back(uint8_t v) { bits_.push_back(v ? 1 : 0); }
    void append(const BitVec& other);
    BitVec slice(size_t from, size_t len) const;

    // Interprets the whole vector as an MSB-first integer; requires size <= 64.
    uint64_t to_u64() const;
    // Packs MSB-first into bytes, zero-padding the final byte's low bits.
    std::vector<uint8_t> to_packed() const;
    std::string to_string() const;

    bool operator==(const BitVec&) const = default;

  private:
    std::vector<uint8_t> bits_;
};

// Big-endian integer append helpers shared by the serialization formats.
void put_u16(std::vector<uint8_t>& out, uint16_t v);
void put_u32(std::vector<uint8_t>& out, uint32_t v);
uint16_t get_u16(const std::vector<uint8_t>& in, size_t at);
uint32_t get_u32(const std::vector<uint8_t>& in, size_t at);

std::string to_hex(const std::vector<uint8_t>& bytes);
std::vector<uint8_t> from_hex(const std::string& hex);

}  // namespace oblab
