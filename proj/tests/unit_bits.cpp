#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oblab/bits.hpp"
#include "oblab/drbg.hpp"
#include "oblab/errors.hpp"

using namespace oblab;

TEST_CASE("u64 conversions are MSB-first") {
    const BitVec v = BitVec::from_u64(0b101, 3);
    CHECK(v[0] == 1);
    CHECK(v[1] == 0);
    CHECK(v[2] == 1);
    CHECK(v.to_u64() == 5);
    CHECK(BitVec::from_u64(1, 8).to_string() == "00000001");
    CHECK_THROWS_AS(BitVec::from_u64(0, 65), WidthError);
}

TEST_CASE("string parsing") {
    CHECK(BitVec::from_string("0110").to_u64() == 6);
    CHECK_THROWS_AS(BitVec::from_string("01x"), WidthError);
}

TEST_CASE("packing round trip, MSB of byte 0 first") {
    const BitVec v = BitVec::from_string("10110011101");
    const auto packed = v.to_packed();
    REQUIRE(packed.size() == 2);
    CHECK(packed[0] == 0b10110011);
    CHECK(packed[1] == 0b10100000);  // tail zero-padded
    CHECK(BitVec::from_packed(packed, v.size()) == v);
}

TEST_CASE("packing round trip on random strings") {
    Drbg d({0x11}, 0);
    for (int i = 0; i < 200; ++i) {
        const size_t n = 1 + d.uniform(70);
        const BitVec v = d.bits(n);
        CHECK(BitVec::from_packed(v.to_packed(), n) == v);
    }
}

TEST_CASE("slice and append") {
    BitVec v = BitVec::from_string("110");
    v.append(BitVec::from_string("01"));
    CHECK(v.to_string() == "11001");
    CHECK(v.slice(1, 3).to_string() == "100");
    CHECK_THROWS_AS(v.slice(3, 4), WidthError);
}

TEST_CASE("big-endian helpers") {
    std::vector<uint8_t> buf;
    put_u16(buf, 0x0102);
    put_u32(buf, 0xA1B2C3D4);
    CHECK(buf == std::vector<uint8_t>{0x01, 0x02, 0xA1, 0xB2, 0xC3, 0xD4});
    CHECK(get_u16(buf, 0) == 0x0102);
    CHECK(get_u32(buf, 2) == 0xA1B2C3D4);
    CHECK_THROWS_AS(get_u32(buf, 3), WidthError);
}

TEST_CASE("hex round trip") {
    const std::vector<uint8_t> bytes = {0x00, 0xFF, 0x5A};
    CHECK(to_hex(bytes) == "00ff5a");
    CHECK(from_hex("00ff5a") == bytes);
    CHECK(from_hex("00FF5A") == bytes);
    CHECK_THROWS_AS(from_hex("0"), ParamError);
    CHECK_THROWS_AS(from_hex("zz"), ParamError);
}
