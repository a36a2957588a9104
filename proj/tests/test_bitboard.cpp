#include <catch_amalgamated.hpp>

#include <random>

#include "dlchess/bitboard.hpp"

using namespace dlchess;
using namespace dlchess::squares;

TEST_CASE("square values follow the h1 = bit 0 convention", "[bitboard]") {
    CHECK(square_bitboard(h1) == 1);
    CHECK(square_bitboard(a1) == 128);
    CHECK(square_bitboard(h8) == 72057594037927936ULL);
    CHECK(square_bitboard(a8) == 9223372036854775808ULL);
    CHECK(c4.name() == "c4");
    CHECK(Square::from_name("c4") == c4);
    CHECK(c4.file() == 2);
    CHECK(c4.rank() == 3);
    CHECK_THROWS_AS(Square::from_name("i9"), std::invalid_argument);
}

TEST_CASE("lsb and clear_lsb", "[bitboard]") {
    CHECK(lsb(0b1100) == 0b0100);
    CHECK(lsb(1) == 1);
    CHECK(lsb(Bitboard{1} << 63) == Bitboard{1} << 63);

    CHECK(clear_lsb(0b1100) == 0b1000);
    CHECK(clear_lsb(1) == 0);
    CHECK(clear_lsb((Bitboard{1} << 56) | (Bitboard{1} << 63)) == Bitboard{1} << 63);

    CHECK_THROWS_WITH(lsb(0), "empty bitboard");
    CHECK_THROWS_WITH(clear_lsb(0), "empty bitboard");
}

TEST_CASE("bit_to_index", "[bitboard]") {
    CHECK(bit_to_index(128) == a1);
    CHECK(bit_to_index(128).index() == 7);
    CHECK(bit_to_index(1).index() == 0);
    CHECK(bit_to_index(Bitboard{1} << 56).index() == 56);
    CHECK_THROWS_AS(bit_to_index(0), std::invalid_argument);
    CHECK_THROWS_AS(bit_to_index(3), std::invalid_argument);
}

TEST_CASE("square round trip over all 64 squares", "[bitboard][property]") {
    for (int i = 0; i < 64; ++i) {
        const Square s{i};
        CHECK(popcount(square_bitboard(s)) == 1);
        CHECK(bit_to_index(square_bitboard(s)) == s);
        CHECK(Square::from_name(s.name()) == s);
        CHECK(Square::from_coords(s.file(), s.rank()) == s);
    }
}

TEST_CASE("lsb | clear_lsb partitions any nonzero bitboard", "[bitboard][property]") {
    std::mt19937_64 rng(42);
    for (int i = 0; i < 10000; ++i) {
        Bitboard b = rng() >> (rng() % 64);
        if (b == 0) b = 1;
        REQUIRE((clear_lsb(b) | lsb(b)) == b);
        REQUIRE((clear_lsb(b) & lsb(b)) == 0);
        REQUIRE(popcount(clear_lsb(b)) == popcount(b) - 1);
    }
}
