#include <catch_amalgamated.hpp>

#include <random>

#include "dlchess/oracle.hpp"
#include "square_set.hpp"

using namespace dlchess;
using namespace dlchess::squares;

TEST_CASE("ray_attacks examples", "[oracle]") {
    CHECK(oracle::bishop_attacks(0, c4) == set_of({a2, b3, d5, e6, f7, g8, f1, e2, d3, b5, a6}));
    CHECK(popcount(oracle::bishop_attacks(0, c4)) == 11);
    CHECK(oracle::rook_attacks(set_of({f1, h3}), h1) == set_of({g1, f1, h2, h3}));
    CHECK(oracle::queen_attacks(kFull, e4) == set_of({d3, d4, d5, e3, e5, f3, f4, f5}));
    CHECK(oracle::queen_attacks(kFull, h1) == set_of({g1, h2, g2}));
    CHECK(oracle::rook_attacks(kFull, a8) == set_of({b8, a7}));
}

TEST_CASE("ray_attacks never contains the origin", "[oracle][property]") {
    std::mt19937_64 rng(1);
    for (int i = 0; i < 5000; ++i) {
        const Bitboard occ = rng() & rng();
        const Square s{static_cast<int>(rng() % 64)};
        REQUIRE((oracle::queen_attacks(occ, s) & s.bitboard()) == 0);
    }
}

TEST_CASE("mutual visibility on open lines", "[oracle][property]") {
    std::mt19937_64 rng(2);
    for (int i = 0; i < 2000; ++i) {
        const Bitboard occ = rng() & rng() & rng();
        const Square s{static_cast<int>(rng() % 64)};
        for_each_square(oracle::queen_attacks(occ, s), [&](Square q) {
            // The segment strictly between s and q is empty (q is the first hit on its ray), so s sees q and q sees s.
            REQUIRE((oracle::queen_attacks(occ, q) & s.bitboard()) != 0);
        });
    }
}

TEST_CASE("adding blockers only removes squares or adds the new blocker", "[oracle][property]") {
    std::mt19937_64 rng(3);
    for (int i = 0; i < 5000; ++i) {
        const Bitboard occ = rng() & rng();
        const Bitboard more = occ | (rng() & rng() & rng());
        const Square s{static_cast<int>(rng() % 64)};
        const Bitboard before = oracle::queen_attacks(occ, s);
        const Bitboard after = oracle::queen_attacks(more, s);
        REQUIRE((after & ~(before | (more & ~occ))) == 0);
    }
}
