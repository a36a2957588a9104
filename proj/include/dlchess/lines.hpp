#pragma once

// Square lists for every rank, file and diagonal, in walk order. The table
// builders and the rotated layouts both consume these orderings.

#include <initializer_list>
#include <vector>

#include "dlchess/bitboard.hpp"

namespace dlchess {

/// Square bitboards of one line, in walk order.
using SquareLine = std::vector<Bitboard>;

namespace lines {

inline SquareLine line_of(std::initializer_list<Square> squares) {
    SquareLine out;
    for (Square s : squares) out.push_back(s.bitboard());
    return out;
}

/// A1-H8 direction diagonals, h1 first.
inline std::vector<SquareLine> diagonals_ne() {
    using namespace squares;
    return {line_of({h1}),
            line_of({h2, g1}),
            line_of({h3, g2, f1}),
            line_of({h4, g3, f2, e1}),
            line_of({h5, g4, f3, e2, d1}),
            line_of({h6, g5, f4, e3, d2, c1}),
            line_of({h7, g6, f5, e4, d3, c2, b1}),
            line_of({h8, g7, f6, e5, d4, c3, b2, a1}),
            line_of({g8, f7, e6, d5, c4, b3, a2}),
            line_of({f8, e7, d6, c5, b4, a3}),
            line_of({e8, d7, c6, b5, a4}),
            line_of({d8, c7, b6, a5}),
            line_of({c8, b7, a6}),
            line_of({b8, a7}),
            line_of({a8})};
}

/// A8-H1 direction diagonals, a1 first.
inline std::vector<SquareLine> diagonals_nw() {
    using namespace squares;
    return {line_of({a1}),
            line_of({b1, a2}),
            line_of({c1, b2, a3}),
            line_of({d1, c2, b3, a4}),
            line_of({e1, d2, c3, b4, a5}),
            line_of({f1, e2, d3, c4, b5, a6}),
            line_of({g1, f2, e3, d4, c5, b6, a7}),
            line_of({h1, g2, f3, e4, d5, c6, b7, a8}),
            line_of({h2, g3, f4, e5, d6, c7, b8}),
            line_of({h3, g4, f5, e6, d7, c8}),
            line_of({h4, g5, f6, e7, d8}),
            line_of({h5, g6, f7, e8}),
            line_of({h6, g7, f8}),
            line_of({h7, g8}),
            line_of({h8})};
}

/// Ranks, each listed a-file first.
inline std::vector<SquareLine> ranks() {
    std::vector<SquareLine> out;
    for (int rank = 0; rank < 8; ++rank) {
        SquareLine line;
        for (int file = 0; file < 8; ++file) line.push_back(Square::from_coords(file, rank).bitboard());
        out.push_back(std::move(line));
    }
    return out;
}

/// Files, each listed first rank first.
inline std::vector<SquareLine> files() {
    std::vector<SquareLine> out;
    for (int file = 0; file < 8; ++file) {
        SquareLine line;
        for (int rank = 0; rank < 8; ++rank) line.push_back(Square::from_coords(file, rank).bitboard());
        out.push_back(std::move(line));
    }
    return out;
}

}  // namespace lines

}  // namespace dlchess
