#pragma once

#include <initializer_list>

#include "dlchess/bitboard.hpp"

/// Bitboard of the listed squares.
inline dlchess::Bitboard set_of(std::initializer_list<dlchess::Square> squares) {
    dlchess::Bitboard b = 0;
    for (auto s : squares) b |= s.bitboard();
    return b;
}
