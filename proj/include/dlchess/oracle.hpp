#pragma once

// Brute-force ray-scan attack generator.
//
// Works on (file, rank) coordinates and shares no code with the lookup
// backends; it is the ground truth the table builders are checked against.

#include <array>
#include <span>

#include "dlchess/bitboard.hpp"

namespace dlchess::oracle {

struct Direction {
    int file_step;
    int rank_step;
};

inline constexpr std::array<Direction, 4> kRookDirections{{{1, 0}, {-1, 0}, {0, 1}, {0, -1}}};
inline constexpr std::array<Direction, 4> kBishopDirections{{{1, 1}, {-1, -1}, {1, -1}, {-1, 1}}};
inline constexpr std::array<Direction, 8> kQueenDirections{
    {{1, 0}, {-1, 0}, {0, 1}, {0, -1}, {1, 1}, {-1, -1}, {1, -1}, {-1, 1}}};

/// Walks each direction from `from`, adding squares up to and including the
/// first occupied one. `from` itself is never included.
inline Bitboard ray_attacks(Bitboard occupied, Square from, std::span<const Direction> directions) {
    Bitboard attacks = 0;
    for (const Direction d : directions) {
        int file = from.file() + d.file_step;
        int rank = from.rank() + d.rank_step;
        while (file >= 0 && file < 8 && rank >= 0 && rank < 8) {
            const Bitboard bb = Square::from_coords(file, rank).bitboard();
            attacks |= bb;
            if (occupied & bb) break;
            file += d.file_step;
            rank += d.rank_step;
        }
    }
    return attacks;
}

inline Bitboard rook_attacks(Bitboard occupied, Square s) { return ray_attacks(occupied, s, kRookDirections); }
inline Bitboard bishop_attacks(Bitboard occupied, Square s) { return ray_attacks(occupied, s, kBishopDirections); }
inline Bitboard queen_attacks(Bitboard occupied, Square s) { return ray_attacks(occupied, s, kQueenDirections); }

}  // namespace dlchess::oracle
