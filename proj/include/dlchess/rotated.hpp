#pragma once

// Rotated-bitboard baseline.
//
// Besides the plain occupancy, three rotated copies are kept so that every
// file and diagonal occupies consecutive bits:
//   - occ90:   reflection across the a8-h1 diagonal (bit 8r+c -> bit 8c+r),
//              which turns each file into one byte;
//   - occ45ne: the A1-H8 diagonals packed h1-first, one after another;
//   - occ45nw: the A8-H1 diagonals packed a1-first, one after another.
// An attack query shifts the line down, masks it to its length, indexes a
// shared 8 x 256 first-rank attack array, then maps the attacked line
// positions back to board squares.

#include <array>
#include <cstdint>
#include <vector>

#include "dlchess/bitboard.hpp"
#include "dlchess/lines.hpp"

namespace dlchess {

/// Target bit index for each board square.
using RotationMap = std::array<std::uint8_t, 64>;

struct LineGeometry {
    std::uint8_t shift = 0;     // first bit of the line in its board
    std::uint8_t length = 0;    // 1..8
    std::uint8_t position = 0;  // index of the square within the line
    std::uint8_t line = 0;      // which line of its family
    std::uint8_t mask = 0;      // (1 << length) - 1
};

struct RotationMaps {
    RotationMap r90{};
    RotationMap r45ne{};
    RotationMap r45nw{};
    std::array<LineGeometry, 64> rank_line{};
    std::array<LineGeometry, 64> file_line{};  // within occ90
    std::array<LineGeometry, 64> ne_line{};    // within occ45ne
    std::array<LineGeometry, 64> nw_line{};    // within occ45nw
};

namespace detail {

inline void pack_lines(const std::vector<SquareLine>& line_list, RotationMap& map, std::array<LineGeometry, 64>& geometry) {
    int offset = 0;
    for (std::size_t l = 0; l < line_list.size(); ++l) {
        const auto& line = line_list[l];
        const int len = static_cast<int>(line.size());
        for (int pos = 0; pos < len; ++pos) {
            const int s = bit_to_index(line[pos]).index();
            map[s] = static_cast<std::uint8_t>(offset + pos);
            geometry[s] = {static_cast<std::uint8_t>(offset), static_cast<std::uint8_t>(len), static_cast<std::uint8_t>(pos),
                           static_cast<std::uint8_t>(l), static_cast<std::uint8_t>((1u << len) - 1)};
        }
        offset += len;
    }
}

}  // namespace detail

inline RotationMaps build_rotation_maps() {
    RotationMaps m;
    for (int s = 0; s < 64; ++s) {
        const int row = s / 8;
        const int col = s % 8;
        m.r90[s] = static_cast<std::uint8_t>(8 * col + row);
        m.rank_line[s] = {static_cast<std::uint8_t>(8 * row), 8, static_cast<std::uint8_t>(col), static_cast<std::uint8_t>(row), 0xFF};
        m.file_line[s] = {static_cast<std::uint8_t>(8 * col), 8, static_cast<std::uint8_t>(row), static_cast<std::uint8_t>(col), 0xFF};
    }
    detail::pack_lines(lines::diagonals_ne(), m.r45ne, m.ne_line);
    detail::pack_lines(lines::diagonals_nw(), m.r45nw, m.nw_line);
    return m;
}

inline Bitboard rotate_occupancy(Bitboard occ, const RotationMap& map) {
    Bitboard out = 0;
    for_each_square(occ, [&](Square s) { out |= Bitboard{1} << map[s.index()]; });
    return out;
}

struct RotatedState {
    Bitboard occ = 0;
    Bitboard occ90 = 0;
    Bitboard occ45ne = 0;
    Bitboard occ45nw = 0;

    friend bool operator==(const RotatedState&, const RotatedState&) = default;
};

inline RotatedState make_rotated_state(Bitboard occ, const RotationMaps& maps) {
    return {occ, rotate_occupancy(occ, maps.r90), rotate_occupancy(occ, maps.r45ne), rotate_occupancy(occ, maps.r45nw)};
}

/// Flips `s` in the plain board and its image in every rotated board.
inline RotatedState toggle_square(RotatedState state, const RotationMaps& maps, Square s) {
    const int i = s.index();
    state.occ ^= s.bitboard();
    state.occ90 ^= Bitboard{1} << maps.r90[i];
    state.occ45ne ^= Bitboard{1} << maps.r45ne[i];
    state.occ45nw ^= Bitboard{1} << maps.r45nw[i];
    return state;
}

/// firstRankAttacks[position][occupancy byte]: attacked positions along an
/// 8-square line. Shorter lines zero-pad their byte above their length.
struct LineAttackArrays {
    std::array<std::array<std::uint8_t, 256>, 8> first_rank{};
};

inline LineAttackArrays build_line_attack_arrays() {
    LineAttackArrays a;
    for (int pos = 0; pos < 8; ++pos) {
        for (int occ = 0; occ < 256; ++occ) {
            unsigned attacks = 0;
            for (int p = pos + 1; p < 8; ++p) {
                attacks |= 1u << p;
                if (occ & (1 << p)) break;
            }
            for (int p = pos - 1; p >= 0; --p) {
                attacks |= 1u << p;
                if (occ & (1 << p)) break;
            }
            a.first_rank[pos][occ] = static_cast<std::uint8_t>(attacks);
        }
    }
    return a;
}

/// Everything the rotated backend needs: maps, the shared attack array and,
/// per line, the byte-to-board expansion used to map results back.
struct RotatedTables {
    RotationMaps maps;
    LineAttackArrays arrays;
    std::array<std::array<Bitboard, 256>, 8> file_expand{};
    std::array<std::array<Bitboard, 256>, 15> ne_expand{};
    std::array<std::array<Bitboard, 256>, 15> nw_expand{};
};

namespace detail {

template <std::size_t N>
void fill_expand(std::array<std::array<Bitboard, 256>, N>& expand, const std::vector<SquareLine>& line_list) {
    for (std::size_t l = 0; l < N; ++l) {
        const auto& line = line_list[l];
        for (unsigned byte = 0; byte < 256; ++byte) {
            Bitboard b = 0;
            for (std::size_t k = 0; k < line.size(); ++k) {
                if (byte & (1u << k)) b |= line[k];
            }
            expand[l][byte] = b;
        }
    }
}

}  // namespace detail

inline RotatedTables build_rotated_tables() {
    RotatedTables t;
    t.maps = build_rotation_maps();
    t.arrays = build_line_attack_arrays();
    // The occ90 byte of column c lists that column from the first rank up.
    std::vector<SquareLine> columns;
    for (int col = 0; col < 8; ++col) {
        SquareLine line;
        for (int row = 0; row < 8; ++row) line.push_back(Bitboard{1} << (8 * row + col));
        columns.push_back(std::move(line));
    }
    detail::fill_expand(t.file_expand, columns);
    detail::fill_expand(t.ne_expand, lines::diagonals_ne());
    detail::fill_expand(t.nw_expand, lines::diagonals_nw());
    return t;
}

namespace detail {

inline unsigned line_attacks(const RotatedTables& t, Bitboard board, const LineGeometry& g) {
    const unsigned byte = static_cast<unsigned>(board >> g.shift) & g.mask;
    return t.arrays.first_rank[g.position][byte] & g.mask;
}

}  // namespace detail

inline Bitboard rook_attacks_rotated(const RotatedState& state, const RotatedTables& t, Square s) {
    const int i = s.index();
    const LineGeometry& rank = t.maps.rank_line[i];
    const LineGeometry& file = t.maps.file_line[i];
    return (Bitboard{detail::line_attacks(t, state.occ, rank)} << rank.shift) |
           t.file_expand[file.line][detail::line_attacks(t, state.occ90, file)];
}

inline Bitboard bishop_attacks_rotated(const RotatedState& state, const RotatedTables& t, Square s) {
    const int i = s.index();
    const LineGeometry& ne = t.maps.ne_line[i];
    const LineGeometry& nw = t.maps.nw_line[i];
    return t.ne_expand[ne.line][detail::line_attacks(t, state.occ45ne, ne)] |
           t.nw_expand[nw.line][detail::line_attacks(t, state.occ45nw, nw)];
}

inline Bitboard queen_attacks_rotated(const RotatedState& state, const RotatedTables& t, Square s) {
    return rook_attacks_rotated(state, t, s) | bishop_attacks_rotated(state, t, s);
}

}  // namespace dlchess
