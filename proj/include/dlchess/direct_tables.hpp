#pragma once

// Direct-lookup sliding attacks.
//
// Four tables (rank, file, NE diagonal, NW diagonal) are keyed by the mover's
// square bitboard and by the raw occupancy of the line through it. A query
// masks the board occupancy with the line mask and looks the result up as-is:
//
//     rook(s)   = rank[bb(s)][occ & rank_mask[s]] | file[bb(s)][occ & file_mask[s]]
//     bishop(s) = ne[bb(s)][occ & ne_mask[s]]     | nw[bb(s)][occ & nw_mask[s]]
//
// Attack sets include the first blocker on each ray whatever its color;
// friendly pieces are removed afterwards with legal_targets().

#include <array>
#include <atomic>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "dlchess/attack_table.hpp"
#include "dlchess/bitboard.hpp"
#include "dlchess/lines.hpp"

namespace dlchess {

/// Number of table-construction calls made in this process. Lets the bench
/// harness prove that no construction happens inside a timed region.
inline std::atomic<std::uint64_t>& table_build_count() {
    static std::atomic<std::uint64_t> count{0};
    return count;
}

struct MaskTables {
    std::array<Bitboard, 64> rank{};
    std::array<Bitboard, 64> file{};
    std::array<Bitboard, 64> diag_ne{};
    std::array<Bitboard, 64> diag_nw{};

    friend bool operator==(const MaskTables&, const MaskTables&) = default;
};

namespace detail {

inline void fill_masks(std::array<Bitboard, 64>& masks, const std::vector<SquareLine>& line_list) {
    for (const SquareLine& line : line_list) {
        Bitboard all = 0;
        for (Bitboard b : line) all |= b;
        for (Bitboard b : line) masks[bit_to_index(b).index()] = all;
    }
}

}  // namespace detail

inline MaskTables build_masks() {
    MaskTables m;
    detail::fill_masks(m.rank, lines::ranks());
    detail::fill_masks(m.file, lines::files());
    detail::fill_masks(m.diag_ne, lines::diagonals_ne());
    detail::fill_masks(m.diag_nw, lines::diagonals_nw());
    return m;
}

/// Moves bit i of a first-rank byte to bit 8*i, reflecting the first rank
/// onto the h-file across the a8-h1 diagonal (g1 -> h2, f1 -> h3, ...).
constexpr Bitboard rank_to_file(Bitboard rank_byte) {
    if (rank_byte > 0xFF) throw std::invalid_argument("rank_to_file expects a first-rank byte");
    Bitboard out = 0;
    for (int i = 0; i < 8; ++i) {
        if (rank_byte & (Bitboard{1} << i)) out |= Bitboard{1} << (8 * i);
    }
    return out;
}

/// Rank table: first-rank attacks for every mover and all 256 occupancy
/// bytes, then copied to ranks 2..8 by shifting keys and values 8 bits per rank.
inline AttackTable build_rank_attacks() {
    ++table_build_count();
    AttackTable table;
    for (int i = 0; i < 8; ++i) {
        for (int r = 0; r < 8; ++r) table.add_mover(Bitboard{1} << (i + 8 * r));
        for (Bitboard occ = 0; occ < 256; ++occ) {
            Bitboard attacks = 0;
            for (int toward_h = i - 1; toward_h >= 0; --toward_h) {
                attacks |= Bitboard{1} << toward_h;
                if ((Bitboard{1} << toward_h) & occ) break;
            }
            for (int toward_a = i + 1; toward_a < 8; ++toward_a) {
                attacks |= Bitboard{1} << toward_a;
                if ((Bitboard{1} << toward_a) & occ) break;
            }
            for (int rank = 0; rank < 8; ++rank) {
                table.insert(Bitboard{1} << (i + 8 * rank), occ << (8 * rank), attacks << (8 * rank));
            }
        }
    }
    return table;
}

/// File table, derived from a complete rank table by reflecting every rank
/// entry across the a8-h1 diagonal.
inline AttackTable build_file_attacks(const AttackTable& rank_attacks) {
    if (rank_attacks.square_entry_count() != 64 * 256) throw std::invalid_argument("rank table missing");
    ++table_build_count();
    AttackTable table;
    for (int i = 0; i < 64; ++i) {
        const int r = i / 8;
        const Bitboard mover = rank_to_file((Bitboard{1} << i) >> (8 * r)) << r;
        table.add_mover(mover);
        for (Bitboard occ = 0; occ < 256; ++occ) {
            const Bitboard mirrored_occ = rank_to_file(occ) << r;
            const Bitboard value = rank_attacks.at(Bitboard{1} << i, occ << (8 * r));
            const Bitboard file_value = rank_to_file(value >> (8 * r)) << r;
            table.insert(mover, mirrored_occ, file_value);
        }
    }
    return table;
}

/// Generalized builder. Each line lists its squares in walk order; for every
/// mover on the line and every subset of the line, the attack set walks
/// forward and backward up to and including the first occupied square. The
/// subset index is turned into an occupancy bitboard by mapping its set bits
/// through the line. Also stores the base entry [0][0] = 0.
inline AttackTable build_attack_table(std::span<const SquareLine> line_list) {
    Bitboard seen = 0;
    for (const SquareLine& line : line_list) {
        if (line.empty() || line.size() > 8) throw std::invalid_argument("line length must be 1..8");
        for (Bitboard b : line) {
            if (!std::has_single_bit(b)) throw std::invalid_argument("line entries must be single-square bitboards");
            if (seen & b) throw std::invalid_argument("duplicate square " + bit_to_index(b).name() + " across lines");
            seen |= b;
        }
    }

    ++table_build_count();
    AttackTable table;
    table.insert(0, 0, 0);
    for (const SquareLine& line : line_list) {
        const int size = static_cast<int>(line.size());
        for (int pos = 0; pos < size; ++pos) {
            const Bitboard mover = line[pos];
            table.add_mover(mover);
            for (unsigned occupation = 0; occupation < (1u << size); ++occupation) {
                Bitboard attacks = 0;
                for (int next = pos + 1; next < size; ++next) {
                    attacks |= line[next];
                    if ((1u << next) & occupation) break;
                }
                for (int next = pos - 1; next >= 0; --next) {
                    attacks |= line[next];
                    if ((1u << next) & occupation) break;
                }
                Bitboard key = 0;
                Bitboard rest = occupation;
                while (rest) {
                    key |= line[bit_to_index(lsb(rest)).index()];
                    rest = clear_lsb(rest);
                }
                table.insert(mover, key, attacks);
            }
        }
    }
    return table;
}

inline AttackTable build_diag_attacks_ne() { return build_attack_table(lines::diagonals_ne()); }
inline AttackTable build_diag_attacks_nw() { return build_attack_table(lines::diagonals_nw()); }
inline AttackTable build_rank_attacks_generalized() { return build_attack_table(lines::ranks()); }
inline AttackTable build_file_attacks_generalized() { return build_attack_table(lines::files()); }

struct AttackTables {
    AttackTable rank;
    AttackTable file;
    AttackTable diag_ne;
    AttackTable diag_nw;
    MaskTables masks;

    friend bool operator==(const AttackTables&, const AttackTables&) = default;
};

inline AttackTables build_attack_tables() {
    AttackTables t;
    t.rank = build_rank_attacks();
    t.file = build_file_attacks(t.rank);
    t.diag_ne = build_diag_attacks_ne();
    t.diag_nw = build_diag_attacks_nw();
    t.masks = build_masks();
    return t;
}

inline Bitboard rook_attacks(const AttackTables& t, Bitboard occupied, Square s) {
    const int i = s.index();
    return t.rank.lookup(s, occupied & t.masks.rank[i]) | t.file.lookup(s, occupied & t.masks.file[i]);
}

inline Bitboard bishop_attacks(const AttackTables& t, Bitboard occupied, Square s) {
    const int i = s.index();
    return t.diag_ne.lookup(s, occupied & t.masks.diag_ne[i]) | t.diag_nw.lookup(s, occupied & t.masks.diag_nw[i]);
}

inline Bitboard queen_attacks(const AttackTables& t, Bitboard occupied, Square s) {
    return rook_attacks(t, occupied, s) | bishop_attacks(t, occupied, s);
}

constexpr Bitboard legal_targets(Bitboard attacks, Bitboard friendly) { return attacks & ~friendly; }

}  // namespace dlchess
