#pragma once

// Pseudo-legal move generation, copy-make and perft, parameterized by the
// sliding-attack backend. The two backends differ only in how rook and
// bishop attacks are produced; everything else is shared.

#include <algorithm>
#include <array>
#include <concepts>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

#include "dlchess/bitboard.hpp"
#include "dlchess/direct_tables.hpp"
#include "dlchess/position.hpp"
#include "dlchess/rotated.hpp"

namespace dlchess {

enum class MoveKind : std::uint8_t { Quiet, Capture, DoublePush, EnPassant, Castle, Promotion, PromotionCapture };

struct Move {
    Square from;
    Square to;
    MoveKind kind = MoveKind::Quiet;
    PieceType moved = PieceType::Pawn;
    PieceType promotion = PieceType::Pawn;  // meaningful for promotions only

    bool is_capture() const {
        return kind == MoveKind::Capture || kind == MoveKind::EnPassant || kind == MoveKind::PromotionCapture;
    }
    bool is_promotion() const { return kind == MoveKind::Promotion || kind == MoveKind::PromotionCapture; }

    std::string uci() const {
        std::string s = from.name() + to.name();
        if (is_promotion()) s += "pnbrqk"[static_cast<int>(promotion)];
        return s;
    }

    friend auto operator<=>(const Move&, const Move&) = default;
};

class MoveList {
public:
    static constexpr std::size_t kCapacity = 320;

    void push(const Move& m) { moves_[size_++] = m; }
    void clear() { size_ = 0; }
    std::size_t size() const { return size_; }
    bool empty() const { return size_ == 0; }
    const Move& operator[](std::size_t i) const { return moves_[i]; }
    const Move* begin() const { return moves_.data(); }
    const Move* end() const { return moves_.data() + size_; }
    Move* begin() { return moves_.data(); }
    Move* end() { return moves_.data() + size_; }

private:
    std::array<Move, kCapacity> moves_;
    std::size_t size_ = 0;
};

// ---------------------------------------------------------------------------
// Leapers

struct LeaperTables {
    std::array<Bitboard, 64> knight{};
    std::array<Bitboard, 64> king{};
    std::array<std::array<Bitboard, 64>, 2> pawn{};  // squares a pawn of each color attacks
};

inline LeaperTables build_leaper_tables() {
    LeaperTables t;
    auto offsets = [](Square s, std::initializer_list<std::pair<int, int>> deltas) {
        Bitboard b = 0;
        for (auto [df, dr] : deltas) {
            const int f = s.file() + df;
            const int r = s.rank() + dr;
            if (f >= 0 && f < 8 && r >= 0 && r < 8) b |= Square::from_coords(f, r).bitboard();
        }
        return b;
    };
    for (int i = 0; i < 64; ++i) {
        const Square s{i};
        t.knight[i] = offsets(s, {{1, 2}, {2, 1}, {2, -1}, {1, -2}, {-1, -2}, {-2, -1}, {-2, 1}, {-1, 2}});
        t.king[i] = offsets(s, {{1, 1}, {1, 0}, {1, -1}, {0, -1}, {-1, -1}, {-1, 0}, {-1, 1}, {0, 1}});
        t.pawn[0][i] = offsets(s, {{-1, 1}, {1, 1}});
        t.pawn[1][i] = offsets(s, {{-1, -1}, {1, -1}});
    }
    return t;
}

inline const LeaperTables& leaper_tables() {
    static const LeaperTables tables = build_leaper_tables();
    return tables;
}

// ---------------------------------------------------------------------------
// Backends

enum class BackendKind { Direct, Rotated };

inline std::string_view backend_name(BackendKind k) { return k == BackendKind::Direct ? "direct" : "rotated"; }

inline BackendKind parse_backend(std::string_view name) {
    if (name == "direct") return BackendKind::Direct;
    if (name == "rotated") return BackendKind::Rotated;
    throw std::invalid_argument("unknown backend '" + std::string(name) + "'");
}

/// A backend turns an occupancy into a State it can answer slider queries
/// from, and keeps that State current as squares are toggled.
template <class B>
concept AttackBackend = requires(const B& b, typename B::State& st, const typename B::State& cst, Square s, Bitboard occ) {
    { b.make_state(occ) } -> std::same_as<typename B::State>;
    b.toggle(st, s);
    { b.rook(cst, s) } -> std::same_as<Bitboard>;
    { b.bishop(cst, s) } -> std::same_as<Bitboard>;
};

class DirectBackend {
public:
    using State = Bitboard;
    static constexpr BackendKind kind = BackendKind::Direct;

    explicit DirectBackend(const AttackTables& tables) : tables_(&tables) {}

    State make_state(Bitboard occ) const { return occ; }
    void toggle(State& st, Square s) const { st ^= s.bitboard(); }
    Bitboard rook(const State& occ, Square s) const { return rook_attacks(*tables_, occ, s); }
    Bitboard bishop(const State& occ, Square s) const { return bishop_attacks(*tables_, occ, s); }

private:
    const AttackTables* tables_;
};

class RotatedBackend {
public:
    using State = RotatedState;
    static constexpr BackendKind kind = BackendKind::Rotated;

    explicit RotatedBackend(const RotatedTables& tables) : tables_(&tables) {}

    State make_state(Bitboard occ) const { return make_rotated_state(occ, tables_->maps); }
    void toggle(State& st, Square s) const { st = toggle_square(st, tables_->maps, s); }
    Bitboard rook(const State& st, Square s) const { return rook_attacks_rotated(st, *tables_, s); }
    Bitboard bishop(const State& st, Square s) const { return bishop_attacks_rotated(st, *tables_, s); }

private:
    const RotatedTables* tables_;
};

/// Attacks of a sliding piece type (bishop, rook or queen) from `s`.
template <AttackBackend B>
Bitboard slider_attacks(const B& backend, const typename B::State& st, Square s, PieceType pt) {
    switch (pt) {
        case PieceType::Bishop: return backend.bishop(st, s);
        case PieceType::Rook: return backend.rook(st, s);
        case PieceType::Queen: return backend.rook(st, s) | backend.bishop(st, s);
        default: throw std::invalid_argument("not a sliding piece");
    }
}

/// Brings a backend state from `before` to `after` by toggling the changed squares.
template <AttackBackend B>
void update_state(const B& backend, typename B::State& st, Bitboard before, Bitboard after) {
    for_each_square(before ^ after, [&](Square s) { backend.toggle(st, s); });
}

// ---------------------------------------------------------------------------
// Generation

template <AttackBackend B>
bool is_attacked(const Position& pos, const B& backend, const typename B::State& st, Square s, Color by) {
    const LeaperTables& lt = leaper_tables();
    const int i = s.index();
    const Bitboard queens = pos.piece(by, PieceType::Queen);
    return (lt.pawn[static_cast<int>(~by)][i] & pos.piece(by, PieceType::Pawn)) ||
           (lt.knight[i] & pos.piece(by, PieceType::Knight)) || (lt.king[i] & pos.piece(by, PieceType::King)) ||
           (backend.bishop(st, s) & (pos.piece(by, PieceType::Bishop) | queens)) ||
           (backend.rook(st, s) & (pos.piece(by, PieceType::Rook) | queens));
}

namespace detail {

inline void push_pawn_move(MoveList& out, Square from, Square to, bool capture, Bitboard last_rank) {
    if (to.bitboard() & last_rank) {
        for (PieceType promo : {PieceType::Queen, PieceType::Rook, PieceType::Bishop, PieceType::Knight}) {
            out.push({from, to, capture ? MoveKind::PromotionCapture : MoveKind::Promotion, PieceType::Pawn, promo});
        }
    } else {
        out.push({from, to, capture ? MoveKind::Capture : MoveKind::Quiet, PieceType::Pawn});
    }
}

inline void push_targets(MoveList& out, Square from, Bitboard targets, Bitboard enemy, PieceType moved) {
    for_each_square(targets, [&](Square to) {
        out.push({from, to, (to.bitboard() & enemy) ? MoveKind::Capture : MoveKind::Quiet, moved});
    });
}

}  // namespace detail

/// Appends every pseudo-legal move for the side to move. `st` must describe
/// pos.occupied().
template <AttackBackend B>
void generate_pseudo_legal(const Position& pos, const B& backend, const typename B::State& st, MoveList& out) {
    const LeaperTables& lt = leaper_tables();
    const Color us = pos.side_to_move;
    const Color them = ~us;
    const Bitboard own = pos.color(us);
    const Bitboard enemy = pos.color(them);
    const Bitboard empty = ~(own | enemy);
    const bool white = us == Color::White;
    const Bitboard last_rank = white ? kRank1 << 56 : kRank1;
    const Bitboard double_rank = white ? kRank1 << 24 : kRank1 << 32;

    // Pawns
    const Bitboard pawns = pos.piece(us, PieceType::Pawn);
    const Bitboard single = (white ? pawns << 8 : pawns >> 8) & empty;
    const Bitboard dbl = (white ? single << 8 : single >> 8) & empty & double_rank;
    const int forward = white ? 8 : -8;
    for_each_square(single, [&](Square to) { detail::push_pawn_move(out, Square{to.index() - forward}, to, false, last_rank); });
    for_each_square(dbl, [&](Square to) {
        out.push({Square{to.index() - 2 * forward}, to, MoveKind::DoublePush, PieceType::Pawn});
    });
    for_each_square(pawns, [&](Square from) {
        for_each_square(lt.pawn[static_cast<int>(us)][from.index()] & enemy,
                        [&](Square to) { detail::push_pawn_move(out, from, to, true, last_rank); });
    });
    if (pos.ep_square) {
        const Square ep = *pos.ep_square;
        for_each_square(lt.pawn[static_cast<int>(them)][ep.index()] & pawns,
                        [&](Square from) { out.push({from, ep, MoveKind::EnPassant, PieceType::Pawn}); });
    }

    // Leapers
    for_each_square(pos.piece(us, PieceType::Knight), [&](Square from) {
        detail::push_targets(out, from, legal_targets(lt.knight[from.index()], own), enemy, PieceType::Knight);
    });
    // Sliders
    for_each_square(pos.piece(us, PieceType::Bishop), [&](Square from) {
        detail::push_targets(out, from, legal_targets(backend.bishop(st, from), own), enemy, PieceType::Bishop);
    });
    for_each_square(pos.piece(us, PieceType::Rook), [&](Square from) {
        detail::push_targets(out, from, legal_targets(backend.rook(st, from), own), enemy, PieceType::Rook);
    });
    for_each_square(pos.piece(us, PieceType::Queen), [&](Square from) {
        detail::push_targets(out, from, legal_targets(backend.rook(st, from) | backend.bishop(st, from), own), enemy,
                             PieceType::Queen);
    });

    if (!pos.has_king(us)) return;
    const Square king = pos.king_square(us);
    detail::push_targets(out, king, legal_targets(lt.king[king.index()], own), enemy, PieceType::King);


    // Castling: path empty, king not in check and not passing an attacked square.
    using namespace squares;
    const std::uint8_t rights = pos.castling_rights & (white ? castling::kWhiteKing | castling::kWhiteQueen
                                                             : castling::kBlackKing | castling::kBlackQueen);
    if (rights && !is_attacked(pos, backend, st, king, them)) {
        const Bitboard occ = own | enemy;
        const std::uint8_t king_side = white ? castling::kWhiteKing : castling::kBlackKing;
        const Square f = white ? f1 : f8, g = white ? g1 : g8;
        const Square d = white ? d1 : d8, c = white ? c1 : c8, b = white ? b1 : b8;
        if ((rights & king_side) && !(occ & (f.bitboard() | g.bitboard())) && !is_attacked(pos, backend, st, f, them) &&
            !is_attacked(pos, backend, st, g, them)) {
            out.push({king, g, MoveKind::Castle, PieceType::King});
        }
        if ((rights & ~king_side) && !(occ & (d.bitboard() | c.bitboard() | b.bitboard())) &&
            !is_attacked(pos, backend, st, d, them) && !is_attacked(pos, backend, st, c, them)) {
            out.push({king, c, MoveKind::Castle, PieceType::King});
        }
    }
}

template <AttackBackend B>
MoveList generate_pseudo_legal(const Position& pos, const B& backend) {
    MoveList out;
    generate_pseudo_legal(pos, backend, backend.make_state(pos.occupied()), out);
    return out;
}

// ---------------------------------------------------------------------------
// Copy-make

namespace detail {

inline std::uint8_t rights_lost(Square s) {
    using namespace squares;
    if (s == e1) return castling::kWhiteKing | castling::kWhiteQueen;
    if (s == h1) return castling::kWhiteKing;
    if (s == a1) return castling::kWhiteQueen;
    if (s == e8) return castling::kBlackKing | castling::kBlackQueen;
    if (s == h8) return castling::kBlackKing;
    if (s == a8) return castling::kBlackQueen;
    return 0;
}

}  // namespace detail

/// Returns the position after `m`, which must be pseudo-legal in `pos`.
inline Position make_move(const Position& pos, const Move& m) {
    Position next = pos;
    const Color us = pos.side_to_move;
    const Color them = ~us;
    const Bitboard from_bb = m.from.bitboard();
    const Bitboard to_bb = m.to.bitboard();

    if (m.kind == MoveKind::Capture || m.kind == MoveKind::PromotionCapture) {
        for (int pt = 0; pt < kPieceTypes; ++pt) next.piece(them, static_cast<PieceType>(pt)) &= ~to_bb;
    }
    next.piece(us, m.moved) &= ~from_bb;
    next.piece(us, m.is_promotion() ? m.promotion : m.moved) |= to_bb;

    if (m.kind == MoveKind::EnPassant) {
        const int behind = us == Color::White ? -8 : 8;
        next.piece(them, PieceType::Pawn) &= ~Square{m.to.index() + behind}.bitboard();
    } else if (m.kind == MoveKind::Castle) {
        using namespace squares;
        const bool king_side = m.to == g1 || m.to == g8;
        const Square rook_from = us == Color::White ? (king_side ? h1 : a1) : (king_side ? h8 : a8);
        const Square rook_to = us == Color::White ? (king_side ? f1 : d1) : (king_side ? f8 : d8);
        next.piece(us, PieceType::Rook) ^= rook_from.bitboard() | rook_to.bitboard();
    }

    next.castling_rights &= static_cast<std::uint8_t>(~(detail::rights_lost(m.from) | detail::rights_lost(m.to)));
    next.ep_square = std::nullopt;
    if (m.kind == MoveKind::DoublePush) next.ep_square = Square{(m.from.index() + m.to.index()) / 2};
    next.halfmove_clock = (m.moved == PieceType::Pawn || m.is_capture()) ? 0 : pos.halfmove_clock + 1;
    if (us == Color::Black) ++next.fullmove_number;
    next.side_to_move = them;
    return next;
}

/// True when the side that just moved did not leave its king attacked.
template <AttackBackend B>
bool leaves_king_safe(const Position& after, const B& backend, const typename B::State& st) {
    const Color mover = ~after.side_to_move;
    if (!after.has_king(mover)) return true;
    return !is_attacked(after, backend, st, after.king_square(mover), after.side_to_move);
}

template <AttackBackend B>
MoveList generate_legal(const Position& pos, const B& backend) {
    const auto st = backend.make_state(pos.occupied());
    MoveList pseudo;
    generate_pseudo_legal(pos, backend, st, pseudo);
    MoveList legal;
    for (const Move& m : pseudo) {
        const Position next = make_move(pos, m);
        auto child = st;
        update_state(backend, child, pos.occupied(), next.occupied());
        if (leaves_king_safe(next, backend, child)) legal.push(m);
    }
    return legal;
}

namespace detail {

template <AttackBackend B>
std::uint64_t perft_node(const Position& pos, const B& backend, const typename B::State& st, int depth) {
    MoveList moves;
    generate_pseudo_legal(pos, backend, st, moves);
    std::uint64_t nodes = 0;
    const Bitboard occ = pos.occupied();
    for (const Move& m : moves) {
        const Position next = make_move(pos, m);
        auto child = st;
        update_state(backend, child, occ, next.occupied());
        if (!leaves_king_safe(next, backend, child)) continue;
        nodes += depth == 1 ? 1 : perft_node(next, backend, child, depth - 1);
    }
    return nodes;
}

}  // namespace detail

/// Leaf count of the legal move tree to `depth`.
template <AttackBackend B>
std::uint64_t perft(const Position& pos, int depth, const B& backend) {
    if (depth < 0) throw std::invalid_argument("perft depth must be >= 0");
    if (depth == 0) return 1;
    return detail::perft_node(pos, backend, backend.make_state(pos.occupied()), depth);
}

}  // namespace dlchess
