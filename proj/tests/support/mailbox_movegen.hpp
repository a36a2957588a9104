#pragma once

// Independent reference move generator for tests.
//
// Plain 8x8 character board addressed by (rank, file) with file a = 0; no
// bitboards, no shared code with the library. Used to produce the perft
// and move-list expectations the library is checked against.

#include <algorithm>
#include <array>
#include <cctype>
#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

namespace mailbox {

struct Board {
    std::array<std::array<char, 8>, 8> cell{};  // [rank][file], '.' when empty
    bool white_to_move = true;
    bool castle_wk = false, castle_wq = false, castle_bk = false, castle_bq = false;
    int ep_rank = -1, ep_file = -1;
};

struct Move {
    int fr, ff, tr, tf;
    char promo = 0;  // lowercase piece letter, 0 if none
};

inline Board from_fen(const std::string& fen) {
    Board b;
    for (auto& row : b.cell) row.fill('.');
    std::istringstream in(fen);
    std::string placement, side, castle, ep;
    in >> placement >> side >> castle >> ep;
    int rank = 7, file = 0;
    for (char c : placement) {
        if (c == '/') {
            --rank;
            file = 0;
        } else if (std::isdigit(static_cast<unsigned char>(c))) {
            file += c - '0';
        } else {
            b.cell[rank][file++] = c;
        }
    }
    b.white_to_move = side == "w";
    b.castle_wk = castle.find('K') != std::string::npos;
    b.castle_wq = castle.find('Q') != std::string::npos;
    b.castle_bk = castle.find('k') != std::string::npos;
    b.castle_bq = castle.find('q') != std::string::npos;
    if (ep != "-") {
        b.ep_file = ep[0] - 'a';
        b.ep_rank = ep[1] - '1';
    }
    return b;
}

inline bool on_board(int r, int f) { return r >= 0 && r < 8 && f >= 0 && f < 8; }
inline bool is_white(char c) { return c >= 'A' && c <= 'Z'; }
inline bool is_black(char c) { return c >= 'a' && c <= 'z'; }
inline bool owned_by(char c, bool white) { return white ? is_white(c) : is_black(c); }

inline const int kKnight[8][2] = {{1, 2}, {2, 1}, {2, -1}, {1, -2}, {-1, -2}, {-2, -1}, {-2, 1}, {-1, 2}};
inline const int kKing[8][2] = {{1, 1}, {1, 0}, {1, -1}, {0, -1}, {-1, -1}, {-1, 0}, {-1, 1}, {0, 1}};
inline const int kRookDirs[4][2] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
inline const int kBishopDirs[4][2] = {{1, 1}, {1, -1}, {-1, 1}, {-1, -1}};

/// Is (r, f) attacked by the side `by_white`?
inline bool attacked(const Board& b, int r, int f, bool by_white) {
    const int pawn_rank = by_white ? r - 1 : r + 1;
    const char pawn = by_white ? 'P' : 'p';
    for (int df : {-1, 1}) {
        if (on_board(pawn_rank, f + df) && b.cell[pawn_rank][f + df] == pawn) return true;
    }
    const char knight = by_white ? 'N' : 'n';
    for (auto& d : kKnight) {
        if (on_board(r + d[0], f + d[1]) && b.cell[r + d[0]][f + d[1]] == knight) return true;
    }
    const char king = by_white ? 'K' : 'k';
    for (auto& d : kKing) {
        if (on_board(r + d[0], f + d[1]) && b.cell[r + d[0]][f + d[1]] == king) return true;
    }
    auto slide = [&](const int (&dirs)[4][2], char a, char q) {
        for (auto& d : dirs) {
            int rr = r + d[0], ff = f + d[1];
            while (on_board(rr, ff)) {
                const char c = b.cell[rr][ff];
                if (c != '.') {
                    if (c == a || c == q) return true;
                    break;
                }
                rr += d[0];
                ff += d[1];
            }
        }
        return false;
    };
    return slide(kRookDirs, by_white ? 'R' : 'r', by_white ? 'Q' : 'q') ||
           slide(kBishopDirs, by_white ? 'B' : 'b', by_white ? 'Q' : 'q');
}

inline std::vector<Move> pseudo_moves(const Board& b) {
    std::vector<Move> out;
    const bool w = b.white_to_move;
    for (int r = 0; r < 8; ++r) {
        for (int f = 0; f < 8; ++f) {
            const char c = b.cell[r][f];
            if (!owned_by(c, w)) continue;
            const char kind = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
            auto add = [&](int tr, int tf) {
                if (!on_board(tr, tf) || owned_by(b.cell[tr][tf], w)) return false;
                out.push_back({r, f, tr, tf});
                return b.cell[tr][tf] == '.';
            };
            if (kind == 'p') {
                const int dir = w ? 1 : -1;
                const int last = w ? 7 : 0;
                auto add_pawn = [&](int tr, int tf) {
                    if (tr == last) {
                        for (char p : {'q', 'r', 'b', 'n'}) out.push_back({r, f, tr, tf, p});
                    } else {
                        out.push_back({r, f, tr, tf});
                    }
                };
                if (on_board(r + dir, f) && b.cell[r + dir][f] == '.') {
                    add_pawn(r + dir, f);
                    const int start = w ? 1 : 6;
                    if (r == start && b.cell[r + 2 * dir][f] == '.') out.push_back({r, f, r + 2 * dir, f});
                }
                for (int df : {-1, 1}) {
                    const int tr = r + dir, tf = f + df;
                    if (!on_board(tr, tf)) continue;
                    if (owned_by(b.cell[tr][tf], !w)) add_pawn(tr, tf);
                    else if (tr == b.ep_rank && tf == b.ep_file) out.push_back({r, f, tr, tf});
                }
            } else if (kind == 'n') {
                for (auto& d : kKnight) add(r + d[0], f + d[1]);
            } else if (kind == 'k') {
                for (auto& d : kKing) add(r + d[0], f + d[1]);
                const int home = w ? 0 : 7;
                const bool ks = w ? b.castle_wk : b.castle_bk;
                const bool qs = w ? b.castle_wq : b.castle_bq;
                if (r == home && f == 4 && !attacked(b, home, 4, !w)) {
                    if (ks && b.cell[home][5] == '.' && b.cell[home][6] == '.' && !attacked(b, home, 5, !w) &&
                        !attacked(b, home, 6, !w)) {
                        out.push_back({r, f, home, 6});
                    }
                    if (qs && b.cell[home][3] == '.' && b.cell[home][2] == '.' && b.cell[home][1] == '.' &&
                        !attacked(b, home, 3, !w) && !attacked(b, home, 2, !w)) {
                        out.push_back({r, f, home, 2});
                    }
                }
            } else {
                auto slide = [&](const int (&dirs)[4][2]) {
                    for (auto& d : dirs) {
                        int tr = r + d[0], tf = f + d[1];
                        while (add(tr, tf)) {
                            tr += d[0];
                            tf += d[1];
                        }
                    }
                };
                if (kind == 'r' || kind == 'q') slide(kRookDirs);
                if (kind == 'b' || kind == 'q') slide(kBishopDirs);
            }
        }
    }
    return out;
}

inline Board play(const Board& b, const Move& m) {
    Board n = b;
    const char piece = b.cell[m.fr][m.ff];
    const bool w = b.white_to_move;
    const char kind = static_cast<char>(std::tolower(static_cast<unsigned char>(piece)));
    n.cell[m.fr][m.ff] = '.';
    n.cell[m.tr][m.tf] = m.promo ? (w ? static_cast<char>(std::toupper(static_cast<unsigned char>(m.promo))) : m.promo) : piece;
    if (kind == 'p' && m.tf != m.ff && b.cell[m.tr][m.tf] == '.') n.cell[m.fr][m.tf] = '.';  // en passant
    if (kind == 'k' && m.tf - m.ff == 2) {
        n.cell[m.tr][5] = n.cell[m.tr][7];
        n.cell[m.tr][7] = '.';
    }
    if (kind == 'k' && m.ff - m.tf == 2) {
        n.cell[m.tr][3] = n.cell[m.tr][0];
        n.cell[m.tr][0] = '.';
    }
    auto touch = [&](int r, int f) {
        if (r == 0 && f == 4) n.castle_wk = n.castle_wq = false;
        if (r == 0 && f == 7) n.castle_wk = false;
        if (r == 0 && f == 0) n.castle_wq = false;
        if (r == 7 && f == 4) n.castle_bk = n.castle_bq = false;
        if (r == 7 && f == 7) n.castle_bk = false;
        if (r == 7 && f == 0) n.castle_bq = false;
    };
    touch(m.fr, m.ff);
    touch(m.tr, m.tf);
    n.ep_rank = n.ep_file = -1;
    if (kind == 'p' && (m.tr - m.fr == 2 || m.fr - m.tr == 2)) {
        n.ep_rank = (m.tr + m.fr) / 2;
        n.ep_file = m.ff;
    }
    n.white_to_move = !w;
    return n;
}

inline bool king_safe_after(const Board& after) {
    const bool mover_white = !after.white_to_move;
    const char king = mover_white ? 'K' : 'k';
    for (int r = 0; r < 8; ++r) {
        for (int f = 0; f < 8; ++f) {
            if (after.cell[r][f] == king) return !attacked(after, r, f, !mover_white);
        }
    }
    return false;
}

inline std::vector<Move> legal_moves(const Board& b) {
    std::vector<Move> out;
    for (const Move& m : pseudo_moves(b)) {
        if (king_safe_after(play(b, m))) out.push_back(m);
    }
    return out;
}

inline std::uint64_t perft(const Board& b, int depth) {
    if (depth == 0) return 1;
    std::uint64_t nodes = 0;
    for (const Move& m : pseudo_moves(b)) {
        const Board n = play(b, m);
        if (king_safe_after(n)) nodes += perft(n, depth - 1);
    }
    return nodes;
}

inline std::string uci(const Move& m) {
    std::string s{static_cast<char>('a' + m.ff), static_cast<char>('1' + m.fr), static_cast<char>('a' + m.tf),
                  static_cast<char>('1' + m.tr)};
    if (m.promo) s += m.promo;
    return s;
}

/// Sorted UCI strings of the legal (or pseudo-legal) moves of `fen`.
inline std::vector<std::string> move_strings(const std::string& fen, bool legal_only) {
    const Board b = from_fen(fen);
    std::vector<std::string> out;
    for (const Move& m : legal_only ? legal_moves(b) : pseudo_moves(b)) out.push_back(uci(m));
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace mailbox
