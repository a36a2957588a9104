#pragma once

// Position representation and FEN / EPD ingestion.

#include <array>
#include <cctype>
#include <charconv>
#include <cstdint>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "dlchess/bitboard.hpp"

namespace dlchess {

enum class Color : std::uint8_t { White, Black };
enum class PieceType : std::uint8_t { Pawn, Knight, Bishop, Rook, Queen, King };

constexpr Color operator~(Color c) { return c == Color::White ? Color::Black : Color::White; }

inline constexpr int kPieceTypes = 6;

namespace castling {
inline constexpr std::uint8_t kWhiteKing = 1;
inline constexpr std::uint8_t kWhiteQueen = 2;
inline constexpr std::uint8_t kBlackKing = 4;
inline constexpr std::uint8_t kBlackQueen = 8;
inline constexpr std::uint8_t kAll = 15;
}  // namespace castling

inline constexpr std::string_view kStartFen = "rnbqkbnr/pppppppp/8/8/8/8/PPPPPPPP/RNBQKBNR w KQkq - 0 1";

class ParseError : public std::runtime_error {
public:
    ParseError(int field, std::size_t column, const std::string& what)
        : std::runtime_error("field " + std::to_string(field) + ", column " + std::to_string(column) + ": " + what),
          field_(field),
          column_(column) {}

    /// 1-based FEN field number (1 = board placement).
    int field() const { return field_; }
    /// 0-based character offset within the input text.
    std::size_t column() const { return column_; }

private:
    int field_;
    std::size_t column_;
};

struct Position {
    /// Indexed by color * 6 + piece type.
    std::array<Bitboard, 12> pieces{};
    Color side_to_move = Color::White;
    std::uint8_t castling_rights = 0;
    std::optional<Square> ep_square;
    int halfmove_clock = 0;
    int fullmove_number = 1;

    static constexpr int slot(Color c, PieceType pt) { return static_cast<int>(c) * kPieceTypes + static_cast<int>(pt); }

    constexpr Bitboard piece(Color c, PieceType pt) const { return pieces[slot(c, pt)]; }
    constexpr Bitboard& piece(Color c, PieceType pt) { return pieces[slot(c, pt)]; }

    constexpr Bitboard color(Color c) const {
        const int base = slot(c, PieceType::Pawn);
        return pieces[base] | pieces[base + 1] | pieces[base + 2] | pieces[base + 3] | pieces[base + 4] |
               pieces[base + 5];
    }
    constexpr Bitboard occupied() const { return color(Color::White) | color(Color::Black); }

    /// Piece on `s`, if any.
    std::optional<std::pair<Color, PieceType>> piece_on(Square s) const {
        for (int i = 0; i < 12; ++i) {
            if (pieces[i] & s.bitboard()) return std::pair{static_cast<Color>(i / 6), static_cast<PieceType>(i % 6)};
        }
        return std::nullopt;
    }

    bool has_king(Color c) const { return piece(c, PieceType::King) != 0; }
    /// Requires has_king(c).
    Square king_square(Color c) const { return Square{std::countr_zero(piece(c, PieceType::King))}; }

    friend bool operator==(const Position&, const Position&) = default;
};

namespace detail {

inline constexpr std::string_view kPieceLetters = "PNBRQKpnbrqk";

inline std::vector<std::pair<std::string_view, std::size_t>> split_fields(std::string_view text) {
    std::vector<std::pair<std::string_view, std::size_t>> out;
    std::size_t i = 0;
    while (i < text.size()) {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
        std::size_t start = i;
        while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i]))) ++i;
        if (i > start) out.emplace_back(text.substr(start, i - start), start);
    }
    return out;
}

inline void parse_board(std::string_view board, std::size_t offset, Position& pos) {
    int rank = 7;
    int file = 0;
    for (std::size_t i = 0; i < board.size(); ++i) {
        const char c = board[i];
        const std::size_t col = offset + i;
        if (c == '/') {
            if (file != 8) throw ParseError(1, col, "rank " + std::to_string(rank + 1) + " has " + std::to_string(file) + " files");
            if (rank == 0) throw ParseError(1, col, "more than 8 ranks");
            --rank;
            file = 0;
        } else if (c >= '1' && c <= '8') {
            file += c - '0';
            if (file > 8) throw ParseError(1, col, "rank " + std::to_string(rank + 1) + " has more than 8 files");
        } else {
            const auto k = kPieceLetters.find(c);
            if (k == std::string_view::npos) throw ParseError(1, col, std::string("unknown piece letter '") + c + "'");
            if (file >= 8) throw ParseError(1, col, "rank " + std::to_string(rank + 1) + " has more than 8 files");
            pos.pieces[k] |= Square::from_coords(file, rank).bitboard();
            ++file;
        }
    }
    if (rank != 0 || file != 8) throw ParseError(1, offset + board.size(), "board field does not describe 8 full ranks");

    // King-less diagrams (attack-table setups) are accepted; two kings of one color are not.
    for (Color c : {Color::White, Color::Black}) {
        if (popcount(pos.piece(c, PieceType::King)) > 1) {
            throw ParseError(1, offset, std::string(c == Color::White ? "white" : "black") + " has more than one king");
        }
    }
    constexpr Bitboard kBackRanks = kRank1 | (kRank1 << 56);
    if ((pos.piece(Color::White, PieceType::Pawn) | pos.piece(Color::Black, PieceType::Pawn)) & kBackRanks) {
        throw ParseError(1, offset, "pawn on first or eighth rank");
    }
}

inline void parse_castling(std::string_view field, std::size_t offset, Position& pos) {
    if (field == "-") return;
    for (std::size_t i = 0; i < field.size(); ++i) {
        const char c = field[i];
        std::uint8_t flag = 0;
        Color color = Color::White;
        Square king_home = squares::e1;
        Square rook_home = squares::h1;
        switch (c) {
            case 'K': flag = castling::kWhiteKing; break;
            case 'Q': flag = castling::kWhiteQueen; rook_home = squares::a1; break;
            case 'k': flag = castling::kBlackKing; color = Color::Black; king_home = squares::e8; rook_home = squares::h8; break;
            case 'q': flag = castling::kBlackQueen; color = Color::Black; king_home = squares::e8; rook_home = squares::a8; break;
            default: throw ParseError(3, offset + i, std::string("unknown castling flag '") + c + "'");
        }
        if (pos.castling_rights & flag) throw ParseError(3, offset + i, std::string("duplicate castling flag '") + c + "'");
        if (!(pos.piece(color, PieceType::King) & king_home.bitboard()) ||
            !(pos.piece(color, PieceType::Rook) & rook_home.bitboard())) {
            throw ParseError(3, offset + i, std::string("castling flag '") + c + "' contradicts king/rook placement");
        }
        pos.castling_rights |= flag;
    }
}

inline int parse_counter(std::string_view field, int index, std::size_t offset) {
    int value = 0;
    auto [p, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (ec != std::errc{} || p != field.data() + field.size() || value < 0) {
        throw ParseError(index, offset, "invalid move counter '" + std::string(field) + "'");
    }
    return value;
}

/// Parses the four mandatory fields shared by FEN and EPD.
inline Position parse_core_fields(const std::vector<std::pair<std::string_view, std::size_t>>& fields, std::size_t text_size) {
    if (fields.size() < 4) throw ParseError(static_cast<int>(fields.size()) + 1, text_size, "expected at least 4 fields");
    Position pos;
    parse_board(fields[0].first, fields[0].second, pos);

    const auto [side, side_at] = fields[1];
    if (side == "w") pos.side_to_move = Color::White;
    else if (side == "b") pos.side_to_move = Color::Black;
    else throw ParseError(2, side_at, "side to move must be 'w' or 'b'");

    parse_castling(fields[2].first, fields[2].second, pos);

    const auto [ep, ep_at] = fields[3];
    if (ep != "-") {
        Square s;
        try {
            s = Square::from_name(ep);
        } catch (const std::invalid_argument&) {
            throw ParseError(4, ep_at, "invalid en-passant square '" + std::string(ep) + "'");
        }
        const int want_rank = pos.side_to_move == Color::White ? 5 : 2;
        if (s.rank() != want_rank) throw ParseError(4, ep_at, "en-passant square on wrong rank");
        pos.ep_square = s;
    }
    return pos;
}

}  // namespace detail

/// Parses a FEN record. The two move counters are optional.
inline Position parse_fen(std::string_view text) {
    const auto fields = detail::split_fields(text);
    Position pos = detail::parse_core_fields(fields, text.size());
    if (fields.size() > 6) throw ParseError(7, fields[6].second, "unexpected trailing field");
    if (fields.size() >= 5) pos.halfmove_clock = detail::parse_counter(fields[4].first, 5, fields[4].second);
    if (fields.size() == 6) pos.fullmove_number = detail::parse_counter(fields[5].first, 6, fields[5].second);
    return pos;
}

inline std::string board_field(const Position& pos) {
    std::string out;
    for (int rank = 7; rank >= 0; --rank) {
        int empty = 0;
        for (int file = 0; file < 8; ++file) {
            const Bitboard bb = Square::from_coords(file, rank).bitboard();
            char letter = 0;
            for (int k = 0; k < 12; ++k) {
                if (pos.pieces[k] & bb) letter = detail::kPieceLetters[k];
            }
            if (!letter) {
                ++empty;
                continue;
            }
            if (empty) out += static_cast<char>('0' + empty);
            empty = 0;
            out += letter;
        }
        if (empty) out += static_cast<char>('0' + empty);
        if (rank) out += '/';
    }
    return out;
}

inline std::string serialize_fen(const Position& pos) {
    std::string out = board_field(pos);
    out += pos.side_to_move == Color::White ? " w " : " b ";
    if (pos.castling_rights == 0) out += '-';
    if (pos.castling_rights & castling::kWhiteKing) out += 'K';
    if (pos.castling_rights & castling::kWhiteQueen) out += 'Q';
    if (pos.castling_rights & castling::kBlackKing) out += 'k';
    if (pos.castling_rights & castling::kBlackQueen) out += 'q';
    out += ' ';
    out += pos.ep_square ? pos.ep_square->name() : "-";
    out += ' ' + std::to_string(pos.halfmove_clock) + ' ' + std::to_string(pos.fullmove_number);
    return out;
}

struct EpdRecord {
    Position position;
    std::optional<std::string> id;
};

/// Parses one EPD line. Returns std::nullopt for blank lines and '#' comments.
/// Opcodes other than `id` are ignored; FEN-style move counters are accepted.
inline std::optional<EpdRecord> parse_epd_line(std::string_view text) {
    while (!text.empty() && (text.back() == '\r' || text.back() == '\n')) text.remove_suffix(1);
    const auto first = text.find_first_not_of(" \t");
    if (first == std::string_view::npos || text[first] == '#') return std::nullopt;

    auto fields = detail::split_fields(text);
    EpdRecord rec{detail::parse_core_fields(fields, text.size()), std::nullopt};
    if (fields.size() == 4) return rec;

    std::size_t ops_at = fields[4].second;
    // FEN-style trailing counters ("0 1") rather than opcodes.
    if (fields.size() <= 6 && fields[4].first.find_first_not_of("0123456789") == std::string_view::npos &&
        (fields.size() == 5 || fields[5].first.find_first_not_of("0123456789") == std::string_view::npos)) {
        rec.position.halfmove_clock = detail::parse_counter(fields[4].first, 5, fields[4].second);
        if (fields.size() == 6) rec.position.fullmove_number = detail::parse_counter(fields[5].first, 6, fields[5].second);
        return rec;
    }

    // Opcode section: `opcode operand...;` repeated; quoted operands may contain ';'.
    std::string_view ops = text.substr(ops_at);
    std::size_t i = 0;
    while (i < ops.size()) {
        while (i < ops.size() && (std::isspace(static_cast<unsigned char>(ops[i])) || ops[i] == ';')) ++i;
        if (i >= ops.size()) break;
        const std::size_t name_start = i;
        while (i < ops.size() && !std::isspace(static_cast<unsigned char>(ops[i])) && ops[i] != ';') ++i;
        const std::string_view name = ops.substr(name_start, i - name_start);
        std::string operand;
        bool quoted = false;
        while (i < ops.size() && ops[i] != ';') {
            if (ops[i] == '"') {
                const auto close = ops.find('"', i + 1);
                if (close == std::string_view::npos) throw ParseError(5, ops_at + i, "unterminated quoted operand");
                operand.assign(ops.substr(i + 1, close - i - 1));
                quoted = true;
                i = close + 1;
            } else {
                if (!quoted) operand += ops[i];
                ++i;
            }
        }
        if (!quoted) {
            const auto b = operand.find_first_not_of(" \t");
            operand = b == std::string::npos ? std::string{} : operand.substr(b, operand.find_last_not_of(" \t") - b + 1);
        }
        if (name == "id") rec.id = operand;
    }
    return rec;
}

}  // namespace dlchess
