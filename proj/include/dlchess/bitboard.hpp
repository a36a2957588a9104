#pragma once

// Bitboard primitives and square encoding.
//
// Bit layout: h1 is bit 0, a1 is bit 7, h8 is bit 56, a8 is bit 63, i.e.
// bit = 8 * rank + (7 - file) with rank 0..7 and file a=0 .. h=7.

#include <bit>
#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace dlchess {

using Bitboard = std::uint64_t;

inline constexpr Bitboard kEmpty = 0;
inline constexpr Bitboard kFull = ~Bitboard{0};
inline constexpr Bitboard kRank1 = 0xFFULL;
inline constexpr Bitboard kFileH = 0x0101010101010101ULL;

class Square {
public:
    constexpr Square() = default;
    constexpr explicit Square(int index) : index_(static_cast<std::uint8_t>(index)) {}

    /// file: 0 = a .. 7 = h; rank: 0 = first rank .. 7 = eighth rank.
    static constexpr Square from_coords(int file, int rank) { return Square{8 * rank + 7 - file}; }

    /// Parses "a1".."h8"; throws std::invalid_argument otherwise.
    static Square from_name(std::string_view name) {
        if (name.size() != 2 || name[0] < 'a' || name[0] > 'h' || name[1] < '1' || name[1] > '8') {
            throw std::invalid_argument("invalid square name '" + std::string(name) + "'");
        }
        return from_coords(name[0] - 'a', name[1] - '1');
    }

    constexpr int index() const { return index_; }
    constexpr int file() const { return 7 - (index_ & 7); }
    constexpr int rank() const { return index_ >> 3; }
    constexpr Bitboard bitboard() const { return Bitboard{1} << index_; }
    constexpr bool valid() const { return index_ < 64; }

    std::string name() const {
        return {static_cast<char>('a' + file()), static_cast<char>('1' + rank())};
    }

    friend constexpr auto operator<=>(Square, Square) = default;

private:
    std::uint8_t index_ = 0;
};

namespace squares {
inline constexpr Square a1{7}; inline constexpr Square b1{6}; inline constexpr Square c1{5}; inline constexpr Square d1{4};
inline constexpr Square e1{3}; inline constexpr Square f1{2}; inline constexpr Square g1{1}; inline constexpr Square h1{0};
inline constexpr Square a2{15}; inline constexpr Square b2{14}; inline constexpr Square c2{13}; inline constexpr Square d2{12};
inline constexpr Square e2{11}; inline constexpr Square f2{10}; inline constexpr Square g2{9}; inline constexpr Square h2{8};
inline constexpr Square a3{23}; inline constexpr Square b3{22}; inline constexpr Square c3{21}; inline constexpr Square d3{20};
inline constexpr Square e3{19}; inline constexpr Square f3{18}; inline constexpr Square g3{17}; inline constexpr Square h3{16};
inline constexpr Square a4{31}; inline constexpr Square b4{30}; inline constexpr Square c4{29}; inline constexpr Square d4{28};
inline constexpr Square e4{27}; inline constexpr Square f4{26}; inline constexpr Square g4{25}; inline constexpr Square h4{24};
inline constexpr Square a5{39}; inline constexpr Square b5{38}; inline constexpr Square c5{37}; inline constexpr Square d5{36};
inline constexpr Square e5{35}; inline constexpr Square f5{34}; inline constexpr Square g5{33}; inline constexpr Square h5{32};
inline constexpr Square a6{47}; inline constexpr Square b6{46}; inline constexpr Square c6{45}; inline constexpr Square d6{44};
inline constexpr Square e6{43}; inline constexpr Square f6{42}; inline constexpr Square g6{41}; inline constexpr Square h6{40};
inline constexpr Square a7{55}; inline constexpr Square b7{54}; inline constexpr Square c7{53}; inline constexpr Square d7{52};
inline constexpr Square e7{51}; inline constexpr Square f7{50}; inline constexpr Square g7{49}; inline constexpr Square h7{48};
inline constexpr Square a8{63}; inline constexpr Square b8{62}; inline constexpr Square c8{61}; inline constexpr Square d8{60};
inline constexpr Square e8{59}; inline constexpr Square f8{58}; inline constexpr Square g8{57}; inline constexpr Square h8{56};
}  // namespace squares

constexpr Bitboard square_bitboard(Square s) { return s.bitboard(); }

constexpr int popcount(Bitboard b) { return std::popcount(b); }

/// Lowest set bit as a bitboard. Throws on an empty bitboard.
constexpr Bitboard lsb(Bitboard b) {
    if (b == 0) throw std::invalid_argument("empty bitboard");
    return b & (~b + 1);
}

/// `b` with its lowest set bit cleared. Throws on an empty bitboard.
constexpr Bitboard clear_lsb(Bitboard b) {
    if (b == 0) throw std::invalid_argument("empty bitboard");
    return b & (b - 1);
}

/// Square of a single-bit bitboard (a1 -> 7). Throws unless exactly one bit is set.
constexpr Square bit_to_index(Bitboard b) {
    if (std::popcount(b) != 1) throw std::invalid_argument("bit_to_index requires exactly one set bit");
    return Square{std::countr_zero(b)};
}

/// Unchecked: returns and clears the lowest square of a nonempty bitboard.
constexpr Square pop_square(Bitboard& b) {
    Square s{std::countr_zero(b)};
    b &= b - 1;
    return s;
}

/// Calls `fn(Square)` for every set bit, lowest first.
template <class Fn>
constexpr void for_each_square(Bitboard b, Fn&& fn) {
    while (b) fn(pop_square(b));
}

}  // namespace dlchess
