#pragma once

// Binary persistence for AttackTables.
//
// Layout, all words 64-bit little-endian:
//   magic "DLATTACK" (8 bytes) | format version
//   rank, file, NE, NW masks (4 x 64 words)
//   for each of rank, file, NE, NW table:
//       entry count, then (mover, occupancy, attacks) triples
//   FNV-1a 64 checksum of every preceding byte

#include <array>
#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <istream>
#include <iterator>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "dlchess/direct_tables.hpp"

namespace dlchess {

class TableIoError : public std::runtime_error {
public:
    TableIoError(const std::string& what, std::size_t offset)
        : std::runtime_error(what + " at offset " + std::to_string(offset)), offset_(offset) {}
    std::size_t offset() const { return offset_; }

private:
    std::size_t offset_;
};

inline constexpr std::array<char, 8> kTableMagic{'D', 'L', 'A', 'T', 'T', 'A', 'C', 'K'};
inline constexpr std::uint64_t kTableFormatVersion = 1;

namespace detail {

inline std::uint64_t fnv1a(const std::uint8_t* data, std::size_t n) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (std::size_t i = 0; i < n; ++i) {
        h ^= data[i];
        h *= 0x100000001b3ULL;
    }
    return h;
}

class WordWriter {
public:
    void bytes(const char* p, std::size_t n) { buf_.insert(buf_.end(), p, p + n); }
    void word(std::uint64_t v) {
        for (int i = 0; i < 8; ++i) buf_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
    }
    std::vector<std::uint8_t>& buffer() { return buf_; }

private:
    std::vector<std::uint8_t> buf_;
};

class WordReader {
public:
    explicit WordReader(const std::vector<std::uint8_t>& buf) : buf_(buf) {}

    std::uint64_t word() {
        if (remaining() < 8) throw TableIoError("truncated stream", pos_);
        std::uint64_t v = 0;
        for (int i = 0; i < 8; ++i) v |= std::uint64_t{buf_[pos_ + i]} << (8 * i);
        pos_ += 8;
        return v;
    }
    std::size_t offset() const { return pos_; }
    std::size_t remaining() const { return buf_.size() - pos_; }

private:
    const std::vector<std::uint8_t>& buf_;
    std::size_t pos_ = 0;
};

inline void write_table(WordWriter& w, const AttackTable& table) {
    const auto entries = table.entries();
    w.word(entries.size());
    for (const auto& e : entries) {
        w.word(e.mover);
        w.word(e.occupancy);
        w.word(e.attacks);
    }
}

inline AttackTable read_table(WordReader& r) {
    const std::size_t count_at = r.offset();
    const std::uint64_t count = r.word();
    if (count > r.remaining() / 24) throw TableIoError("truncated stream", count_at);
    AttackTable table;
    for (std::uint64_t i = 0; i < count; ++i) {
        const std::size_t at = r.offset();
        const Bitboard mover = r.word();
        const Bitboard occupancy = r.word();
        const Bitboard attacks = r.word();
        if ((mover != 0 && !std::has_single_bit(mover)) || occupancy == OccupancyMap::kEmptySlot) {
            throw TableIoError("malformed entry", at);
        }
        table.insert(mover, occupancy, attacks);
    }
    return table;
}

}  // namespace detail

inline void save_tables(const AttackTables& t, std::ostream& out) {
    detail::WordWriter w;
    w.bytes(kTableMagic.data(), kTableMagic.size());
    w.word(kTableFormatVersion);
    for (const auto* masks : {&t.masks.rank, &t.masks.file, &t.masks.diag_ne, &t.masks.diag_nw}) {
        for (Bitboard m : *masks) w.word(m);
    }
    for (const auto* table : {&t.rank, &t.file, &t.diag_ne, &t.diag_nw}) detail::write_table(w, *table);
    auto& buf = w.buffer();
    w.word(detail::fnv1a(buf.data(), buf.size()));
    out.write(reinterpret_cast<const char*>(buf.data()), static_cast<std::streamsize>(buf.size()));
    if (!out) throw TableIoError("write failed", buf.size());
}

inline AttackTables load_tables(std::istream& in) {
    const std::vector<std::uint8_t> buf{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
    if (buf.size() < kTableMagic.size()) throw TableIoError("truncated stream", buf.size());
    if (std::memcmp(buf.data(), kTableMagic.data(), kTableMagic.size()) != 0) throw TableIoError("version mismatch", 0);

    detail::WordReader r(buf);
    r.word();  // magic
    const std::size_t version_at = r.offset();
    if (r.word() != kTableFormatVersion) throw TableIoError("version mismatch", version_at);

    AttackTables t;
    for (auto* masks : {&t.masks.rank, &t.masks.file, &t.masks.diag_ne, &t.masks.diag_nw}) {
        for (Bitboard& m : *masks) m = r.word();
    }
    for (auto* table : {&t.rank, &t.file, &t.diag_ne, &t.diag_nw}) *table = detail::read_table(r);

    const std::size_t checksum_at = r.offset();
    const std::uint64_t stored = r.word();
    if (stored != detail::fnv1a(buf.data(), checksum_at)) throw TableIoError("checksum failure", checksum_at);
    if (r.remaining() != 0) throw TableIoError("trailing bytes", r.offset());
    return t;
}

inline void save_tables_file(const AttackTables& t, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
    save_tables(t, out);
}

inline AttackTables load_tables_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    return load_tables(in);
}

}  // namespace dlchess
