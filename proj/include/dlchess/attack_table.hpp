#pragma once

// Two-level attack table keyed by bitboards.
//
// The first key is the bitboard of the sliding piece (one bit set, or 0 for
// the base entry of the generalized builder); the second key is the line
// occupancy bitboard. Each first-level key owns an open-addressing hash table
// with double hashing, so a lookup uses the masked occupancy bitboard
// directly as its key with no rotation or remapping.

#include <algorithm>
#include <array>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "dlchess/bitboard.hpp"

namespace dlchess {

class OccupancyMap {
public:
    struct Slot {
        Bitboard key = kEmptySlot;
        Bitboard value = 0;
    };

    /// Never a valid line occupancy, so it marks free slots.
    static constexpr Bitboard kEmptySlot = kFull;

    OccupancyMap() { rehash(kMinCapacity); }

    /// Inserts or overwrites. Returns true when the key was new.
    bool insert(Bitboard key, Bitboard value) {
        if (key == kEmptySlot) throw std::invalid_argument("occupancy key collides with the empty-slot marker");
        if (2 * (size_ + 1) > slots_.size()) rehash(slots_.size() * 2);
        Slot& slot = probe(key);
        const bool fresh = slot.key == kEmptySlot;
        if (fresh) ++size_;
        slot = {key, value};
        return fresh;
    }

    const Bitboard* find(Bitboard key) const {
        const std::size_t mask = slots_.size() - 1;
        std::size_t i = primary(key);
        const std::size_t step = secondary(key);
        while (true) {
            const Slot& slot = slots_[i];
            if (slot.key == key) return &slot.value;
            if (slot.key == kEmptySlot) return nullptr;
            i = (i + step) & mask;
        }
    }

    std::size_t size() const { return size_; }

    /// Entries sorted by key.
    std::vector<Slot> sorted() const {
        std::vector<Slot> out;
        out.reserve(size_);
        for (const Slot& s : slots_) {
            if (s.key != kEmptySlot) out.push_back(s);
        }
        std::sort(out.begin(), out.end(), [](const Slot& a, const Slot& b) { return a.key < b.key; });
        return out;
    }

private:
    static constexpr std::size_t kMinCapacity = 4;

    std::size_t primary(Bitboard key) const { return static_cast<std::size_t>((key * 0x9E3779B97F4A7C15ULL) >> shift_); }

    // Odd step, hence coprime with the power-of-two capacity: the probe
    // sequence visits every slot.
    std::size_t secondary(Bitboard key) const {
        const Bitboard mixed = (key ^ (key >> 31)) * 0xBF58476D1CE4E5B9ULL;
        return static_cast<std::size_t>(mixed >> shift_) | 1;
    }

    Slot& probe(Bitboard key) {
        const std::size_t mask = slots_.size() - 1;
        std::size_t i = primary(key);
        const std::size_t step = secondary(key);
        while (slots_[i].key != key && slots_[i].key != kEmptySlot) i = (i + step) & mask;
        return slots_[i];
    }

    void rehash(std::size_t capacity) {
        std::vector<Slot> old = std::move(slots_);
        slots_.assign(capacity, Slot{});
        shift_ = 64 - std::countr_zero(capacity);
        for (const Slot& s : old) {
            if (s.key != kEmptySlot) probe(s.key) = s;
        }
    }

    std::vector<Slot> slots_;
    int shift_ = 64;
    std::size_t size_ = 0;
};

class AttackTable {
public:
    struct Entry {
        Bitboard mover;
        Bitboard occupancy;
        Bitboard attacks;
        friend bool operator==(const Entry&, const Entry&) = default;
    };

    /// Creates an (empty) first-level key.
    void add_mover(Bitboard mover) {
        auto& slot = maps_[mover_slot(mover)];
        if (!slot) slot.emplace();
    }

    void insert(Bitboard mover, Bitboard occupancy, Bitboard attacks) {
        auto& slot = maps_[mover_slot(mover)];
        if (!slot) slot.emplace();
        slot->insert(occupancy, attacks);
    }

    std::optional<Bitboard> find(Bitboard mover, Bitboard occupancy) const {
        if (mover != 0 && !std::has_single_bit(mover)) return std::nullopt;
        const auto& slot = maps_[mover_slot(mover)];
        if (!slot) return std::nullopt;
        const Bitboard* v = slot->find(occupancy);
        return v ? std::optional<Bitboard>{*v} : std::nullopt;
    }

    /// Throws std::out_of_range when either key is absent.
    Bitboard at(Bitboard mover, Bitboard occupancy) const {
        if (auto v = find(mover, occupancy)) return *v;
        throw std::out_of_range("no attack entry for mover " + std::to_string(mover) + ", occupancy " +
                                std::to_string(occupancy));
    }

    /// Hot-path lookup by square. A miss means the table is incomplete, which
    /// is a defect in the builder rather than a caller error.
    Bitboard lookup(Square s, Bitboard occupancy) const {
        const auto& slot = maps_[s.index()];
        if (slot) {
            if (const Bitboard* v = slot->find(occupancy)) return *v;
        }
        throw std::logic_error("attack table incomplete: missing entry for " + s.name());
    }

    bool contains_mover(Bitboard mover) const {
        if (mover != 0 && !std::has_single_bit(mover)) return false;
        return maps_[mover_slot(mover)].has_value();
    }

    /// Number of first-level keys, including the base key 0 when present.
    std::size_t mover_count() const {
        return static_cast<std::size_t>(std::count_if(maps_.begin(), maps_.end(), [](const auto& m) { return m.has_value(); }));
    }

    std::size_t entry_count(Bitboard mover) const {
        if (!contains_mover(mover)) return 0;
        return maps_[mover_slot(mover)]->size();
    }

    /// Second-level entries summed over the 64 square keys (base entry excluded).
    std::size_t square_entry_count() const {
        std::size_t n = 0;
        for (int i = 0; i < 64; ++i) {
            if (maps_[i]) n += maps_[i]->size();
        }
        return n;
    }

    std::size_t total_entry_count() const { return square_entry_count() + (maps_[kBaseSlot] ? maps_[kBaseSlot]->size() : 0); }

    bool has_base_key() const { return maps_[kBaseSlot].has_value(); }
    bool empty() const { return mover_count() == 0; }

    /// All entries in canonical order: base key first, then squares by index,
    /// each sorted by occupancy.
    std::vector<Entry> entries() const {
        std::vector<Entry> out;
        out.reserve(total_entry_count());
        auto append = [&](std::size_t slot, Bitboard mover) {
            if (!maps_[slot]) return;
            for (const auto& s : maps_[slot]->sorted()) out.push_back({mover, s.key, s.value});
        };
        append(kBaseSlot, 0);
        for (int i = 0; i < 64; ++i) append(static_cast<std::size_t>(i), Bitboard{1} << i);
        return out;
    }

    /// First-level keys in canonical order.
    std::vector<Bitboard> movers() const {
        std::vector<Bitboard> out;
        if (maps_[kBaseSlot]) out.push_back(0);
        for (int i = 0; i < 64; ++i) {
            if (maps_[i]) out.push_back(Bitboard{1} << i);
        }
        return out;
    }

    friend bool operator==(const AttackTable& a, const AttackTable& b) {
        return a.movers() == b.movers() && a.entries() == b.entries();
    }

private:
    static constexpr std::size_t kBaseSlot = 64;

    static std::size_t mover_slot(Bitboard mover) {
        if (mover == 0) return kBaseSlot;
        if (!std::has_single_bit(mover)) throw std::invalid_argument("mover key must have at most one bit set");
        return static_cast<std::size_t>(std::countr_zero(mover));
    }

    std::array<std::optional<OccupancyMap>, 65> maps_{};
};

/// Key-for-key comparison restricted to the 64 square keys, ignoring the
/// base key 0 that the generalized builder adds.
inline bool same_square_entries(const AttackTable& a, const AttackTable& b) {
    auto squares_only = [](const AttackTable& t) {
        auto e = t.entries();
        std::erase_if(e, [](const AttackTable::Entry& x) { return x.mover == 0; });
        return e;
    };
    auto movers_only = [](const AttackTable& t) {
        auto m = t.movers();
        std::erase(m, Bitboard{0});
        return m;
    };
    return movers_only(a) == movers_only(b) && squares_only(a) == squares_only(b);
}

}  // namespace dlchess
