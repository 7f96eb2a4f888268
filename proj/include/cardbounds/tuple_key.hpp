#pragma once

// Keys for k-tuples of symbols. When k * bit_width(sigma - 1) <= 64 a tuple is
// packed into one machine word (most significant symbol first); otherwise it
// is stored as a byte string with a fixed number of bytes per symbol.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <variant>
#include <vector>

#include "cardbounds/textcore.hpp"

namespace cardbounds {

/// How windows are taken from a sequence.
enum class Convention {
    linear,  ///< windows never wrap
    cyclic,  ///< windows wrap around the end of the sequence
};

using TupleKey = std::variant<std::uint64_t, std::string>;

class TupleKeyer {
public:
    TupleKeyer(Alphabet alphabet, std::size_t k);

    std::size_t k() const noexcept { return k_; }
    std::uint32_t sigma() const noexcept { return sigma_; }
    bool packed() const noexcept { return packed_; }
    unsigned bits_per_symbol() const noexcept { return bits_; }

    /// Requires tuple.size() == k().
    TupleKey key(std::span<const Symbol> tuple) const;

    /// Inverse of key().
    std::vector<Symbol> unpack(const TupleKey& key) const;

    /// Number of distinct packed keys if they fit a dense table of at most
    /// `max_slots` entries, else 0.
    std::size_t dense_slots(std::size_t max_slots) const noexcept;

private:
    friend class WindowRoller;

    std::uint32_t sigma_;
    std::size_t k_;
    unsigned bits_;
    unsigned bytes_;
    bool packed_;
    std::uint64_t mask_;
};

/// Incrementally computes the key of the last k symbols pushed.
class WindowRoller {
public:
    explicit WindowRoller(const TupleKeyer& keyer);

    void push(Symbol s);
    void reset();

    /// True once at least k symbols have been pushed.
    bool ready() const noexcept { return pushed_ >= keyer_->k(); }
    TupleKey key() const;
    std::uint64_t packed_key() const noexcept { return packed_; }

private:
    const TupleKeyer* keyer_;
    std::uint64_t packed_ = 0;
    std::vector<Symbol> ring_;
    std::size_t head_ = 0;
    std::size_t pushed_ = 0;
};

/// Number of k-windows under a convention: n-k+1 (linear, 0 if k > n) or n (cyclic).
std::size_t window_count(std::size_t n, std::size_t k, Convention convention) noexcept;

/// Keys of every k-window, in start-position order. Cyclic requires n >= k.
std::vector<TupleKey> window_keys(const Sequence& seq, const TupleKeyer& keyer, Convention convention);

/// Map from k-tuple to V. Small packed key spaces use a dense table whose
/// clear() is O(1) (epoch stamps); everything else uses a hash map.
template <typename V>
class TupleDict {
public:
    /// Dense tables are used when the key space has at most this many slots.
    static constexpr std::size_t kMaxDenseSlots = std::size_t{1} << 22;

    explicit TupleDict(const TupleKeyer& keyer) : slots_(keyer.dense_slots(kMaxDenseSlots)) {
        if (slots_ != 0) {
            stamps_.assign(slots_, 0);
            values_.resize(slots_);
        }
    }

    bool dense() const noexcept { return slots_ != 0; }

    /// Returns the stored value and whether it was newly inserted.
    std::pair<V*, bool> try_emplace(const TupleKey& key, const V& value) {
        if (dense()) return try_emplace_packed(std::get<std::uint64_t>(key), value);
        auto [it, inserted] = map_.try_emplace(key, value);
        return {&it->second, inserted};
    }

    /// Dense fast path; the key must come from a packed keyer.
    std::pair<V*, bool> try_emplace_packed(std::uint64_t key, const V& value) {
        if (!dense()) return try_emplace(TupleKey{key}, value);
        if (stamps_[key] == epoch_) return {&values_[key], false};
        stamps_[key] = epoch_;
        values_[key] = value;
        return {&values_[key], true};
    }

    void clear() {
        if (dense()) {
            if (++epoch_ == 0) {
                std::fill(stamps_.begin(), stamps_.end(), 0);
                epoch_ = 1;
            }
        } else {
            map_.clear();
        }
    }

private:
    std::size_t slots_;
    std::uint32_t epoch_ = 1;
    std::vector<std::uint32_t> stamps_;
    std::vector<V> values_;
    std::unordered_map<TupleKey, V> map_;
};

}  // namespace cardbounds
