#include "cardbounds/tuple_key.hpp"

#include <bit>

#include "cardbounds/errors.hpp"

namespace cardbounds {

TupleKeyer::TupleKeyer(Alphabet alphabet, std::size_t k)
    : sigma_(alphabet.sigma()),
      k_(k),
      bits_(static_cast<unsigned>(std::bit_width(alphabet.sigma() - 1u))),
      bytes_(alphabet.sigma() <= 256 ? 1 : alphabet.sigma() <= 65536 ? 2 : 4),
      packed_(k == 0 || k <= 64 / bits_),
      mask_(0) {
    if (packed_) {
        const std::size_t width = k_ * bits_;
        mask_ = width >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << width) - 1;
    }
}

TupleKey TupleKeyer::key(std::span<const Symbol> tuple) const {
    if (packed_) {
        std::uint64_t v = 0;
        for (const Symbol s : tuple) v = (v << bits_) | s;
        return v & mask_;
    }
    std::string out;
    out.reserve(tuple.size() * bytes_);
    for (const Symbol s : tuple) {
        for (unsigned b = bytes_; b-- > 0;) out.push_back(static_cast<char>((s >> (8 * b)) & 0xff));
    }
    return out;
}

std::vector<Symbol> TupleKeyer::unpack(const TupleKey& key) const {
    std::vector<Symbol> out(k_);
    if (const auto* packed = std::get_if<std::uint64_t>(&key)) {
        std::uint64_t v = *packed;
        const std::uint64_t symbol_mask = (std::uint64_t{1} << bits_) - 1;
        for (std::size_t i = k_; i-- > 0;) {
            out[i] = static_cast<Symbol>(v & symbol_mask);
            v >>= bits_;
        }
        return out;
    }
    const auto& bytes = std::get<std::string>(key);
    for (std::size_t i = 0; i < k_; ++i) {
        Symbol s = 0;
        for (unsigned b = 0; b < bytes_; ++b) {
            s = (s << 8) | static_cast<unsigned char>(bytes[i * bytes_ + b]);
        }
        out[i] = s;
    }
    return out;
}

std::size_t TupleKeyer::dense_slots(std::size_t max_slots) const noexcept {
    if (!packed_) return 0;
    const std::size_t width = k_ * bits_;
    if (width >= 63) return 0;
    const std::uint64_t slots = std::uint64_t{1} << width;
    return slots <= max_slots ? static_cast<std::size_t>(slots) : 0;
}

WindowRoller::WindowRoller(const TupleKeyer& keyer) : keyer_(&keyer) {
    if (!keyer.packed()) ring_.assign(keyer.k(), 0);
}

void WindowRoller::push(Symbol s) {
    ++pushed_;
    if (keyer_->packed_) {
        packed_ = ((packed_ << keyer_->bits_) | s) & keyer_->mask_;
        return;
    }
    ring_[head_] = s;
    head_ = (head_ + 1) % ring_.size();
}

void WindowRoller::reset() {
    packed_ = 0;
    head_ = 0;
    pushed_ = 0;
}

TupleKey WindowRoller::key() const {
    if (keyer_->packed()) return packed_;
    std::vector<Symbol> tuple(ring_.size());
    for (std::size_t i = 0; i < ring_.size(); ++i) tuple[i] = ring_[(head_ + i) % ring_.size()];
    return keyer_->key(tuple);
}

std::size_t window_count(std::size_t n, std::size_t k, Convention convention) noexcept {
    if (convention == Convention::cyclic) return n;
    return k > n ? 0 : n - k + 1;
}

std::vector<TupleKey> window_keys(const Sequence& seq, const TupleKeyer& keyer, Convention convention) {
    const std::size_t n = seq.size();
    const std::size_t k = keyer.k();
    if (convention == Convention::cyclic && n < k) {
        throw InputError("cyclic windows of length " + std::to_string(k) +
                         " need a sequence of at least that length, got " + std::to_string(n));
    }
    const std::size_t count = window_count(n, k, convention);
    std::vector<TupleKey> keys;
    keys.reserve(count);
    if (count == 0) return keys;
    if (k == 0) {
        keys.assign(count, keyer.key({}));
        return keys;
    }
    WindowRoller roller(keyer);
    const std::size_t pushes = count + k - 1;
    for (std::size_t i = 0; i < pushes; ++i) {
        roller.push(seq.cyclic_at(i));
        if (roller.ready()) keys.push_back(roller.key());
    }
    return keys;
}

}  // namespace cardbounds
