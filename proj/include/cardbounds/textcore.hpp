#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cardbounds/rng.hpp"

namespace cardbounds {

/// Dense symbol code in [0, sigma).
using Symbol = std::uint32_t;

/// Alphabet of size sigma >= 2.
class Alphabet {
public:
    explicit Alphabet(std::uint64_t sigma);

    std::uint32_t sigma() const noexcept { return sigma_; }
    bool contains(Symbol s) const noexcept { return s < sigma_; }

    friend bool operator==(const Alphabet&, const Alphabet&) = default;

private:
    std::uint32_t sigma_;
};

/// Immutable sigma-ary string.
class Sequence {
public:
    explicit Sequence(Alphabet alphabet) : alphabet_(alphabet) {}

    /// Throws ParseError if a symbol lies outside the alphabet.
    Sequence(Alphabet alphabet, std::vector<Symbol> symbols);

    const Alphabet& alphabet() const noexcept { return alphabet_; }
    std::uint32_t sigma() const noexcept { return alphabet_.sigma(); }
    std::size_t size() const noexcept { return symbols_.size(); }
    bool empty() const noexcept { return symbols_.empty(); }

    std::span<const Symbol> symbols() const noexcept { return symbols_; }
    Symbol operator[](std::size_t i) const noexcept { return symbols_[i]; }

    /// Symbol at cyclic position i mod n. Requires a non-empty sequence.
    Symbol cyclic_at(std::size_t i) const noexcept { return symbols_[i % symbols_.size()]; }

    auto begin() const noexcept { return symbols_.begin(); }
    auto end() const noexcept { return symbols_.end(); }

    friend bool operator==(const Sequence&, const Sequence&) = default;

private:
    Alphabet alphabet_;
    std::vector<Symbol> symbols_;
};

enum class InputMode {
    raw_bytes,   ///< each byte is one symbol; default sigma 256
    digit_text,  ///< one symbol per character of 0-9A-Za-z
};

/// Characters used by digit-text, in code order.
inline constexpr std::string_view kDigitAlphabet =
    "0123456789ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz";

/// Parse raw input into a Sequence.
///
/// In digit-text mode a single trailing "\n" or "\r\n" is ignored and, when
/// `sigma` is absent, the alphabet is the smallest one (at least 2) that holds
/// every symbol present. In raw-bytes mode the default sigma is 256.
Sequence parse_sequence(std::string_view raw, InputMode mode,
                        std::optional<std::uint64_t> sigma = std::nullopt);

/// Inverse of digit-text parsing. Throws ConfigError when sigma > 62.
std::string to_digit_text(const Sequence& seq);
std::string to_digit_text(std::span<const Symbol> symbols);

/// n i.i.d. uniform symbols drawn from the stream.
Sequence random_sequence(std::size_t n, Alphabet alphabet, Rng& rng);
Sequence random_sequence(std::size_t n, Alphabet alphabet, const RngSpec& spec);

}  // namespace cardbounds
