#include "cardbounds/textcore.hpp"

#include <algorithm>
#include <bit>
#include <limits>

#include "cardbounds/errors.hpp"

namespace cardbounds {

std::uint64_t Rng::bits(unsigned count) {
    if (count == 0) return 0;
    if (count >= 64) return engine_();
    if (buffered_ < count) {
        buffer_ = engine_();
        buffered_ = 64;
    }
    const std::uint64_t out = buffer_ & ((std::uint64_t{1} << count) - 1);
    buffer_ >>= count;
    buffered_ -= count;
    return out;
}

std::uint64_t Rng::uniform_below(std::uint64_t bound) {
    if (bound <= 1) return 0;
    const auto width = static_cast<unsigned>(std::bit_width(bound - 1));
    for (;;) {
        const std::uint64_t x = bits(width);
        if (x < bound) return x;
    }
}

Alphabet::Alphabet(std::uint64_t sigma) {
    if (sigma < 2) {
        throw ConfigError("alphabet size must be at least 2, got " + std::to_string(sigma));
    }
    if (sigma > std::numeric_limits<std::uint32_t>::max()) {
        throw ConfigError("alphabet size " + std::to_string(sigma) + " is too large");
    }
    sigma_ = static_cast<std::uint32_t>(sigma);
}

Sequence::Sequence(Alphabet alphabet, std::vector<Symbol> symbols)
    : alphabet_(alphabet), symbols_(std::move(symbols)) {
    for (std::size_t i = 0; i < symbols_.size(); ++i) {
        if (!alphabet_.contains(symbols_[i])) {
            throw ParseError("symbol " + std::to_string(symbols_[i]) + " at position " +
                                 std::to_string(i + 1) + " is outside the alphabet of size " +
                                 std::to_string(alphabet_.sigma()),
                             i);
        }
    }
}

namespace {

int digit_value(char c) {
    const auto pos = kDigitAlphabet.find(c);
    return pos == std::string_view::npos ? -1 : static_cast<int>(pos);
}

std::string_view strip_trailing_newline(std::string_view raw) {
    if (raw.ends_with("\r\n")) return raw.substr(0, raw.size() - 2);
    if (raw.ends_with('\n')) return raw.substr(0, raw.size() - 1);
    return raw;
}

std::string describe_char(char c) {
    const auto u = static_cast<unsigned char>(c);
    if (u >= 0x20 && u < 0x7f) return std::string("'") + c + "'";
    return "byte " + std::to_string(u);
}

}  // namespace

Sequence parse_sequence(std::string_view raw, InputMode mode, std::optional<std::uint64_t> sigma) {
    if (sigma && *sigma < 2) {
        throw ConfigError("alphabet size must be at least 2, got " + std::to_string(*sigma));
    }
    std::vector<Symbol> symbols;

    if (mode == InputMode::raw_bytes) {
        const std::uint64_t limit = sigma.value_or(256);
        symbols.reserve(raw.size());
        for (std::size_t i = 0; i < raw.size(); ++i) {
            const auto byte = static_cast<unsigned char>(raw[i]);
            if (byte >= limit) {
                throw ParseError("byte value " + std::to_string(byte) + " at position " +
                                     std::to_string(i + 1) + " is outside the alphabet of size " +
                                     std::to_string(limit),
                                 i);
            }
            symbols.push_back(byte);
        }
        return Sequence(Alphabet(limit), std::move(symbols));
    }

    const auto text = strip_trailing_newline(raw);
    symbols.reserve(text.size());
    for (std::size_t i = 0; i < text.size(); ++i) {
        const int v = digit_value(text[i]);
        if (v < 0 || (sigma && static_cast<std::uint64_t>(v) >= *sigma)) {
            throw ParseError("character " + describe_char(text[i]) + " at position " +
                                 std::to_string(i + 1) + " is outside the alphabet" +
                                 (sigma ? " of size " + std::to_string(*sigma) : std::string()),
                             i);
        }
        symbols.push_back(static_cast<Symbol>(v));
    }
    std::uint64_t effective = 2;
    if (sigma) {
        effective = *sigma;
    } else if (!symbols.empty()) {
        effective = std::max<std::uint64_t>(2, *std::max_element(symbols.begin(), symbols.end()) + 1);
    }
    return Sequence(Alphabet(effective), std::move(symbols));
}

std::string to_digit_text(std::span<const Symbol> symbols) {
    std::string out;
    out.reserve(symbols.size());
    for (const Symbol s : symbols) {
        if (s >= kDigitAlphabet.size()) {
            throw ConfigError("symbol " + std::to_string(s) + " has no digit-text form");
        }
        out.push_back(kDigitAlphabet[s]);
    }
    return out;
}

std::string to_digit_text(const Sequence& seq) {
    if (seq.sigma() > kDigitAlphabet.size()) {
        throw ConfigError("digit-text supports alphabets of at most 62 symbols");
    }
    return to_digit_text(seq.symbols());
}

Sequence random_sequence(std::size_t n, Alphabet alphabet, Rng& rng) {
    std::vector<Symbol> symbols(n);
    for (auto& s : symbols) s = static_cast<Symbol>(rng.uniform_below(alphabet.sigma()));
    return Sequence(alphabet, std::move(symbols));
}

Sequence random_sequence(std::size_t n, Alphabet alphabet, const RngSpec& spec) {
    Rng rng(spec);
    return random_sequence(n, alphabet, rng);
}

}  // namespace cardbounds
