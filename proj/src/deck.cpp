#include "cardbounds/deck.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_set>

#include "cardbounds/debruijn.hpp"
#include "cardbounds/errors.hpp"

namespace cardbounds {

namespace {

constexpr std::string_view kSuitLetters = "SHDC";
constexpr std::array<std::string_view, 13> kRankNames = {"A", "2", "3", "4", "5", "6", "7",
                                                         "8", "9", "10", "J", "Q", "K"};
constexpr std::size_t kDrawOrder = 6;

}  // namespace

Card::Card(std::size_t id) {
    if (id >= kCount) throw InputError("card id " + std::to_string(id) + " out of range");
    id_ = static_cast<std::uint8_t>(id);
}

Card::Card(Suit suit, unsigned rank_index) : Card(static_cast<std::size_t>(suit) * 13 + rank_index) {
    if (rank_index >= 13) throw InputError("rank index " + std::to_string(rank_index) + " out of range");
}

Color Card::color() const noexcept {
    const auto s = suit();
    return s == Suit::hearts || s == Suit::diamonds ? Color::red : Color::black;
}

std::string Card::name() const {
    return std::string(1, kSuitLetters[id_ / 13]) + std::string(kRankNames[id_ % 13]);
}

std::optional<Card> Card::parse(std::string_view name) {
    if (name.size() < 2) return std::nullopt;
    const auto suit = kSuitLetters.find(name.front());
    if (suit == std::string_view::npos) return std::nullopt;
    const auto rank = std::find(kRankNames.begin(), kRankNames.end(), name.substr(1));
    if (rank == kRankNames.end()) return std::nullopt;
    return Card(suit * 13 + static_cast<std::size_t>(rank - kRankNames.begin()));
}

Deck Deck::factory_order() {
    Deck deck;
    for (std::size_t i = 0; i < kSize; ++i) deck.cards_[i] = Card(i);
    return deck;
}

Deck::Deck(std::span<const Card> cards) {
    if (cards.size() != kSize) {
        throw InputError("a deck has 52 cards, got " + std::to_string(cards.size()));
    }
    std::array<bool, kSize> present{};
    for (std::size_t i = 0; i < kSize; ++i) {
        if (present[cards[i].id()]) {
            throw InputError("card " + cards[i].name() + " appears twice (position " + std::to_string(i + 1) + ")");
        }
        present[cards[i].id()] = true;
        cards_[i] = cards[i];
    }
}

Deck Deck::parse(std::string_view text) {
    std::vector<Card> cards;
    std::size_t start = 0;
    while (start <= text.size()) {
        auto end = text.find(',', start);
        if (end == std::string_view::npos) end = text.size();
        auto token = text.substr(start, end - start);
        while (!token.empty() && (token.front() == ' ' || token.front() == '\n')) token.remove_prefix(1);
        while (!token.empty() && (token.back() == ' ' || token.back() == '\n' || token.back() == '\r')) {
            token.remove_suffix(1);
        }
        const auto card = Card::parse(token);
        if (!card) throw ParseError("unknown card \"" + std::string(token) + "\" at position " +
                                        std::to_string(cards.size() + 1),
                                    cards.size());
        cards.push_back(*card);
        start = end + 1;
    }
    return Deck(cards);
}

std::vector<Color> Deck::colors() const {
    std::vector<Color> out(kSize);
    for (std::size_t i = 0; i < kSize; ++i) out[i] = cards_[i].color();
    return out;
}

std::string Deck::color_string() const { return cardbounds::color_string(colors()); }

std::string Deck::serialize() const {
    std::string out;
    for (std::size_t i = 0; i < kSize; ++i) {
        if (i) out += ',';
        out += cards_[i].name();
    }
    return out;
}

std::size_t debruijn_deck_offset() {
    static const std::size_t offset = [] {
        const auto cycle = db_generate(DeBruijnSpec(2, kDrawOrder)).seq;
        const std::size_t n = cycle.size();
        for (std::size_t o = 0; o < n; ++o) {
            std::size_t reds = 0;
            for (std::size_t i = 0; i < Deck::kSize; ++i) reds += cycle.cyclic_at(o + i);
            if (reds != Deck::kSize / 2) continue;
            std::unordered_set<std::uint64_t> windows;
            for (std::size_t i = 0; i < Deck::kSize; ++i) {
                std::uint64_t w = 0;
                for (std::size_t j = 0; j < kDrawOrder; ++j) w = (w << 1) | cycle.cyclic_at(o + (i + j) % Deck::kSize);
                windows.insert(w);
            }
            if (windows.size() == Deck::kSize) return o;
        }
        throw std::logic_error("no balanced cyclically unique window in the order-6 cycle");
    }();
    return offset;
}

Deck arrange_deck_debruijn() {
    const auto cycle = db_generate(DeBruijnSpec(2, kDrawOrder)).seq;
    const std::size_t offset = debruijn_deck_offset();
    std::vector<Card> cards;
    cards.reserve(Deck::kSize);
    std::size_t next_red = 13;   // first heart
    std::size_t next_black = 0;  // first spade
    for (std::size_t i = 0; i < Deck::kSize; ++i) {
        if (cycle.cyclic_at(offset + i) == 1) {
            cards.emplace_back(next_red++);
        } else {
            cards.emplace_back(next_black);
            next_black = next_black == 12 ? 39 : next_black + 1;  // spades, then clubs
        }
    }
    return Deck(cards);
}

Deck cut_deck(const Deck& deck, std::size_t r) {
    if (r >= Deck::kSize) {
        throw ConfigError("cut offset must be in [0, 52), got " + std::to_string(r));
    }
    std::array<Card, Deck::kSize> cards;
    for (std::size_t i = 0; i < Deck::kSize; ++i) cards[i] = deck[(i + r) % Deck::kSize];
    return Deck(cards);
}

Deck shuffle_deck(const Deck& deck, Rng& rng) {
    std::array<Card, Deck::kSize> cards = deck.cards();
    for (std::size_t i = Deck::kSize - 1; i > 0; --i) {
        std::swap(cards[i], cards[rng.uniform_below(i + 1)]);
    }
    return Deck(cards);
}

std::vector<Card> cards_at(const Deck& deck, std::size_t position, std::size_t count) {
    std::vector<Card> out(count);
    for (std::size_t j = 0; j < count; ++j) out[j] = deck[(position + j) % Deck::kSize];
    return out;
}

std::vector<DrawCandidate> decode_draw(const Deck& deck, std::span<const Color> colors) {
    if (colors.empty() || colors.size() > Deck::kSize) {
        throw ConfigError("a draw lists between 1 and 52 colours, got " + std::to_string(colors.size()));
    }
    std::vector<DrawCandidate> out;
    for (std::size_t p = 0; p < Deck::kSize; ++p) {
        bool match = true;
        for (std::size_t j = 0; j < colors.size() && match; ++j) match = deck.color_at(p + j) == colors[j];
        if (match) out.push_back(DrawCandidate{p, cards_at(deck, p, colors.size())});
    }
    return out;
}

const DrawCandidate& guess_draw(std::span<const DrawCandidate> candidates, Rng& rng) {
    if (candidates.empty()) throw InputError("no candidate matches the listed colours");
    if (candidates.size() == 1) return candidates.front();
    return candidates[rng.uniform_below(candidates.size())];
}

std::vector<Color> parse_colors(std::string_view digits) {
    std::vector<Color> out;
    out.reserve(digits.size());
    for (std::size_t i = 0; i < digits.size(); ++i) {
        if (digits[i] != '0' && digits[i] != '1') {
            throw ParseError("colour at position " + std::to_string(i + 1) + " must be 0 (black) or 1 (red)", i);
        }
        out.push_back(digits[i] == '1' ? Color::red : Color::black);
    }
    return out;
}

std::string color_string(std::span<const Color> colors) {
    std::string out;
    out.reserve(colors.size());
    for (const auto c : colors) out.push_back(c == Color::red ? '1' : '0');
    return out;
}

}  // namespace cardbounds
