#pragma once

// Playing-card deck for the colour-reading card trick.
//
// Cards are named suit letter then rank: "SA", "S2", ..., "S10", "SJ", "SQ",
// "SK", then H, D and C. Hearts and diamonds are red. A deck serialises as the
// comma-separated list of its 52 names, top card first; its colour string is
// digit-text with 0 = black and 1 = red.

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cardbounds/rng.hpp"

namespace cardbounds {

enum class Color : std::uint8_t { black = 0, red = 1 };

enum class Suit : std::uint8_t { spades, hearts, diamonds, clubs };

/// Card identity 0..51: suit * 13 + rank index (ace = 0, king = 12).
class Card {
public:
    static constexpr std::size_t kCount = 52;

    constexpr Card() = default;
    explicit Card(std::size_t id);
    Card(Suit suit, unsigned rank_index);

    std::size_t id() const noexcept { return id_; }
    Suit suit() const noexcept { return static_cast<Suit>(id_ / 13); }
    unsigned rank_index() const noexcept { return static_cast<unsigned>(id_ % 13); }
    Color color() const noexcept;
    std::string name() const;

    static std::optional<Card> parse(std::string_view name);

    friend bool operator==(const Card&, const Card&) = default;

private:
    std::uint8_t id_ = 0;
};

/// A permutation of all 52 cards, top card first. Cutting is rotation.
class Deck {
public:
    static constexpr std::size_t kSize = Card::kCount;

    /// Spades, hearts, diamonds, clubs, each ace to king.
    static Deck factory_order();

    /// Throws InputError unless `cards` is a permutation of the 52 cards.
    explicit Deck(std::span<const Card> cards);

    /// Parse the comma-separated serialisation.
    static Deck parse(std::string_view text);

    const std::array<Card, kSize>& cards() const noexcept { return cards_; }
    const Card& operator[](std::size_t i) const noexcept { return cards_[i]; }
    Color color_at(std::size_t i) const noexcept { return cards_[i % kSize].color(); }

    std::vector<Color> colors() const;
    std::string color_string() const;
    std::string serialize() const;

    friend bool operator==(const Deck&, const Deck&) = default;

private:
    Deck() = default;

    std::array<Card, kSize> cards_{};
};

/// Offset into the canonical binary order-6 De Bruijn cycle at which the
/// prearranged deck's 52 colours are taken: the first offset whose 52-symbol
/// window holds 26 ones and has 52 distinct cyclic 6-windows.
std::size_t debruijn_deck_offset();

/// The trick's prearranged deck. Its colour string is the 52-symbol window of
/// the canonical order-6 cycle at debruijn_deck_offset() (1 = red); red slots
/// receive hearts then diamonds ace to king, black slots spades then clubs.
/// Every 6-window of the colour string, read cyclically, is distinct, so any
/// 6 consecutive cards after any cut are identified by their colours.
Deck arrange_deck_debruijn();

/// Move the top r cards to the bottom. Requires 0 <= r < 52.
Deck cut_deck(const Deck& deck, std::size_t r);

/// Uniformly random permutation (Fisher-Yates driven by `rng`).
Deck shuffle_deck(const Deck& deck, Rng& rng);

struct DrawCandidate {
    std::size_t position = 0;  ///< 0-based start in the deck, read cyclically
    std::vector<Card> cards;
};

/// Every cyclic position whose colours read `colors`, in position order.
/// Requires 1 <= colors.size() <= 52.
std::vector<DrawCandidate> decode_draw(const Deck& deck, std::span<const Color> colors);

/// The cards at `position`..`position + count` read cyclically.
std::vector<Card> cards_at(const Deck& deck, std::size_t position, std::size_t count);

/// The magician's pick: uniform over the candidates. Requires a non-empty list.
const DrawCandidate& guess_draw(std::span<const DrawCandidate> candidates, Rng& rng);

std::vector<Color> parse_colors(std::string_view digits);
std::string color_string(std::span<const Color> colors);

}  // namespace cardbounds
