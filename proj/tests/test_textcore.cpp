#include <catch_amalgamated.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <set>

#include "cardbounds/errors.hpp"
#include "cardbounds/textcore.hpp"

using namespace cardbounds;

TEST_CASE("digit-text parsing maps characters to codes", "[textcore][parse]") {
    const auto s = parse_sequence("0011", InputMode::digit_text, 2);
    CHECK(s.sigma() == 2);
    CHECK(std::vector<Symbol>(s.begin(), s.end()) == std::vector<Symbol>{0, 0, 1, 1});

    const auto t = parse_sequence("012", InputMode::digit_text, 3);
    CHECK(std::vector<Symbol>(t.begin(), t.end()) == std::vector<Symbol>{0, 1, 2});

    const auto letters = parse_sequence("9Aaz", InputMode::digit_text, 62);
    CHECK(std::vector<Symbol>(letters.begin(), letters.end()) == std::vector<Symbol>{9, 10, 36, 61});
}

TEST_CASE("out-of-alphabet digit reports its 1-based position", "[textcore][parse]") {
    try {
        parse_sequence("2", InputMode::digit_text, 2);
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.index() == 0);
        CHECK(std::string(e.what()).find("position 1") != std::string::npos);
    }
    CHECK_THROWS_AS(parse_sequence("01x", InputMode::digit_text, 2), ParseError);
    CHECK_THROWS_AS(parse_sequence("01-", InputMode::digit_text, std::nullopt), ParseError);
}

TEST_CASE("sigma below 2 is a configuration error", "[textcore][parse]") {
    CHECK_THROWS_AS(parse_sequence("0", InputMode::digit_text, 1), ConfigError);
    CHECK_THROWS_AS(Alphabet(1), ConfigError);
    CHECK_THROWS_AS(Alphabet(0), ConfigError);
}

TEST_CASE("trailing newline is ignored and sigma is inferred", "[textcore][parse]") {
    const auto s = parse_sequence("0120\n", InputMode::digit_text);
    CHECK(s.size() == 4);
    CHECK(s.sigma() == 3);
    CHECK(parse_sequence("0000\r\n", InputMode::digit_text).sigma() == 2);
    CHECK(parse_sequence("", InputMode::digit_text).empty());
}

TEST_CASE("raw bytes default to a 256-symbol alphabet", "[textcore][parse]") {
    const std::string raw("\x00\xff\x41", 3);
    const auto s = parse_sequence(raw, InputMode::raw_bytes);
    CHECK(s.sigma() == 256);
    CHECK(std::vector<Symbol>(s.begin(), s.end()) == std::vector<Symbol>{0, 255, 0x41});
    CHECK_THROWS_AS(parse_sequence(raw, InputMode::raw_bytes, 200), ParseError);
}

TEST_CASE("digit-text serialisation inverts parsing", "[textcore][property]") {
    Rng rng(RngSpec{99, 0});
    for (int trial = 0; trial < 200; ++trial) {
        const auto sigma = 2 + rng.uniform_below(61);
        const auto n = rng.uniform_below(80);
        std::string text;
        for (std::uint64_t i = 0; i < n; ++i) text.push_back(kDigitAlphabet[rng.uniform_below(sigma)]);
        const auto seq = parse_sequence(text, InputMode::digit_text, sigma);
        CHECK(to_digit_text(seq) == text);
    }
}

TEST_CASE("rng streams are reproducible and distinct", "[textcore][rng]") {
    const Alphabet binary(2);
    CHECK(random_sequence(0, binary, RngSpec{1, 2}).empty());
    CHECK(random_sequence(500, binary, RngSpec{7, 3}) == random_sequence(500, binary, RngSpec{7, 3}));
    CHECK(random_sequence(500, binary, RngSpec{7, 3}) != random_sequence(500, binary, RngSpec{7, 4}));
    CHECK(random_sequence(500, binary, RngSpec{7, 3}) != random_sequence(500, binary, RngSpec{8, 3}));
    CHECK(derive_stream_seed({0, 0}) != derive_stream_seed({0, 1}));
}

TEST_CASE("uniform_below stays in range for awkward bounds", "[textcore][rng]") {
    Rng rng(RngSpec{5, 5});
    for (const std::uint64_t bound : {1ULL, 2ULL, 3ULL, 7ULL, 52ULL, 1000ULL, (1ULL << 63) + 1}) {
        for (int i = 0; i < 200; ++i) CHECK(rng.uniform_below(bound) < bound);
    }
}

TEST_CASE("binary symbol frequency within 3 binomial standard errors", "[textcore][rng]") {
    constexpr std::size_t n = 100000;
    const auto s = random_sequence(n, Alphabet(2), RngSpec{2024, 0});
    const auto zeros = static_cast<double>(std::count(s.begin(), s.end(), Symbol{0}));
    CHECK(std::abs(zeros / n - 0.5) <= 3.0 * std::sqrt(0.25 / n));
}

TEST_CASE("streams pass a chi-square uniformity test at 1e-6", "[textcore][rng][property]") {
    // Upper 1e-6 quantiles of the chi-square distribution (scipy.stats.chi2.isf).
    const std::array<std::pair<std::uint32_t, double>, 3> cases = {{{2, 23.928126976934827},
                                                                     {4, 30.664849706213598},
                                                                     {10, 44.81093787068782}}};
    constexpr std::size_t n = 100000;
    for (const auto& [sigma, critical] : cases) {
        for (std::uint64_t stream = 0; stream < 8; ++stream) {
            const auto s = random_sequence(n, Alphabet(sigma), RngSpec{123456789, stream});
            std::vector<double> counts(sigma, 0.0);
            for (const auto x : s) counts[x] += 1.0;
            const double expected = static_cast<double>(n) / sigma;
            double chi = 0.0;
            for (const double c : counts) chi += (c - expected) * (c - expected) / expected;
            INFO("sigma=" << sigma << " stream=" << stream);
            CHECK(chi < critical);
        }
    }
}

TEST_CASE("sequence rejects symbols outside its alphabet", "[textcore]") {
    CHECK_THROWS_AS(Sequence(Alphabet(3), {0, 1, 3}), ParseError);
    const Sequence s(Alphabet(3), {0, 1, 2});
    CHECK(s.cyclic_at(4) == 1);
}
