#include <catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>

#include "cardbounds/entropy.hpp"
#include "cardbounds/errors.hpp"
#include "cardbounds/sources.hpp"

using namespace cardbounds;

namespace {

Sequence digits(std::string_view text, std::uint32_t sigma) {
    return parse_sequence(text, InputMode::digit_text, sigma);
}

}  // namespace

TEST_CASE("deterministic source reproduces its string", "[sources]") {
    const auto s = digits("0001011100", 2);
    const auto source = DeterministicMarkovSource::build(s, 3);
    CHECK(source.order() == 3);
    CHECK(source.transition_count() == 7);
    CHECK(source.generate(s.size()) == s);
    CHECK(to_digit_text(source.generate(5)) == "00010");
    CHECK(source.generate(0).empty());
    CHECK(*source.max_length() == s.size());
    CHECK_THROWS_AS(source.generate(s.size() + 1), GenerationError);

    const std::vector<Symbol> ctx{0, 1, 0};
    CHECK(source.successor(ctx) == Symbol{1});
    CHECK(source.successor(std::vector<Symbol>{1, 0, 1}) == Symbol{1});
    CHECK_FALSE(source.successor(std::vector<Symbol>{1, 1, 1, 1}).has_value());
}

TEST_CASE("repeated windows are reported with 1-based positions", "[sources][errors]") {
    try {
        DeterministicMarkovSource::build(digits("000", 2), 1);
        FAIL("expected ConstructionError");
    } catch (const ConstructionError& e) {
        CHECK(std::string(e.what()) == "k-tuple [0] repeats at positions 1,2");
        CHECK(e.first_index() == 0);
        CHECK(e.second_index() == 1);
    }
    CHECK_THROWS_AS(DeterministicMarkovSource::build(digits("01", 2), 2), InputError);
    CHECK_THROWS_AS(DeterministicMarkovSource::build(digits("01", 2), 0), ConfigError);
}

TEST_CASE("cyclic completion extends a De Bruijn string forever", "[sources]") {
    const auto s = digits("00010111", 2);
    const auto source = DeterministicMarkovSource::build(s, 3, MarkovCompletion::cyclic);
    CHECK(source.cyclic());
    CHECK_FALSE(source.max_length().has_value());
    CHECK(to_digit_text(source.generate(20)) == "00010111000101110001");
    // 0010 repeats cyclically even though linear windows are distinct
    CHECK_THROWS_AS(DeterministicMarkovSource::build(digits("00100", 2), 2, MarkovCompletion::cyclic),
                    ConstructionError);
}

TEST_CASE("sampled repeat-free strings rebuild exactly", "[sources][property]") {
    Rng rng(RngSpec{10, 0});
    for (int trial = 0; trial < 500; ++trial) {
        const auto sigma = static_cast<std::uint32_t>(2 + rng.uniform_below(3));
        const std::size_t k = 2 + rng.uniform_below(7);
        const std::size_t m = k + 1 + rng.uniform_below(30);
        RepeatFreeSampler sampler(Alphabet(sigma), k);
        const auto outcome = sampler.sample(m, rng, 200000);
        if (!outcome.sequence) continue;
        const auto& s = *outcome.sequence;
        CHECK(match_count(s, k) == 0);
        const auto source = DeterministicMarkovSource::build(s, k);
        CHECK(generate(SourceModel{source}, m, RngSpec{0, 0}) == s);
        CHECK(hk(s, k).h_value == 0.0);
    }
}

TEST_CASE("sampler gives up after its attempt budget", "[sources]") {
    RepeatFreeSampler sampler(Alphabet(2), 2);
    Rng rng(RngSpec{3, 3});
    const auto outcome = sampler.sample(10, rng, 50);
    CHECK_FALSE(outcome.sequence.has_value());
    CHECK(outcome.attempts == 50);
}

TEST_CASE("memoryless source output is seed-determined", "[sources]") {
    const MemorylessSource source(Alphabet(4));
    const auto a = generate(source, 100, RngSpec{5, 1});
    CHECK(a == generate(SourceModel{source}, 100, RngSpec{5, 1}));
    CHECK(a != generate(source, 100, RngSpec{5, 2}));
    CHECK(a.sigma() == 4);
}

TEST_CASE("entropy of generated output matches the source type", "[sources][entropy]") {
    const auto cycle = digits("0000100110101111", 2);
    const auto markov = DeterministicMarkovSource::build(cycle, 4, MarkovCompletion::cyclic);
    const auto long_prefix = markov.generate(5000);
    for (std::size_t k = 4; k <= 8; ++k) CHECK(hk(long_prefix, k).h_value == 0.0);

    // h0 of a memoryless sample: the plug-in estimate is biased low by about
    // (sigma - 1) / (2 n ln 2), far below the 3 SE band used here.
    constexpr std::size_t n = 200000;
    for (const std::uint32_t sigma : {2u, 4u, 16u}) {
        const auto sample = generate(MemorylessSource(Alphabet(sigma)), n, RngSpec{sigma, 0});
        std::vector<double> freq(sigma, 0.0);
        for (const auto x : sample) freq[x] += 1.0 / n;
        double second_moment = 0.0;
        for (const double p : freq) second_moment += p * std::log2(p) * std::log2(p);
        const double h = h0(sample);
        const double se = std::sqrt(std::max(0.0, second_moment - h * h) / n) + (sigma - 1) / (2.0 * n * std::log(2.0));
        INFO("sigma=" << sigma << " h0=" << h);
        CHECK(std::abs(h - std::log2(sigma)) <= 3 * se);
    }
}
