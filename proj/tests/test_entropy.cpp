#include <catch_amalgamated.hpp>

#include <cmath>

#include "cardbounds/entropy.hpp"
#include "cardbounds/errors.hpp"
#include "oracles.hpp"

using namespace cardbounds;

namespace {

Sequence digits(std::string_view text, std::uint32_t sigma) {
    return parse_sequence(text, InputMode::digit_text, sigma);
}

}  // namespace

TEST_CASE("h0 of small strings", "[entropy]") {
    CHECK(h0(digits("0001", 2)) == Catch::Approx(0.8112781244591328).epsilon(1e-15));
    CHECK(h0(digits("0011", 2)) == 1.0);
    CHECK(h0(digits("0000", 2)) == 0.0);
    CHECK(h0(digits("", 2)) == 0.0);
    CHECK(h0(digits("0123", 4)) == 2.0);
}

TEST_CASE("hk on hand-worked strings", "[entropy]") {
    SECTION("linear 0011") {
        const auto s = digits("0011", 2);
        CHECK(hk(s, 0).h_value == 1.0);
        // contexts 0 -> "01", 1 -> "1": (2 * 1 + 1 * 0) / 4
        CHECK(hk(s, 1).h_value == 0.5);
        CHECK(hk(s, 2).h_value == 0.0);
        CHECK(hk(s, 2).zero);
        CHECK(hk(s, 1).total_bits == 2.0);
    }
    SECTION("cyclic 0011") {
        const auto s = digits("0011", 2);
        // 0 -> {0,1}, 1 -> {1,0}: two contexts each with one bit of uncertainty
        CHECK(hk(s, 1, Convention::cyclic).h_value == 1.0);
        CHECK(hk(s, 2, Convention::cyclic).h_value == 0.0);
        CHECK(hk(s, 2, Convention::cyclic).context_count == 4);
    }
    SECTION("k at or above n has no contexts") {
        const auto s = digits("0110", 2);
        const auto r = hk(s, 4);
        CHECK(r.h_value == 0.0);
        CHECK(r.context_count == 0);
        CHECK(r.zero);
        CHECK(hk(s, 9).h_value == 0.0);
    }
    SECTION("empty input") {
        const auto r = hk(digits("", 2), 3);
        CHECK(r.n == 0);
        CHECK(r.h_value == 0.0);
    }
    SECTION("k = 0 equals h0") {
        const auto s = digits("0120210", 3);
        CHECK(hk(s, 0).h_value == h0(s));
        CHECK(hk(s, 0, Convention::cyclic).h_value == h0(s));
    }
}

TEST_CASE("cyclic convention rejects k above n", "[entropy][errors]") {
    const auto s = digits("01", 2);
    CHECK_THROWS_AS(hk(s, 3, Convention::cyclic), InputError);
    CHECK_THROWS_AS(hk_bruteforce(s, 3, Convention::cyclic), InputError);
    CHECK_THROWS_AS(match_count(s, 3, Convention::cyclic), InputError);
    CHECK_NOTHROW(hk(s, 2, Convention::cyclic));
}

TEST_CASE("match_count requires k of at least one", "[entropy][errors]") {
    CHECK_THROWS_AS(match_count(digits("0101", 2), 0), ConfigError);
}

TEST_CASE("hk agrees bit for bit with the brute-force scan", "[entropy][property]") {
    Rng rng(RngSpec{31337, 0});
    for (int trial = 0; trial < 1500; ++trial) {
        const auto sigma = static_cast<std::uint32_t>(2 + rng.uniform_below(3));
        const auto n = rng.uniform_below(65);
        const auto k = rng.uniform_below(9);
        const auto conv = rng.coin() ? Convention::cyclic : Convention::linear;
        const auto s = random_sequence(n, Alphabet(sigma), rng);
        if (conv == Convention::cyclic && n < k) continue;
        const auto fast = hk(s, k, conv);
        const auto slow = hk_bruteforce(s, k, conv);
        INFO("sigma=" << sigma << " n=" << n << " k=" << k << " text=" << to_digit_text(s));
        CHECK(fast.h_value == slow.h_value);
        CHECK(fast.context_count == slow.context_count);
        CHECK(fast.zero == slow.zero);
    }
}

TEST_CASE("hk matches an independent map-based oracle", "[entropy][property]") {
    for (std::uint64_t seed = 0; seed < 400; ++seed) {
        const std::uint32_t sigma = 2 + seed % 4;
        const std::size_t n = 1 + (seed * 7) % 90;
        const std::size_t k = seed % 7;
        const auto raw = oracle::random_symbols(n, sigma, seed);
        const Sequence s(Alphabet(sigma), raw);
        for (const bool cyclic : {false, true}) {
            if (cyclic && n < k) continue;
            const auto conv = cyclic ? Convention::cyclic : Convention::linear;
            CHECK(hk(s, k, conv).h_value == Catch::Approx(oracle::entropy_k(raw, k, cyclic)).margin(1e-12));
        }
    }
}

TEST_CASE("cyclic hk is nonincreasing in k", "[entropy][property]") {
    Rng rng(RngSpec{4, 4});
    for (int trial = 0; trial < 200; ++trial) {
        const auto sigma = static_cast<std::uint32_t>(2 + rng.uniform_below(3));
        const auto n = 1 + rng.uniform_below(60);
        const auto s = random_sequence(n, Alphabet(sigma), rng);
        double previous = hk(s, 0, Convention::cyclic).h_value;
        for (std::size_t k = 1; k <= std::min<std::size_t>(n, 8); ++k) {
            const double h = hk(s, k, Convention::cyclic).h_value;
            CHECK(h <= previous + 1e-12);
            previous = h;
        }
    }
}

TEST_CASE("zero flag coincides with the value being zero", "[entropy][property]") {
    Rng rng(RngSpec{8, 8});
    for (int trial = 0; trial < 300; ++trial) {
        const auto s = random_sequence(rng.uniform_below(40), Alphabet(2), rng);
        const auto r = hk(s, rng.uniform_below(6));
        CHECK(r.zero == (r.h_value == 0.0));
        CHECK(r.h_value >= 0.0);
        CHECK(r.h_value <= 1.0);
    }
}

TEST_CASE("match_count against all-pairs comparison", "[entropy][property]") {
    for (std::uint64_t seed = 0; seed < 300; ++seed) {
        const std::uint32_t sigma = 2 + seed % 3;
        const std::size_t n = 1 + seed % 70;
        const std::size_t k = 1 + seed % 6;
        const auto raw = oracle::random_symbols(n, sigma, seed + 1000);
        const Sequence s(Alphabet(sigma), raw);
        CHECK(match_count(s, k) == oracle::pair_count(raw, k, false));
        if (n >= k) CHECK(match_count(s, k, Convention::cyclic) == oracle::pair_count(raw, k, true));
    }
}

TEST_CASE("linear hk is zero exactly when no k-window followed by a symbol repeats", "[entropy][property]") {
    // A zero match count over the (k+1)-windows forces every context to be deterministic.
    for (std::uint64_t seed = 0; seed < 300; ++seed) {
        const auto raw = oracle::random_symbols(20 + seed % 30, 2, seed + 77);
        const Sequence s(Alphabet(2), raw);
        const std::size_t k = 3 + seed % 5;
        if (match_count(s, k) == 0) CHECK(hk(s, k).h_value == 0.0);
        if (hk(s, k).h_value > 0.0) CHECK(match_count(s, k) > 0);
    }
}

TEST_CASE("first_match reports the earliest repeated window", "[entropy]") {
    const auto s = digits("0100101", 2);
    const auto m = first_match(s, 3);
    REQUIRE(m.has_value());
    CHECK(m->first == 0);
    CHECK(m->second == 3);
    CHECK_FALSE(first_match(digits("0011", 2), 2).has_value());
}

TEST_CASE("context table keeps first-occurrence order", "[entropy]") {
    const auto t = ContextTable::build(digits("10010", 2), 1, Convention::linear);
    REQUIRE(t.size() == 2);
    CHECK(t.entries()[0].context == std::vector<Symbol>{1});
    CHECK(t.entries()[1].context == std::vector<Symbol>{0});
    CHECK(t.entries()[1].successors == std::vector<std::uint64_t>{1, 1});
    CHECK_FALSE(t.all_deterministic());
    const std::vector<Symbol> one{1};
    REQUIRE(t.find(one) != nullptr);
    CHECK(t.find(one)->deterministic());
}

TEST_CASE("compressibility report thresholds", "[entropy]") {
    const auto s = digits("0011", 2);
    const auto rows = compressibility_report(s, 3, 0.5);
    REQUIRE(rows.size() == 4);
    CHECK(rows[0].log_sigma_n == 2.0);
    CHECK_FALSE(rows[1].k_ge_log);
    CHECK(rows[2].k_ge_log);
    CHECK_FALSE(rows[2].k_ge_one_plus_eps);
    CHECK(rows[3].k_ge_one_plus_eps);
    CHECK_FALSE(rows[3].k_ge_two_plus_eps);
    CHECK(rows[2].report.h_value == 0.0);
}

TEST_CASE("random binary string of length 100 has zero H_20 with high probability", "[entropy][property]") {
    constexpr int trials = 4000;
    int zeros = 0;
    for (int i = 0; i < trials; ++i) {
        zeros += hk(random_sequence(100, Alphabet(2), RngSpec{555, static_cast<std::uint64_t>(i)}), 20).zero;
    }
    const double p = static_cast<double>(zeros) / trials;
    const double bound = 1.0 - 4950.0 / 1048576.0;
    CHECK(p >= bound - 3.0 * std::sqrt(bound * (1 - bound) / trials));
}
