#include "cardbounds/experiments.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <thread>

#include "cardbounds/deck.hpp"
#include "cardbounds/entropy.hpp"
#include "cardbounds/errors.hpp"
#include "cardbounds/sources.hpp"

namespace cardbounds {

namespace {

constexpr double kSigmas = 3.0;
constexpr std::size_t kPrearrangedOrder = 6;

constexpr std::array<std::pair<ExperimentKind, std::string_view>, 6> kNames = {{
    {ExperimentKind::matches, "matches"},
    {ExperimentKind::expected_entropy, "expected-entropy"},
    {ExperimentKind::zero_prob, "zero-prob"},
    {ExperimentKind::trick_shuffled, "trick-shuffled"},
    {ExperimentKind::trick_prearranged, "trick-prearranged"},
    {ExperimentKind::distinguish, "distinguish"},
}};

// ---------------------------------------------------------------------------
// Trial execution

/// Runs trial(i, scratch) for every i in [0, trials) on `workers` threads and
/// returns the outcomes by index. If trials throw, the exception from the
/// lowest failing index is rethrown; every lower index is guaranteed to have
/// run, so the reported failure does not depend on scheduling.
template <typename Outcome, typename MakeScratch, typename TrialFn>
std::vector<Outcome> run_trials(std::uint64_t trials, unsigned workers, MakeScratch make_scratch,
                                TrialFn trial) {
    std::vector<Outcome> outcomes(trials);
    constexpr std::uint64_t kChunk = 64;
    std::atomic<std::uint64_t> next{0};
    std::atomic<std::uint64_t> first_failure{std::numeric_limits<std::uint64_t>::max()};
    std::mutex error_mutex;
    std::exception_ptr error;

    auto work = [&] {
        auto scratch = make_scratch();
        for (;;) {
            const std::uint64_t begin = next.fetch_add(kChunk);
            if (begin >= trials) return;
            const std::uint64_t end = std::min(begin + kChunk, trials);
            for (std::uint64_t i = begin; i < end; ++i) {
                if (i > first_failure.load()) return;
                try {
                    outcomes[i] = trial(i, scratch);
                } catch (...) {
                    std::lock_guard lock(error_mutex);
                    if (i < first_failure.load()) {
                        first_failure.store(i);
                        error = std::current_exception();
                    }
                    return;
                }
            }
        }
    };

    const auto threads = static_cast<unsigned>(std::min<std::uint64_t>(std::max(1u, workers), trials));
    if (threads <= 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(threads);
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work);
    }
    if (error) std::rethrow_exception(error);
    return outcomes;
}

struct NoScratch {};

// ---------------------------------------------------------------------------
// Statistics

struct Estimate {
    double mean = 0.0;
    double standard_error = 0.0;
};

Estimate sample_mean(const std::vector<double>& values) {
    Estimate e;
    const auto t = static_cast<double>(values.size());
    if (values.empty()) return e;
    double sum = 0.0;
    for (const double v : values) sum += v;
    e.mean = sum / t;
    if (values.size() > 1) {
        double squares = 0.0;
        for (const double v : values) squares += (v - e.mean) * (v - e.mean);
        e.standard_error = std::sqrt(squares / (t - 1.0) / t);
    }
    return e;
}

Estimate proportion(std::uint64_t hits, std::uint64_t trials) {
    Estimate e;
    if (trials == 0) return e;
    const auto t = static_cast<double>(trials);
    e.mean = static_cast<double>(hits) / t;
    e.standard_error = std::sqrt(e.mean * (1.0 - e.mean) / t);
    return e;
}

BoundCheck make_check(std::string label, Estimate estimate, double bound, BoundDirection direction,
                      bool vacuous = false, double standard_error_floor = 0.0) {
    BoundCheck c;
    c.label = std::move(label);
    c.estimate = estimate.mean;
    c.standard_error = estimate.standard_error;
    c.bound = bound;
    c.direction = direction;
    c.margin = kSigmas * std::max(estimate.standard_error, standard_error_floor);
    c.vacuous = vacuous;
    switch (direction) {
        case BoundDirection::at_most:
            c.passed = c.estimate <= bound + c.margin;
            break;
        case BoundDirection::at_least:
            c.passed = c.estimate >= bound - c.margin;
            break;
        case BoundDirection::within:
            c.passed = std::abs(c.estimate - bound) <= c.margin;
            break;
    }
    if (vacuous) c.passed = true;
    return c;
}

/// An exact requirement: the estimate must equal `bound`, no margin.
BoundCheck exact_check(std::string label, double estimate, double bound, bool vacuous = false) {
    return make_check(std::move(label), Estimate{estimate, 0.0}, bound, BoundDirection::within, vacuous);
}

double pairs(double n) { return n * (n - 1.0) / 2.0; }

std::string format_number(double v) {
    std::string s = std::to_string(v);
    s.erase(s.find_last_not_of('0') + 1);
    if (!s.empty() && s.back() == '.') s.pop_back();
    return s;
}

ExperimentResult start_result(const ExperimentConfig& config) {
    ExperimentResult r;
    r.config = resolve(config);
    r.trials = r.config.trials;
    return r;
}

void finish(ExperimentResult& r, std::chrono::steady_clock::time_point started) {
    const auto& head = r.checks.front();
    r.estimate = head.estimate;
    r.standard_error = head.standard_error;
    r.bound = head.bound;
    r.direction = head.direction;
    r.vacuous = head.vacuous;
    const bool ok = std::all_of(r.checks.begin(), r.checks.end(), [](const BoundCheck& c) { return c.passed; });
    r.verdict = ok ? Verdict::consistent : Verdict::violated;
    r.elapsed = std::chrono::steady_clock::now() - started;
}

void add_string_params(ExperimentResult& r) {
    const auto& c = r.config;
    const auto kind = *parse_experiment(c.name);
    auto add = [&](std::string key, std::string value) { r.params.emplace_back(std::move(key), std::move(value)); };
    switch (kind) {
        case ExperimentKind::matches:
            add("n", std::to_string(*c.n));
            add("sigma", std::to_string(*c.sigma));
            add("k", std::to_string(*c.k));
            break;
        case ExperimentKind::expected_entropy:
        case ExperimentKind::zero_prob:
            add("n", std::to_string(*c.n));
            add("sigma", std::to_string(*c.sigma));
            add("k", std::to_string(*c.k));
            add("epsilon", format_number(c.epsilon));
            break;
        case ExperimentKind::trick_shuffled:
            add("draw", std::to_string(*c.draw_size));
            break;
        case ExperimentKind::trick_prearranged:
            add("draw", std::to_string(*c.draw_size));
            add("exhaustive", c.exhaustive ? "true" : "false");
            break;
        case ExperimentKind::distinguish:
            add("sigma", std::to_string(*c.sigma));
            add("k", std::to_string(*c.k));
            add("m", std::to_string(*c.m));
            add("distinguisher", std::string(to_string(c.distinguisher)));
            add("fixed_string", c.fixed_string ? "true" : "false");
            break;
    }
}

/// log_sigma(n) thresholds reported by the entropy experiments.
void add_regime_stats(ExperimentResult& r) {
    const auto& c = r.config;
    const double log_n = *c.n <= 1 ? 0.0 : std::log(static_cast<double>(*c.n)) / std::log(static_cast<double>(*c.sigma));
    const auto k = static_cast<double>(*c.k);
    r.stats.emplace_back("log_sigma_n", log_n);
    r.stats.emplace_back("k_ge_one_plus_eps_log", static_cast<std::uint64_t>(k >= (1.0 + c.epsilon) * log_n));
    r.stats.emplace_back("k_ge_two_plus_eps_log", static_cast<std::uint64_t>(k >= (2.0 + c.epsilon) * log_n));
}

}  // namespace

// ---------------------------------------------------------------------------
// Names

std::string_view to_string(ExperimentKind kind) noexcept {
    for (const auto& [k, name] : kNames) {
        if (k == kind) return name;
    }
    return "unknown";
}

std::optional<ExperimentKind> parse_experiment(std::string_view name) noexcept {
    for (const auto& [k, known] : kNames) {
        if (known == name) return k;
    }
    return std::nullopt;
}

std::string experiment_names() {
    std::string out;
    for (const auto& [k, name] : kNames) {
        if (!out.empty()) out += ", ";
        out += name;
    }
    return out;
}

std::string_view to_string(DistinguisherId id) noexcept {
    return id == DistinguisherId::repeat_any ? "repeat-any" : "repeat-successor";
}

std::optional<DistinguisherId> parse_distinguisher(std::string_view text) noexcept {
    if (text == "repeat-successor") return DistinguisherId::repeat_successor;
    if (text == "repeat-any") return DistinguisherId::repeat_any;
    return std::nullopt;
}

std::string_view to_string(BoundDirection direction) noexcept {
    switch (direction) {
        case BoundDirection::at_most:
            return "<=";
        case BoundDirection::at_least:
            return ">=";
        case BoundDirection::within:
            return "~=";
    }
    return "?";
}

std::string_view to_string(Verdict verdict) noexcept {
    return verdict == Verdict::consistent ? "consistent" : "violated";
}

// ---------------------------------------------------------------------------
// Distinguisher

Distinguisher::Distinguisher(DistinguisherId id, Alphabet alphabet, std::size_t k)
    : id_(id), keyer_(alphabet, k), roller_(keyer_), table_(keyer_) {
    if (k == 0) throw ConfigError("a distinguisher needs k >= 1");
}

void Distinguisher::reset() {
    roller_.reset();
    table_.clear();
    consumed_ = 0;
    evidence_ = false;
}

void Distinguisher::feed(Symbol s) {
    ++consumed_;
    if (id_ == DistinguisherId::repeat_successor) {
        // The last k symbols are the context that s follows.
        if (roller_.ready()) {
            auto [stored, inserted] = table_.dense() ? table_.try_emplace_packed(roller_.packed_key(), s)
                                                     : table_.try_emplace(roller_.key(), s);
            if (!inserted && *stored != s) evidence_ = true;
        }
        roller_.push(s);
        return;
    }
    roller_.push(s);
    if (roller_.ready()) {
        const bool inserted = table_.dense() ? table_.try_emplace_packed(roller_.packed_key(), 0).second
                                             : table_.try_emplace(roller_.key(), 0).second;
        if (!inserted) evidence_ = true;
    }
}

// ---------------------------------------------------------------------------
// Configuration

ExperimentConfig resolve(const ExperimentConfig& config) {
    const auto kind = parse_experiment(config.name);
    if (!kind) {
        throw ConfigError("unknown experiment \"" + config.name + "\"; valid names: " + experiment_names());
    }
    ExperimentConfig c = config;
    if (c.trials < 1) throw ConfigError("trials must be at least 1");
    if (c.workers < 1) throw ConfigError("workers must be at least 1");
    if (!(c.epsilon >= 0.0)) throw ConfigError("epsilon must be non-negative");

    switch (*kind) {
        case ExperimentKind::matches:
        case ExperimentKind::expected_entropy:
        case ExperimentKind::zero_prob:
            if (!c.n) c.n = 100;
            if (!c.sigma) c.sigma = 2;
            if (!c.k) c.k = 20;
            break;
        case ExperimentKind::trick_shuffled:
            if (!c.draw_size) c.draw_size = 7;
            break;
        case ExperimentKind::trick_prearranged:
            if (!c.draw_size) c.draw_size = kPrearrangedOrder;
            break;
        case ExperimentKind::distinguish:
            if (!c.sigma) c.sigma = 2;
            if (!c.k) c.k = 16;
            if (!c.m) c.m = 64;
            break;
    }

    if (c.sigma) Alphabet{*c.sigma};  // validates sigma >= 2
    if (c.k && *c.k < 1) throw ConfigError("k must be at least 1");
    switch (*kind) {
        case ExperimentKind::matches:
            if (*c.n <= *c.k) {
                throw ConfigError("matches needs n > k (n=" + std::to_string(*c.n) + ", k=" + std::to_string(*c.k) + ")");
            }
            break;
        case ExperimentKind::expected_entropy:
        case ExperimentKind::zero_prob:
            if (*c.n < 1) throw ConfigError("n must be at least 1");
            break;
        case ExperimentKind::trick_shuffled:
        case ExperimentKind::trick_prearranged:
            if (*c.draw_size < 1 || *c.draw_size > Deck::kSize) {
                throw ConfigError("draw size must be in [1, 52], got " + std::to_string(*c.draw_size));
            }
            break;
        case ExperimentKind::distinguish:
            if (*c.m < *c.k + 1) {
                throw ConfigError("distinguish needs m >= k + 1 (m=" + std::to_string(*c.m) +
                                  ", k=" + std::to_string(*c.k) + ")");
            }
            break;
    }
    return c;
}

// ---------------------------------------------------------------------------
// Collision and entropy experiments

ExperimentResult exp_matches(const ExperimentConfig& config) {
    const auto started = std::chrono::steady_clock::now();
    auto r = start_result(config);
    const auto& c = r.config;
    const Alphabet alphabet(*c.sigma);
    const std::size_t n = *c.n;
    const std::size_t k = *c.k;

    const auto counts = run_trials<double>(c.trials, c.workers, [] { return NoScratch{}; },
                                           [&](std::uint64_t i, NoScratch&) {
                                               Rng rng(RngSpec{c.seed, i});
                                               const auto s = random_sequence(n, alphabet, rng);
                                               return static_cast<double>(match_count(s, k, Convention::linear));
                                           });
    const auto est = sample_mean(counts);
    const double sigma_k = std::pow(static_cast<double>(*c.sigma), static_cast<double>(k));
    const double pair_bound = pairs(static_cast<double>(n)) / sigma_k;
    const double exact = pairs(static_cast<double>(n - k + 1)) / sigma_k;
    const double trials = static_cast<double>(c.trials);

    r.checks.push_back(make_check("mean matches <= C(n,2)/sigma^k", est, pair_bound, BoundDirection::at_most));
    // Count data: floor the standard error at the Poisson value sqrt(mu/T) so
    // that an all-zero sample is not judged with a zero margin.
    r.checks.push_back(make_check("mean matches ~= C(n-k+1,2)/sigma^k", est, exact, BoundDirection::within, false,
                                  std::sqrt(exact / trials)));
    std::uint64_t nonzero = 0;
    double max_count = 0.0;
    for (const double v : counts) {
        nonzero += v > 0.0;
        max_count = std::max(max_count, v);
    }
    r.stats.emplace_back("exact_expectation", exact);
    r.stats.emplace_back("trials_with_matches", nonzero);
    r.stats.emplace_back("max_matches", static_cast<std::uint64_t>(max_count));
    add_string_params(r);
    finish(r, started);
    return r;
}

ExperimentResult exp_expected_entropy(const ExperimentConfig& config) {
    const auto started = std::chrono::steady_clock::now();
    auto r = start_result(config);
    const auto& c = r.config;
    const Alphabet alphabet(*c.sigma);

    struct Outcome {
        double h = 0.0;
        bool zero = true;
    };
    const auto outcomes = run_trials<Outcome>(c.trials, c.workers, [] { return NoScratch{}; },
                                              [&](std::uint64_t i, NoScratch&) {
                                                  Rng rng(RngSpec{c.seed, i});
                                                  const auto s = random_sequence(*c.n, alphabet, rng);
                                                  const auto report = hk(s, *c.k, Convention::linear);
                                                  return Outcome{report.h_value, report.zero};
                                              });
    std::vector<double> values;
    values.reserve(outcomes.size());
    std::uint64_t zeros = 0;
    for (const auto& o : outcomes) {
        values.push_back(o.h);
        zeros += o.zero;
    }
    const auto est = sample_mean(values);
    const double log_sigma = std::log2(static_cast<double>(*c.sigma));
    const double sigma_k = std::pow(static_cast<double>(*c.sigma), static_cast<double>(*c.k));
    const double bound = static_cast<double>(*c.n) / sigma_k * log_sigma;
    const bool vacuous = bound >= log_sigma;

    r.checks.push_back(make_check("mean H_k <= (n/sigma^k) log2 sigma", est, bound, BoundDirection::at_most, vacuous));
    r.stats.emplace_back("zero_entropy_trials", zeros);
    add_regime_stats(r);
    add_string_params(r);
    finish(r, started);
    return r;
}

ExperimentResult exp_zero_prob(const ExperimentConfig& config) {
    const auto started = std::chrono::steady_clock::now();
    auto r = start_result(config);
    const auto& c = r.config;
    const Alphabet alphabet(*c.sigma);

    const auto zero = run_trials<char>(c.trials, c.workers, [] { return NoScratch{}; },
                                       [&](std::uint64_t i, NoScratch&) -> char {
                                           Rng rng(RngSpec{c.seed, i});
                                           const auto s = random_sequence(*c.n, alphabet, rng);
                                           return hk(s, *c.k, Convention::linear).zero;
                                       });
    std::uint64_t hits = 0;
    for (const char z : zero) hits += z != 0;
    const auto est = proportion(hits, c.trials);
    const double sigma_k = std::pow(static_cast<double>(*c.sigma), static_cast<double>(*c.k));
    const double bound = 1.0 - pairs(static_cast<double>(*c.n)) / sigma_k;
    const bool vacuous = bound <= 0.0;

    r.checks.push_back(make_check("P[H_k = 0] >= 1 - C(n,2)/sigma^k", est, bound, BoundDirection::at_least, vacuous));
    r.stats.emplace_back("zero_entropy_trials", hits);
    add_regime_stats(r);
    add_string_params(r);
    finish(r, started);
    return r;
}

// ---------------------------------------------------------------------------
// Card trick

ExperimentResult exp_trick_shuffled(const ExperimentConfig& config) {
    const auto started = std::chrono::steady_clock::now();
    auto r = start_result(config);
    const auto& c = r.config;
    const std::size_t d = *c.draw_size;
    const Deck fresh = Deck::factory_order();

    struct Outcome {
        bool unique = false;
        bool success = false;
        bool same_color_pair = false;
        std::uint32_t candidates = 0;
    };
    const auto outcomes = run_trials<Outcome>(
        c.trials, c.workers, [] { return NoScratch{}; }, [&](std::uint64_t i, NoScratch&) {
            Rng rng(RngSpec{c.seed, i});
            const Deck shuffled = shuffle_deck(fresh, rng);
            const Deck first_cut = cut_deck(shuffled, rng.uniform_below(Deck::kSize));
            const auto drawn = cards_at(first_cut, 0, d);
            std::vector<Color> colors(d);
            for (std::size_t j = 0; j < d; ++j) colors[j] = drawn[j].color();
            const Deck returned = cut_deck(first_cut, rng.uniform_below(Deck::kSize));
            const auto candidates = decode_draw(returned, colors);
            const auto& pick = guess_draw(candidates, rng);
            Outcome o;
            o.unique = candidates.size() == 1;
            o.success = pick.cards == drawn;
            o.same_color_pair = shuffled[0].color() == shuffled[1].color();
            o.candidates = static_cast<std::uint32_t>(candidates.size());
            return o;
        });

    std::uint64_t unique = 0;
    std::uint64_t success = 0;
    std::uint64_t same = 0;
    std::uint64_t candidates = 0;
    for (const auto& o : outcomes) {
        unique += o.unique;
        success += o.success;
        same += o.same_color_pair;
        candidates += o.candidates;
    }
    const double uniqueness_bound = 1.0 - 51.0 / std::pow(2.0, static_cast<double>(d));
    const double pair_probability = 25.0 / 51.0;
    const double trials = static_cast<double>(c.trials);

    r.checks.push_back(make_check("P[drawn colours unique] >= 1 - 51/2^d", proportion(unique, c.trials),
                                  uniqueness_bound, BoundDirection::at_least, uniqueness_bound <= 0.0));
    r.checks.push_back(make_check("P[two fixed cards share a colour] ~= 25/51", proportion(same, c.trials),
                                  pair_probability, BoundDirection::within, false,
                                  std::sqrt(pair_probability * (1.0 - pair_probability) / trials)));
    const auto success_rate = proportion(success, c.trials);
    r.stats.emplace_back("unique_trials", unique);
    r.stats.emplace_back("success_trials", success);
    r.stats.emplace_back("success_rate", success_rate.mean);
    r.stats.emplace_back("success_stderr", success_rate.standard_error);
    r.stats.emplace_back("mean_candidates", static_cast<double>(candidates) / trials);
    r.stats.emplace_back("same_colour_trials", same);
    add_string_params(r);
    finish(r, started);
    return r;
}

ExperimentResult exp_trick_prearranged(const ExperimentConfig& config) {
    const auto started = std::chrono::steady_clock::now();
    auto r = start_result(config);
    const auto& c = r.config;
    const std::size_t d = *c.draw_size;
    const std::size_t positions = Deck::kSize - d + 1;
    const Deck arranged = arrange_deck_debruijn();
    if (c.exhaustive) r.trials = Deck::kSize * positions;

    struct Outcome {
        bool singleton = false;
        bool success = false;
    };
    const auto outcomes = run_trials<Outcome>(
        r.trials, c.workers, [] { return NoScratch{}; }, [&](std::uint64_t i, NoScratch&) {
            Rng rng(RngSpec{c.seed, i});
            std::size_t cut = 0;
            std::size_t at = 0;
            if (c.exhaustive) {
                cut = static_cast<std::size_t>(i / positions);
                at = static_cast<std::size_t>(i % positions);
            } else {
                cut = rng.uniform_below(Deck::kSize);
                at = rng.uniform_below(positions);
            }
            const Deck audience = cut_deck(arranged, cut);
            const auto drawn = cards_at(audience, at, d);
            std::vector<Color> colors(d);
            for (std::size_t j = 0; j < d; ++j) colors[j] = drawn[j].color();
            const auto candidates = decode_draw(arranged, colors);
            const auto& pick = guess_draw(candidates, rng);
            return Outcome{candidates.size() == 1, pick.cards == drawn};
        });

    std::uint64_t singletons = 0;
    std::uint64_t successes = 0;
    for (const auto& o : outcomes) {
        singletons += o.singleton;
        successes += o.success;
    }
    const bool vacuous = d < kPrearrangedOrder;
    const auto total = static_cast<double>(r.trials);
    r.checks.push_back(exact_check("success rate == 1 for draws of 6+", static_cast<double>(successes) / total, 1.0,
                                   vacuous));
    r.checks.back().standard_error = proportion(successes, r.trials).standard_error;
    r.checks.push_back(exact_check("every draw decodes to one position", static_cast<double>(singletons) / total, 1.0,
                                   vacuous));
    r.stats.emplace_back("singleton_trials", singletons);
    r.stats.emplace_back("success_trials", successes);
    r.stats.emplace_back("deck_offset", static_cast<std::uint64_t>(debruijn_deck_offset()));
    add_string_params(r);
    finish(r, started);
    return r;
}

// ---------------------------------------------------------------------------
// Distinguishing game

ExperimentResult exp_distinguish(const ExperimentConfig& config) {
    const auto started = std::chrono::steady_clock::now();
    auto r = start_result(config);
    const auto& c = r.config;
    const Alphabet alphabet(*c.sigma);
    const std::size_t k = *c.k;
    const std::size_t m = *c.m;

    auto abort_message = [&](std::uint64_t attempts) {
        return "distinguish: no repeat-free string of length " + std::to_string(m) + " for k=" +
               std::to_string(k) + " after " + std::to_string(attempts) +
               " attempts; m is far above sigma^(k/2) and the adversarial source cannot be built";
    };

    std::optional<Sequence> fixed;
    std::uint64_t fixed_attempts = 0;
    if (c.fixed_string) {
        RepeatFreeSampler sampler(alphabet, k);
        Rng rng(RngSpec{c.seed, std::numeric_limits<std::uint64_t>::max()});
        auto outcome = sampler.sample(m, rng, kMaxAttemptsPerTrial);
        fixed_attempts = outcome.attempts;
        if (!outcome.sequence) throw ExperimentAborted(abort_message(outcome.attempts));
        fixed = std::move(outcome.sequence);
    }
    const std::optional<DeterministicMarkovSource> fixed_source =
        fixed ? std::optional(DeterministicMarkovSource::build(*fixed, k)) : std::nullopt;

    struct Scratch {
        RepeatFreeSampler sampler;
        Distinguisher distinguisher;
    };
    struct Outcome {
        bool heads = false;
        bool correct = false;
        bool guessed_memoryless = false;
        bool reproduced = true;
        std::uint64_t attempts = 0;
    };

    const auto outcomes = run_trials<Outcome>(
        c.trials, c.workers, [&] { return Scratch{RepeatFreeSampler(alphabet, k), Distinguisher(c.distinguisher, alphabet, k)}; },
        [&](std::uint64_t i, Scratch& scratch) {
            Rng rng(RngSpec{c.seed, i});
            Outcome o;
            o.heads = rng.coin();
            std::optional<Sequence> emitted;
            if (o.heads) {
                emitted = MemorylessSource(alphabet).generate(m, rng);
            } else if (fixed_source) {
                emitted = fixed_source->generate(m);
                o.reproduced = *emitted == *fixed;
            } else {
                auto sample = scratch.sampler.sample(m, rng, kMaxAttemptsPerTrial);
                o.attempts = sample.attempts;
                if (!sample.sequence) throw ExperimentAborted(abort_message(sample.attempts));
                const auto source = DeterministicMarkovSource::build(*sample.sequence, k);
                emitted = source.generate(m);
                o.reproduced = *emitted == *sample.sequence;
            }
            auto& dist = scratch.distinguisher;
            dist.reset();
            for (const Symbol s : *emitted) dist.feed(s);
            o.guessed_memoryless = dist.guess() == SourceGuess::memoryless;
            o.correct = o.guessed_memoryless == o.heads;
            return o;
        });

    std::uint64_t heads = 0;
    std::uint64_t correct = 0;
    std::uint64_t one_sided = 0;
    std::uint64_t missed = 0;
    std::uint64_t attempts = fixed_attempts;
    std::uint64_t reproduction_failures = 0;
    for (const auto& o : outcomes) {
        heads += o.heads;
        correct += o.correct;
        if (!o.heads && o.guessed_memoryless) ++one_sided;
        if (o.heads && !o.guessed_memoryless) ++missed;
        attempts += o.attempts;
        reproduction_failures += !o.reproduced;
    }
    const std::uint64_t tails = c.trials - heads;
    const std::uint64_t accepted = c.fixed_string ? 1 : tails;
    const double rejection_rate =
        attempts == 0 ? 0.0 : static_cast<double>(attempts - accepted) / static_cast<double>(attempts);
    if (rejection_rate > kMaxRejectionRate) {
        throw ExperimentAborted("distinguish: " + std::to_string(rejection_rate * 100.0) +
                                "% of repeat-free sampling attempts were rejected; m is too far above "
                                "sigma^(k/2) for the adversarial source");
    }

    const double sigma_half = std::pow(static_cast<double>(*c.sigma), static_cast<double>(k) / 2.0);
    const bool vacuous = static_cast<double>(m) >= sigma_half;
    r.checks.push_back(make_check("success rate <= 2/3 while m < sigma^(k/2)", proportion(correct, c.trials),
                                  2.0 / 3.0, BoundDirection::at_most, vacuous));
    r.checks.push_back(exact_check("deterministic-source trials guessed memoryless", static_cast<double>(one_sided), 0.0));
    r.checks.push_back(exact_check("Markov sources that failed to reproduce their string",
                                   static_cast<double>(reproduction_failures), 0.0));

    r.stats.emplace_back("heads_trials", heads);
    r.stats.emplace_back("tails_trials", tails);
    r.stats.emplace_back("correct_trials", correct);
    r.stats.emplace_back("missed_memoryless", missed);
    r.stats.emplace_back("resample_attempts", attempts);
    r.stats.emplace_back("rejection_rate", rejection_rate);
    r.stats.emplace_back("sigma_pow_half_k", sigma_half);
    add_string_params(r);
    finish(r, started);
    return r;
}

// ---------------------------------------------------------------------------
// Dispatch and sweeps

ExperimentResult run_experiment(const ExperimentConfig& config) {
    const auto kind = parse_experiment(config.name);
    if (!kind) {
        throw ConfigError("unknown experiment \"" + config.name + "\"; valid names: " + experiment_names());
    }
    switch (*kind) {
        case ExperimentKind::matches:
            return exp_matches(config);
        case ExperimentKind::expected_entropy:
            return exp_expected_entropy(config);
        case ExperimentKind::zero_prob:
            return exp_zero_prob(config);
        case ExperimentKind::trick_shuffled:
            return exp_trick_shuffled(config);
        case ExperimentKind::trick_prearranged:
            return exp_trick_prearranged(config);
        case ExperimentKind::distinguish:
            return exp_distinguish(config);
    }
    throw ConfigError("unknown experiment");
}

namespace {

void set_param(ExperimentConfig& c, std::string_view param, std::uint64_t value) {
    if (param == "n") {
        c.n = value;
    } else if (param == "sigma") {
        c.sigma = value;
    } else if (param == "k") {
        c.k = value;
    } else if (param == "m") {
        c.m = value;
    } else if (param == "draw") {
        c.draw_size = value;
    } else {
        throw ConfigError("cannot sweep \"" + std::string(param) + "\"; use n, sigma, k, m or draw");
    }
}

}  // namespace

std::vector<ExperimentResult> run_sweep(const ExperimentConfig& base, std::string_view param,
                                        const std::vector<std::uint64_t>& values) {
    std::vector<ExperimentConfig> configs;
    configs.reserve(values.size());
    for (const auto v : values) {
        ExperimentConfig c = base;
        set_param(c, param, v);
        configs.push_back(resolve(c));
    }
    std::vector<ExperimentResult> out;
    out.reserve(configs.size());
    for (const auto& c : configs) out.push_back(run_experiment(c));
    return out;
}

std::optional<std::uint64_t> crossing_point(const std::vector<ExperimentResult>& sweep, std::string_view param,
                                            double threshold) {
    for (const auto& r : sweep) {
        if (r.estimate <= threshold) continue;
        for (const auto& [key, value] : r.params) {
            if (key == param) return std::stoull(value);
        }
    }
    return std::nullopt;
}

}  // namespace cardbounds
