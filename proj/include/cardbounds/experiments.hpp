#pragma once

// Seeded Monte Carlo harnesses for the collision, entropy and card-trick
// bounds, and for the Markov-versus-memoryless distinguishing game.
//
// Trial i draws all of its randomness from RngSpec{seed, i}. Per-trial
// outcomes are stored by index and reduced in index order after all trials
// finish, so a result depends only on its config, never on the worker count.
// Every bound is checked with a margin of three standard errors.

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "cardbounds/textcore.hpp"
#include "cardbounds/tuple_key.hpp"

namespace cardbounds {

enum class ExperimentKind {
    matches,
    expected_entropy,
    zero_prob,
    trick_shuffled,
    trick_prearranged,
    distinguish,
};

std::string_view to_string(ExperimentKind kind) noexcept;
std::optional<ExperimentKind> parse_experiment(std::string_view name) noexcept;
/// "matches, expected-entropy, ..." for error messages.
std::string experiment_names();

enum class DistinguisherId { repeat_successor, repeat_any };

std::string_view to_string(DistinguisherId id) noexcept;
std::optional<DistinguisherId> parse_distinguisher(std::string_view text) noexcept;

enum class SourceGuess { memoryless, markov };

/// Streaming test that reads symbols and guesses which source emitted them.
///
/// repeat-successor guesses memoryless iff some k-context has been followed by
/// two different symbols. A deterministic source can never trigger it.
/// repeat-any guesses memoryless iff any k-window occurs twice.
class Distinguisher {
public:
    Distinguisher(DistinguisherId id, Alphabet alphabet, std::size_t k);

    DistinguisherId id() const noexcept { return id_; }
    void reset();
    void feed(Symbol s);
    std::size_t consumed() const noexcept { return consumed_; }
    SourceGuess guess() const noexcept { return evidence_ ? SourceGuess::memoryless : SourceGuess::markov; }

private:
    DistinguisherId id_;
    TupleKeyer keyer_;
    WindowRoller roller_;
    TupleDict<Symbol> table_;
    std::size_t consumed_ = 0;
    bool evidence_ = false;
};

/// Parameters of one experiment. Unset optionals take per-experiment defaults
/// (see resolve()).
struct ExperimentConfig {
    std::string name;
    std::optional<std::size_t> n;
    std::optional<std::uint64_t> sigma;
    std::optional<std::size_t> k;
    std::optional<std::size_t> m;
    std::optional<std::size_t> draw_size;
    std::uint64_t trials = 10000;
    std::uint64_t seed = 0;
    unsigned workers = 1;
    DistinguisherId distinguisher = DistinguisherId::repeat_successor;
    /// Only used for the regime flags reported by the entropy experiments.
    double epsilon = 0.0;
    /// distinguish: use one adversarial string for every trial.
    bool fixed_string = false;
    /// trick-prearranged: enumerate every cut and draw position instead of sampling.
    bool exhaustive = false;
};

/// Fill defaults and validate. Throws ConfigError before any trial runs.
///   matches, expected-entropy, zero-prob: n=100, sigma=2, k=20
///   trick-shuffled: draw=7; trick-prearranged: draw=6
///   distinguish: sigma=2, k=16, m=64
ExperimentConfig resolve(const ExperimentConfig& config);

enum class BoundDirection {
    at_most,   ///< estimate <= bound + margin
    at_least,  ///< estimate >= bound - margin
    within,    ///< |estimate - bound| <= margin
};

std::string_view to_string(BoundDirection direction) noexcept;

struct BoundCheck {
    std::string label;
    double estimate = 0.0;
    double standard_error = 0.0;
    double bound = 0.0;
    BoundDirection direction = BoundDirection::at_most;
    double margin = 0.0;
    /// The bound says nothing at these parameters; the check always passes.
    bool vacuous = false;
    bool passed = true;
};

enum class Verdict { consistent, violated };

std::string_view to_string(Verdict verdict) noexcept;

using StatValue = std::variant<std::uint64_t, double>;

struct ExperimentResult {
    ExperimentConfig config;  ///< resolved
    /// Relevant parameters, in display order (workers excluded).
    std::vector<std::pair<std::string, std::string>> params;

    /// Headline figures, taken from checks.front().
    double estimate = 0.0;
    double standard_error = 0.0;
    double bound = 0.0;
    BoundDirection direction = BoundDirection::at_most;
    bool vacuous = false;

    std::vector<BoundCheck> checks;
    std::vector<std::pair<std::string, StatValue>> stats;
    Verdict verdict = Verdict::consistent;
    std::uint64_t trials = 0;
    std::chrono::nanoseconds elapsed{0};
};

/// Mean number of linear k-window matches in uniform strings, against the
/// exact expectation C(n-k+1, 2)/sigma^k and the bound C(n, 2)/sigma^k.
ExperimentResult exp_matches(const ExperimentConfig& config);

/// Mean linear H_k of uniform strings against (n / sigma^k) log2 sigma.
ExperimentResult exp_expected_entropy(const ExperimentConfig& config);

/// Fraction of uniform strings whose linear H_k is exactly zero, against
/// 1 - C(n, 2)/sigma^k.
ExperimentResult exp_zero_prob(const ExperimentConfig& config);

/// Shuffled deck: cut, draw d cards, replace, cut again, decode. Reports how
/// often the drawn colour pattern is cyclically unique (against
/// 1 - 51/2^d), the magician's success rate, and how often two fixed
/// positions share a colour (against 25/51).
ExperimentResult exp_trick_shuffled(const ExperimentConfig& config);

/// Prearranged deck: random (or every) cut and draw position; decoding must
/// always succeed for draws of 6 or more cards.
ExperimentResult exp_trick_prearranged(const ExperimentConfig& config);

/// The distinguishing game: a fair coin chooses the memoryless source or a
/// deterministic Markov source built from a rejection-sampled repeat-free
/// string; the distinguisher reads m symbols and guesses.
///
/// Tails trials resample at most kMaxAttemptsPerTrial times; the experiment
/// aborts (ExperimentAborted) when a trial exhausts that or when more than
/// kMaxRejectionRate of all attempts are rejected.
ExperimentResult exp_distinguish(const ExperimentConfig& config);

inline constexpr std::uint64_t kMaxAttemptsPerTrial = 100000;
inline constexpr double kMaxRejectionRate = 0.99;

/// Dispatch on config.name. Throws ConfigError listing the valid names.
ExperimentResult run_experiment(const ExperimentConfig& config);

/// One result per value of the named parameter (n, sigma, k, m or draw).
std::vector<ExperimentResult> run_sweep(const ExperimentConfig& base, std::string_view param,
                                        const std::vector<std::uint64_t>& values);

/// First swept value whose estimate exceeds `threshold`.
std::optional<std::uint64_t> crossing_point(const std::vector<ExperimentResult>& sweep,
                                            std::string_view param, double threshold);

}  // namespace cardbounds
