#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <unordered_map>
#include <variant>
#include <vector>

#include "cardbounds/rng.hpp"
#include "cardbounds/textcore.hpp"
#include "cardbounds/tuple_key.hpp"

namespace cardbounds {

/// Unbiased memoryless source: i.i.d. uniform symbols, entropy rate log2(sigma).
class MemorylessSource {
public:
    explicit MemorylessSource(Alphabet alphabet) : alphabet_(alphabet) {}

    const Alphabet& alphabet() const noexcept { return alphabet_; }
    Sequence generate(std::size_t m, Rng& rng) const { return random_sequence(m, alphabet_, rng); }

private:
    Alphabet alphabet_;
};

enum class MarkovCompletion {
    none,    ///< the source only defines its building string
    cyclic,  ///< add the wrap-around transitions so the string repeats forever
};

/// k-th order Markov source in which every context has exactly one successor.
///
/// Built from a string with no repeated k-tuple; generating from its seed
/// context reproduces that string. Immutable after construction.
class DeterministicMarkovSource {
public:
    /// Requires n > k and no two equal linear k-windows (cyclic completion
    /// additionally needs all n cyclic windows distinct). Throws
    /// ConstructionError naming the colliding positions otherwise.
    static DeterministicMarkovSource build(const Sequence& s, std::size_t k,
                                           MarkovCompletion completion = MarkovCompletion::none);

    std::size_t order() const noexcept { return k_; }
    const Alphabet& alphabet() const noexcept { return source_.alphabet(); }
    std::span<const Symbol> seed_context() const noexcept { return source_.symbols().first(k_); }
    const Sequence& source_string() const noexcept { return source_; }
    bool cyclic() const noexcept { return completion_ == MarkovCompletion::cyclic; }
    std::size_t transition_count() const noexcept { return transitions_.size(); }

    /// Longest output generate() accepts; nullopt when unbounded.
    std::optional<std::size_t> max_length() const noexcept;

    /// The unique successor of a context, if the context is defined.
    std::optional<Symbol> successor(std::span<const Symbol> context) const;

    /// First m symbols: the seed context, then the transitions.
    /// Throws GenerationError past max_length().
    Sequence generate(std::size_t m) const;

private:
    DeterministicMarkovSource(Sequence source, std::size_t k, MarkovCompletion completion);

    Sequence source_;
    std::size_t k_;
    MarkovCompletion completion_;
    TupleKeyer keyer_;
    std::unordered_map<TupleKey, Symbol> transitions_;
};

using SourceModel = std::variant<MemorylessSource, DeterministicMarkovSource>;

Sequence generate(const MemorylessSource& source, std::size_t m, const RngSpec& rng);
Sequence generate(const DeterministicMarkovSource& source, std::size_t m);
Sequence generate(const SourceModel& source, std::size_t m, const RngSpec& rng);

/// Draws uniform strings of length m until one has no repeated linear
/// k-window. Each attempt is abandoned at its first repeat; this does not
/// change the distribution of the accepted string, which is uniform over
/// repeat-free strings.
class RepeatFreeSampler {
public:
    RepeatFreeSampler(Alphabet alphabet, std::size_t k);

    struct Outcome {
        std::optional<Sequence> sequence;  ///< empty when every attempt was rejected
        std::uint64_t attempts = 0;
    };

    Outcome sample(std::size_t m, Rng& rng, std::uint64_t max_attempts);

private:
    Alphabet alphabet_;
    TupleKeyer keyer_;
    TupleDict<char> seen_;
    std::vector<Symbol> buffer_;
};

}  // namespace cardbounds
