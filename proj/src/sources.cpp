#include "cardbounds/sources.hpp"

#include <type_traits>

#include "cardbounds/entropy.hpp"
#include "cardbounds/errors.hpp"

namespace cardbounds {

namespace {

std::string tuple_text(std::span<const Symbol> tuple) {
    std::string out = "[";
    for (std::size_t i = 0; i < tuple.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(tuple[i]);
    }
    return out + "]";
}

}  // namespace

DeterministicMarkovSource::DeterministicMarkovSource(Sequence source, std::size_t k, MarkovCompletion completion)
    : source_(std::move(source)), k_(k), completion_(completion), keyer_(source_.alphabet(), k) {}

DeterministicMarkovSource DeterministicMarkovSource::build(const Sequence& s, std::size_t k,
                                                           MarkovCompletion completion) {
    const std::size_t n = s.size();
    if (k == 0) throw ConfigError("Markov source order must be at least 1");
    if (n <= k) {
        throw InputError("a Markov source of order " + std::to_string(k) + " needs more than " +
                         std::to_string(k) + " symbols, got " + std::to_string(n));
    }
    const auto convention = completion == MarkovCompletion::cyclic ? Convention::cyclic : Convention::linear;
    if (const auto clash = first_match(s, k, convention)) {
        const auto [i, j] = *clash;
        std::vector<Symbol> tuple(k);
        for (std::size_t t = 0; t < k; ++t) tuple[t] = s.cyclic_at(i + t);
        throw ConstructionError("k-tuple " + tuple_text(tuple) + " repeats at positions " +
                                    std::to_string(i + 1) + "," + std::to_string(j + 1) +
                                    (convention == Convention::cyclic ? " (cyclically)" : ""),
                                i, j);
    }

    DeterministicMarkovSource source(s, k, completion);
    const auto keys = window_keys(s, source.keyer_, convention);
    const std::size_t defined = convention == Convention::cyclic ? n : n - k;
    source.transitions_.reserve(defined);
    for (std::size_t i = 0; i < defined; ++i) source.transitions_.emplace(keys[i], s.cyclic_at(i + k));
    return source;
}

std::optional<std::size_t> DeterministicMarkovSource::max_length() const noexcept {
    if (cyclic()) return std::nullopt;
    return source_.size();
}

std::optional<Symbol> DeterministicMarkovSource::successor(std::span<const Symbol> context) const {
    if (context.size() != k_) return std::nullopt;
    for (const Symbol s : context) {
        if (!alphabet().contains(s)) return std::nullopt;
    }
    const auto it = transitions_.find(keyer_.key(context));
    if (it == transitions_.end()) return std::nullopt;
    return it->second;
}

Sequence DeterministicMarkovSource::generate(std::size_t m) const {
    if (const auto limit = max_length(); limit && m > *limit) {
        throw GenerationError("this source defines only " + std::to_string(*limit) +
                              " symbols; requested " + std::to_string(m) +
                              " (enable cyclic completion for longer output)");
    }
    std::vector<Symbol> out;
    out.reserve(m);
    WindowRoller roller(keyer_);
    for (const Symbol s : seed_context()) {
        if (out.size() == m) break;
        out.push_back(s);
        roller.push(s);
    }
    while (out.size() < m) {
        const auto it = transitions_.find(roller.key());
        if (it == transitions_.end()) throw GenerationError("context without a successor");
        out.push_back(it->second);
        roller.push(it->second);
    }
    return Sequence(alphabet(), std::move(out));
}

Sequence generate(const MemorylessSource& source, std::size_t m, const RngSpec& rng) {
    Rng stream(rng);
    return source.generate(m, stream);
}

Sequence generate(const DeterministicMarkovSource& source, std::size_t m) { return source.generate(m); }

Sequence generate(const SourceModel& source, std::size_t m, const RngSpec& rng) {
    return std::visit(
        [&](const auto& model) -> Sequence {
            if constexpr (std::is_same_v<std::decay_t<decltype(model)>, MemorylessSource>) {
                return generate(model, m, rng);
            } else {
                return generate(model, m);
            }
        },
        source);
}

RepeatFreeSampler::RepeatFreeSampler(Alphabet alphabet, std::size_t k)
    : alphabet_(alphabet), keyer_(alphabet, k), seen_(keyer_) {
    if (k == 0) throw ConfigError("repeat-free sampling needs k >= 1");
}

RepeatFreeSampler::Outcome RepeatFreeSampler::sample(std::size_t m, Rng& rng, std::uint64_t max_attempts) {
    Outcome outcome;
    buffer_.resize(m);
    WindowRoller roller(keyer_);
    while (outcome.attempts < max_attempts) {
        ++outcome.attempts;
        seen_.clear();
        roller.reset();
        bool repeat = false;
        for (std::size_t i = 0; i < m; ++i) {
            const auto s = static_cast<Symbol>(rng.uniform_below(alphabet_.sigma()));
            buffer_[i] = s;
            roller.push(s);
            if (!roller.ready()) continue;
            const bool inserted = seen_.dense() ? seen_.try_emplace_packed(roller.packed_key(), 1).second
                                                : seen_.try_emplace(roller.key(), 1).second;
            if (!inserted) {
                repeat = true;
                break;
            }
        }
        if (!repeat) {
            outcome.sequence = Sequence(alphabet_, buffer_);
            return outcome;
        }
    }
    return outcome;
}

}  // namespace cardbounds
