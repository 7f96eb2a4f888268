#include "cardbounds/debruijn.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <unordered_map>

#include "cardbounds/errors.hpp"
#include "cardbounds/tuple_key.hpp"

namespace cardbounds {

namespace {

std::optional<std::uint64_t> checked_power(std::uint64_t base, std::size_t exponent) {
    std::uint64_t p = 1;
    for (std::size_t i = 0; i < exponent; ++i) {
        if (p > UINT64_MAX / base) return std::nullopt;
        p *= base;
    }
    return p;
}

std::string tuple_text(std::span<const Symbol> tuple) {
    const bool digits = std::all_of(tuple.begin(), tuple.end(),
                                    [](Symbol s) { return s < kDigitAlphabet.size(); });
    if (digits) return to_digit_text(tuple);
    std::string out;
    for (std::size_t i = 0; i < tuple.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(tuple[i]);
    }
    return out;
}

std::uint64_t generated_length(const DeBruijnSpec& spec) {
    const auto length = spec.length();
    if (!length || *length > DeBruijnSpec::kMaxGeneratedLength) {
        throw SizeError("De Bruijn cycle for sigma=" + std::to_string(spec.sigma()) +
                        ", order=" + std::to_string(spec.order()) + " exceeds the " +
                        std::to_string(DeBruijnSpec::kMaxGeneratedLength) + "-symbol limit");
    }
    return *length;
}

std::vector<Symbol> greedy_least(const DeBruijnSpec& spec, std::uint64_t length) {
    const std::uint64_t sigma = spec.sigma();
    const std::size_t k = spec.order();
    std::vector<bool> visited(length, false);
    std::vector<Symbol> walk(k, static_cast<Symbol>(sigma - 1));
    walk.reserve(length + k - 1);
    std::uint64_t window = length - 1;  // value of (sigma-1)^k in base sigma
    visited[window] = true;
    while (walk.size() < length + k - 1) {
        bool extended = false;
        for (std::uint64_t a = 0; a < sigma; ++a) {
            const std::uint64_t next = (window * sigma + a) % length;
            if (visited[next]) continue;
            visited[next] = true;
            window = next;
            walk.push_back(static_cast<Symbol>(a));
            extended = true;
            break;
        }
        if (!extended) throw std::logic_error("greedy De Bruijn walk stalled");
    }
    walk.resize(length);
    return walk;
}

std::vector<Symbol> eulerian_random(const DeBruijnSpec& spec, std::uint64_t length, Rng& rng) {
    const std::uint64_t sigma = spec.sigma();
    const std::uint64_t vertices = length / sigma;

    // Out-edge labels of vertex u live in order[u*sigma, (u+1)*sigma).
    std::vector<Symbol> order(length);
    for (std::uint64_t u = 0; u < vertices; ++u) {
        auto* edges = order.data() + u * sigma;
        for (std::uint64_t a = 0; a < sigma; ++a) edges[a] = static_cast<Symbol>(a);
        for (std::uint64_t i = sigma - 1; i > 0; --i) {
            std::swap(edges[i], edges[rng.uniform_below(i + 1)]);
        }
    }
    std::vector<std::uint32_t> next_edge(vertices, 0);

    std::vector<std::uint64_t> vertex_stack{0};
    std::vector<Symbol> label_stack;
    std::vector<Symbol> circuit;
    circuit.reserve(length);
    while (!vertex_stack.empty()) {
        const std::uint64_t u = vertex_stack.back();
        if (next_edge[u] < sigma) {
            const Symbol a = order[u * sigma + next_edge[u]++];
            vertex_stack.push_back((u * sigma + a) % vertices);
            label_stack.push_back(a);
        } else {
            vertex_stack.pop_back();
            if (!label_stack.empty()) {
                circuit.push_back(label_stack.back());
                label_stack.pop_back();
            }
        }
    }
    std::reverse(circuit.begin(), circuit.end());
    return circuit;
}

}  // namespace

DeBruijnSpec::DeBruijnSpec(std::uint64_t sigma, std::size_t order) : alphabet_(sigma), order_(order) {
    if (order == 0) throw ConfigError("De Bruijn order must be at least 1");
}

std::optional<std::uint64_t> DeBruijnSpec::length() const noexcept {
    return checked_power(sigma(), order_);
}

std::string_view to_string(GenerationStrategy strategy) noexcept {
    return strategy == GenerationStrategy::eulerian_random ? "eulerian-random" : "greedy-least";
}

std::optional<GenerationStrategy> parse_strategy(std::string_view text) noexcept {
    if (text == "greedy-least" || text == "greedy") return GenerationStrategy::greedy_least;
    if (text == "eulerian-random" || text == "eulerian") return GenerationStrategy::eulerian_random;
    return std::nullopt;
}

Sequence canonical_rotation(const Sequence& cycle, std::size_t order) {
    const std::size_t n = cycle.size();
    if (n == 0) return cycle;
    std::size_t run = 0;
    // Scan far enough to see every cyclic window of length `order`.
    for (std::size_t i = 0; i < n + order; ++i) {
        run = cycle.cyclic_at(i) == 0 ? run + 1 : 0;
        if (run >= order) {
            const std::size_t start = (i + 1 + n - order) % n;
            std::vector<Symbol> rotated(n);
            for (std::size_t j = 0; j < n; ++j) rotated[j] = cycle.cyclic_at(start + j);
            return Sequence(cycle.alphabet(), std::move(rotated));
        }
    }
    return cycle;
}

DeBruijnSeq db_generate(const DeBruijnSpec& spec, GenerationStrategy strategy, std::optional<RngSpec> rng) {
    const std::uint64_t length = generated_length(spec);
    std::vector<Symbol> cycle;
    if (strategy == GenerationStrategy::greedy_least) {
        cycle = greedy_least(spec, length);
    } else {
        if (!rng) throw ConfigError("eulerian-random generation needs an rng seed");
        Rng stream(*rng);
        cycle = eulerian_random(spec, length, stream);
    }
    DeBruijnSeq out{spec, canonical_rotation(Sequence(spec.alphabet(), std::move(cycle)), spec.order())};
    if (!db_verify(out.seq, spec)) throw std::logic_error("generated sequence failed verification");
    return out;
}

std::string VerifyResult::describe() const {
    switch (problem) {
        case Problem::none:
            return "ok";
        case Problem::length_mismatch:
            return "length " + std::to_string(actual_length) + " != " + std::to_string(expected_length);
        case Problem::symbol_out_of_range:
            return "symbol " + tuple_text(tuple) + " at position " + std::to_string(second_index + 1) +
                   " is outside the alphabet";
        case Problem::duplicate_tuple:
            return "duplicate tuple " + tuple_text(tuple) + " at positions " +
                   std::to_string(first_index + 1) + " and " + std::to_string(second_index + 1);
    }
    return "unknown";
}

VerifyResult db_verify(const Sequence& candidate, const DeBruijnSpec& spec) {
    VerifyResult result;
    result.actual_length = candidate.size();
    const auto expected = spec.length();
    result.expected_length = expected.value_or(0);
    if (!expected || candidate.size() != *expected) {
        result.problem = VerifyResult::Problem::length_mismatch;
        return result;
    }
    for (std::size_t i = 0; i < candidate.size(); ++i) {
        if (candidate[i] >= spec.sigma()) {
            result.problem = VerifyResult::Problem::symbol_out_of_range;
            result.second_index = i;
            result.tuple = {candidate[i]};
            return result;
        }
    }
    const TupleKeyer keyer(spec.alphabet(), spec.order());
    WindowRoller roller(keyer);
    std::unordered_map<TupleKey, std::size_t> first_seen;
    first_seen.reserve(candidate.size());
    const std::size_t n = candidate.size();
    const std::size_t k = spec.order();
    for (std::size_t i = 0; i < n + k - 1; ++i) {
        roller.push(candidate.cyclic_at(i));
        if (!roller.ready()) continue;
        const std::size_t start = i + 1 - k;
        auto [it, inserted] = first_seen.try_emplace(roller.key(), start);
        if (!inserted) {
            result.problem = VerifyResult::Problem::duplicate_tuple;
            result.first_index = it->second;
            result.second_index = start;
            result.tuple.resize(k);
            for (std::size_t j = 0; j < k; ++j) result.tuple[j] = candidate.cyclic_at(start + j);
            return result;
        }
    }
    return result;
}

BigInt db_count(const DeBruijnSpec& spec) {
    const std::uint64_t sigma = spec.sigma();
    const std::size_t k = spec.order();
    double log10_factorial = 0.0;
    for (std::uint64_t i = 2; i <= sigma; ++i) log10_factorial += std::log10(static_cast<double>(i));
    const double digits = std::pow(static_cast<double>(sigma), static_cast<double>(k - 1)) * log10_factorial;
    if (!(digits <= DeBruijnSpec::kMaxCountDigits)) {
        throw SizeError("De Bruijn count for sigma=" + std::to_string(sigma) + ", order=" +
                        std::to_string(k) + " would need about " + std::to_string(digits) +
                        " digits; use the log2 form instead");
    }
    BigInt factorial = 1;
    for (std::uint64_t i = 2; i <= sigma; ++i) factorial *= i;
    const auto exponent = static_cast<unsigned>(*checked_power(sigma, k - 1));
    const BigInt numerator = boost::multiprecision::pow(factorial, exponent);
    const BigInt denominator = boost::multiprecision::pow(BigInt(sigma), static_cast<unsigned>(k));
    BigInt quotient;
    BigInt remainder;
    boost::multiprecision::divide_qr(numerator, denominator, quotient, remainder);
    if (remainder != 0) throw std::logic_error("De Bruijn count division left a remainder");
    return quotient;
}

CountBits db_count_bits(const DeBruijnSpec& spec) {
    const auto sigma = static_cast<double>(spec.sigma());
    const auto k = static_cast<double>(spec.order());
    double log2_factorial = 0.0;
    for (std::uint32_t i = 2; i <= spec.sigma(); ++i) log2_factorial += std::log2(static_cast<double>(i));
    CountBits bits;
    bits.log2_count = std::pow(sigma, k - 1) * log2_factorial - k * std::log2(sigma);
    bits.ratio = bits.log2_count / (std::pow(sigma, k) * std::log2(sigma));
    return bits;
}

std::vector<DeBruijnSeq> db_enumerate(const DeBruijnSpec& spec) {
    const auto length = spec.length();
    if (!length || *length > 16) {
        throw SizeError("enumeration is limited to sigma^order <= 16");
    }
    if (db_count(spec) > 100000) throw SizeError("enumeration is limited to 1e5 cycles");

    const std::uint64_t sigma = spec.sigma();
    const std::size_t k = spec.order();
    const std::size_t n = static_cast<std::size_t>(*length);
    std::vector<Symbol> seq(k, 0);
    std::vector<bool> used(n, false);
    used[0] = true;
    std::vector<DeBruijnSeq> out;

    auto window_value = [&](std::size_t start) {
        std::uint64_t v = 0;
        for (std::size_t j = 0; j < k; ++j) v = v * sigma + seq[(start + j) % n];
        return v;
    };

    std::function<void()> extend = [&]() {
        if (seq.size() == n) {
            // The k-1 windows that wrap around must also be new.
            std::vector<std::uint64_t> marked;
            bool valid = true;
            for (std::size_t start = n - k + 1; start < n && valid; ++start) {
                const auto v = window_value(start);
                if (used[v]) {
                    valid = false;
                } else {
                    used[v] = true;
                    marked.push_back(v);
                }
            }
            for (const auto v : marked) used[v] = false;
            if (valid) out.push_back(DeBruijnSeq{spec, Sequence(spec.alphabet(), seq)});
            return;
        }
        for (std::uint64_t a = 0; a < sigma; ++a) {
            seq.push_back(static_cast<Symbol>(a));
            const auto v = window_value(seq.size() - k);
            if (!used[v]) {
                used[v] = true;
                extend();
                used[v] = false;
            }
            seq.pop_back();
        }
    };
    extend();
    return out;
}

}  // namespace cardbounds
