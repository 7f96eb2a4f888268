#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "cardbounds/rng.hpp"
#include "cardbounds/textcore.hpp"

namespace cardbounds {

using BigInt = boost::multiprecision::cpp_int;

/// Alphabet size and order of a De Bruijn cycle.
class DeBruijnSpec {
public:
    /// Longest cycle db_generate will build.
    static constexpr std::uint64_t kMaxGeneratedLength = std::uint64_t{1} << 24;
    /// Largest count db_count will compute, in decimal digits of (sigma!)^(sigma^(k-1)).
    static constexpr double kMaxCountDigits = 1e6;

    DeBruijnSpec(std::uint64_t sigma, std::size_t order);

    std::uint32_t sigma() const noexcept { return alphabet_.sigma(); }
    std::size_t order() const noexcept { return order_; }
    Alphabet alphabet() const noexcept { return alphabet_; }

    /// sigma^order, or nullopt if it does not fit in 64 bits.
    std::optional<std::uint64_t> length() const noexcept;

private:
    Alphabet alphabet_;
    std::size_t order_;
};

/// A verified cycle in canonical rotation (starts with `order` zeros).
struct DeBruijnSeq {
    DeBruijnSpec spec;
    Sequence seq;
};

enum class GenerationStrategy {
    greedy_least,     ///< deterministic prefer-smallest walk
    eulerian_random,  ///< seeded Hierholzer walk over shuffled edges
};

std::string_view to_string(GenerationStrategy strategy) noexcept;
std::optional<GenerationStrategy> parse_strategy(std::string_view text) noexcept;

/// Build a De Bruijn cycle.
///
/// greedy-least starts from (sigma-1)^k and repeatedly appends the smallest
/// symbol whose k-window is new; the walk stops after sigma^k + k - 1 symbols,
/// and its first sigma^k symbols are rotated to begin at 0^k. For sigma = 2
/// this is the lexicographically least cycle (0011, 00010111, ...).
///
/// eulerian-random runs Hierholzer's algorithm on the order-(k-1) De Bruijn
/// graph with each vertex's out-edges shuffled by `rng`. Different seeds give
/// different cycles, but the distribution over cycles is not uniform.
///
/// Throws SizeError when sigma^k exceeds kMaxGeneratedLength and ConfigError
/// when eulerian-random is requested without an rng.
DeBruijnSeq db_generate(const DeBruijnSpec& spec,
                        GenerationStrategy strategy = GenerationStrategy::greedy_least,
                        std::optional<RngSpec> rng = std::nullopt);

struct VerifyResult {
    enum class Problem { none, length_mismatch, symbol_out_of_range, duplicate_tuple };

    Problem problem = Problem::none;
    std::size_t expected_length = 0;
    std::size_t actual_length = 0;
    /// For duplicate_tuple, the 0-based cyclic start positions of the first
    /// repeated window and its earlier copy. For symbol_out_of_range, the
    /// offending position in `second_index`.
    std::size_t first_index = 0;
    std::size_t second_index = 0;
    std::vector<Symbol> tuple;

    bool ok() const noexcept { return problem == Problem::none; }
    explicit operator bool() const noexcept { return ok(); }
    /// Human-readable diagnosis with 1-based positions; "ok" when valid.
    std::string describe() const;
};

/// Checks length sigma^k and that every cyclic k-window is distinct.
VerifyResult db_verify(const Sequence& candidate, const DeBruijnSpec& spec);

/// Exact number of De Bruijn cycles: (sigma!)^(sigma^(k-1)) / sigma^k.
/// Throws SizeError past kMaxCountDigits.
BigInt db_count(const DeBruijnSpec& spec);

struct CountBits {
    double log2_count = 0.0;  ///< sigma^(k-1) log2(sigma!) - k log2(sigma)
    double ratio = 0.0;       ///< log2_count / (sigma^k log2 sigma)
};

CountBits db_count_bits(const DeBruijnSpec& spec);

/// Every canonical cycle, in lexicographic order, by exhaustive backtracking.
/// Guarded to sigma^k <= 16 and a predicted count of at most 1e5.
std::vector<DeBruijnSeq> db_enumerate(const DeBruijnSpec& spec);

/// Rotate a cycle so that it starts at its first run of `order` zeros.
/// Returns the input unchanged if no such run exists.
Sequence canonical_rotation(const Sequence& cycle, std::size_t order);

}  // namespace cardbounds
