#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "cardbounds/textcore.hpp"
#include "cardbounds/tuple_key.hpp"

namespace cardbounds {

std::string_view to_string(Convention convention) noexcept;
std::optional<Convention> parse_convention(std::string_view text) noexcept;

/// One context and the counts of the symbols that follow it.
struct ContextEntry {
    std::vector<Symbol> context;
    std::vector<std::uint64_t> successors;  ///< indexed by symbol, length sigma

    std::uint64_t total() const noexcept;
    /// At most one successor symbol has a nonzero count.
    bool deterministic() const noexcept;
};

/// Successor counts of every length-k context of a sequence.
///
/// Linear: position i in [0, n-k) contributes s[i+k] to context s[i..i+k).
/// Cyclic (n >= k): every position i in [0, n) contributes s[(i+k) mod n] to
/// the wrapped context starting at i. With k = 0 there is a single empty
/// context whose successor counts are the symbol occurrence counts.
/// Entries are kept in order of first occurrence.
class ContextTable {
public:
    static ContextTable build(const Sequence& seq, std::size_t k, Convention convention);

    std::size_t k() const noexcept { return k_; }
    Convention convention() const noexcept { return convention_; }
    std::uint32_t sigma() const noexcept { return sigma_; }
    std::uint64_t total_positions() const noexcept { return total_positions_; }
    std::size_t size() const noexcept { return entries_.size(); }
    std::span<const ContextEntry> entries() const noexcept { return entries_; }

    /// nullptr when the context never occurs with a successor.
    const ContextEntry* find(std::span<const Symbol> context) const;

    /// True when every context is followed by a single symbol.
    bool all_deterministic() const noexcept;

private:
    ContextTable(std::size_t k, Convention convention, Alphabet alphabet);

    std::size_t k_;
    Convention convention_;
    std::uint32_t sigma_;
    TupleKeyer keyer_;
    std::uint64_t total_positions_ = 0;
    std::vector<ContextEntry> entries_;
    std::unordered_map<TupleKey, std::size_t> index_;
};

struct EntropyReport {
    std::size_t n = 0;
    std::uint32_t sigma = 2;
    std::size_t k = 0;
    Convention convention = Convention::linear;
    double h_value = 0.0;     ///< bits per symbol
    double total_bits = 0.0;  ///< n * h_value
    std::size_t context_count = 0;
    /// Set from the successor vectors, not from h_value.
    bool zero = true;
};

/// 0th-order empirical entropy in bits per symbol; 0 for the empty sequence.
double h0(const Sequence& seq);

/// k-th order empirical entropy, normalised by n for both conventions.
EntropyReport hk(const Sequence& seq, std::size_t k, Convention convention = Convention::linear);

/// Same contract as hk() computed by direct quadratic scanning with no hashing.
/// Only meant as a test oracle.
EntropyReport hk_bruteforce(const Sequence& seq, std::size_t k,
                            Convention convention = Convention::linear);

/// Number of unordered pairs of window positions carrying equal k-tuples.
/// Requires k >= 1; cyclic requires n >= k.
std::uint64_t match_count(const Sequence& seq, std::size_t k,
                          Convention convention = Convention::linear);

/// The first pair of equal k-windows, as 0-based start positions.
std::optional<std::pair<std::size_t, std::size_t>> first_match(
    const Sequence& seq, std::size_t k, Convention convention = Convention::linear);

struct CompressibilityRow {
    EntropyReport report;
    double log_sigma_n = 0.0;
    bool k_ge_log = false;           ///< k >= log_sigma n
    bool k_ge_one_plus_eps = false;  ///< k >= (1 + eps) log_sigma n
    bool k_ge_two_plus_eps = false;  ///< k >= (2 + eps) log_sigma n
};

/// One row per k in [0, k_max]. The threshold flags are informational.
std::vector<CompressibilityRow> compressibility_report(const Sequence& seq, std::size_t k_max,
                                                       double epsilon = 0.0,
                                                       Convention convention = Convention::linear);

}  // namespace cardbounds
