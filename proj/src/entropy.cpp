#include "cardbounds/entropy.hpp"

#include <algorithm>
#include <cmath>

#include "cardbounds/errors.hpp"

namespace cardbounds {

std::string_view to_string(Convention convention) noexcept {
    return convention == Convention::cyclic ? "cyclic" : "linear";
}

std::optional<Convention> parse_convention(std::string_view text) noexcept {
    if (text == "linear") return Convention::linear;
    if (text == "cyclic") return Convention::cyclic;
    return std::nullopt;
}

std::uint64_t ContextEntry::total() const noexcept {
    std::uint64_t t = 0;
    for (const auto c : successors) t += c;
    return t;
}

bool ContextEntry::deterministic() const noexcept {
    return std::count_if(successors.begin(), successors.end(), [](auto c) { return c != 0; }) <= 1;
}

ContextTable::ContextTable(std::size_t k, Convention convention, Alphabet alphabet)
    : k_(k), convention_(convention), sigma_(alphabet.sigma()), keyer_(alphabet, k) {}

ContextTable ContextTable::build(const Sequence& seq, std::size_t k, Convention convention) {
    const std::size_t n = seq.size();
    if (convention == Convention::cyclic && n < k) {
        throw InputError("cyclic context table of order " + std::to_string(k) +
                         " needs at least " + std::to_string(k) + " symbols, got " +
                         std::to_string(n));
    }
    ContextTable table(k, convention, seq.alphabet());
    const std::size_t positions = convention == Convention::cyclic ? n : (n > k ? n - k : 0);
    table.total_positions_ = positions;
    if (positions == 0) return table;

    // Window i starts at i; its successor is the symbol after it (cyclically).
    const auto keys = window_keys(seq, table.keyer_, convention);
    for (std::size_t i = 0; i < positions; ++i) {
        auto [it, inserted] = table.index_.try_emplace(keys[i], table.entries_.size());
        if (inserted) {
            ContextEntry entry;
            entry.context.resize(k);
            for (std::size_t j = 0; j < k; ++j) entry.context[j] = seq.cyclic_at(i + j);
            entry.successors.assign(table.sigma_, 0);
            table.entries_.push_back(std::move(entry));
        }
        ++table.entries_[it->second].successors[seq.cyclic_at(i + k)];
    }
    return table;
}

const ContextEntry* ContextTable::find(std::span<const Symbol> context) const {
    if (context.size() != k_) return nullptr;
    for (const Symbol s : context) {
        if (s >= sigma_) return nullptr;
    }
    const auto it = index_.find(keyer_.key(context));
    return it == index_.end() ? nullptr : &entries_[it->second];
}

bool ContextTable::all_deterministic() const noexcept {
    return std::all_of(entries_.begin(), entries_.end(),
                       [](const ContextEntry& e) { return e.deterministic(); });
}

double h0(const Sequence& seq) {
    const std::size_t n = seq.size();
    if (n == 0) return 0.0;
    std::vector<std::uint64_t> occ(seq.sigma(), 0);
    for (const Symbol s : seq) ++occ[s];
    double sum = 0.0;
    for (const auto c : occ) {
        if (c != 0) sum += static_cast<double>(c) * std::log2(static_cast<double>(n) / static_cast<double>(c));
    }
    return sum / static_cast<double>(n);
}

namespace {

EntropyReport make_report(const Sequence& seq, std::size_t k, Convention convention) {
    EntropyReport r;
    r.n = seq.size();
    r.sigma = seq.sigma();
    r.k = k;
    r.convention = convention;
    return r;
}

void finish_report(EntropyReport& r, double sum) {
    r.h_value = r.n == 0 ? 0.0 : sum / static_cast<double>(r.n);
    r.total_bits = static_cast<double>(r.n) * r.h_value;
}

}  // namespace

EntropyReport hk(const Sequence& seq, std::size_t k, Convention convention) {
    auto report = make_report(seq, k, convention);
    if (k == 0) {
        report.h_value = h0(seq);
        report.total_bits = static_cast<double>(report.n) * report.h_value;
        report.context_count = seq.empty() ? 0 : 1;
        report.zero = std::count_if(seq.begin(), seq.end(), [&](Symbol s) { return s != seq[0]; }) == 0;
        return report;
    }
    const auto table = ContextTable::build(seq, k, convention);
    report.context_count = table.size();
    // One running sum over (context in first-occurrence order, symbol ascending);
    // deterministic contexts contribute exactly +0.0 and are skipped.
    double sum = 0.0;
    for (const auto& entry : table.entries()) {
        if (entry.deterministic()) continue;
        report.zero = false;
        const auto len = static_cast<double>(entry.total());
        for (const auto c : entry.successors) {
            if (c != 0) sum += static_cast<double>(c) * std::log2(len / static_cast<double>(c));
        }
    }
    finish_report(report, sum);
    return report;
}

EntropyReport hk_bruteforce(const Sequence& seq, std::size_t k, Convention convention) {
    auto report = make_report(seq, k, convention);
    const std::size_t n = seq.size();
    const auto s = seq.symbols();
    const std::uint32_t sigma = seq.sigma();
    double sum = 0.0;

    if (k == 0) {
        std::size_t distinct = 0;
        for (Symbol a = 0; a < sigma; ++a) {
            std::size_t c = 0;
            for (std::size_t i = 0; i < n; ++i) {
                if (s[i] == a) ++c;
            }
            if (c == 0) continue;
            ++distinct;
            sum += static_cast<double>(c) * std::log2(static_cast<double>(n) / static_cast<double>(c));
        }
        report.context_count = n == 0 ? 0 : 1;
        report.zero = distinct <= 1;
        finish_report(report, sum);
        return report;
    }

    if (convention == Convention::cyclic && n < k) {
        throw InputError("cyclic entropy of order " + std::to_string(k) + " needs at least " +
                         std::to_string(k) + " symbols, got " + std::to_string(n));
    }
    const std::size_t positions = convention == Convention::cyclic ? n : (n > k ? n - k : 0);
    auto at = [&](std::size_t i) { return s[i % n]; };
    auto same_context = [&](std::size_t i, std::size_t j) {
        for (std::size_t t = 0; t < k; ++t) {
            if (at(i + t) != at(j + t)) return false;
        }
        return true;
    };

    for (std::size_t i = 0; i < positions; ++i) {
        bool seen = false;
        for (std::size_t j = 0; j < i && !seen; ++j) seen = same_context(i, j);
        if (seen) continue;
        ++report.context_count;
        std::vector<std::size_t> counts(sigma, 0);
        std::size_t len = 0;
        for (std::size_t j = i; j < positions; ++j) {
            if (!same_context(i, j)) continue;
            ++counts[at(j + k)];
            ++len;
        }
        std::size_t nonzero = 0;
        for (Symbol a = 0; a < sigma; ++a) {
            if (counts[a] == 0) continue;
            ++nonzero;
            sum += static_cast<double>(counts[a]) *
                   std::log2(static_cast<double>(len) / static_cast<double>(counts[a]));
        }
        if (nonzero > 1) report.zero = false;
    }
    finish_report(report, sum);
    return report;
}

std::uint64_t match_count(const Sequence& seq, std::size_t k, Convention convention) {
    if (k == 0) throw ConfigError("match_count needs k >= 1");
    const TupleKeyer keyer(seq.alphabet(), k);
    const auto keys = window_keys(seq, keyer, convention);
    std::unordered_map<TupleKey, std::uint64_t> multiplicity;
    multiplicity.reserve(keys.size());
    std::uint64_t pairs = 0;
    // Each new copy of a window pairs with every earlier copy.
    for (const auto& key : keys) pairs += multiplicity[key]++;
    return pairs;
}

std::optional<std::pair<std::size_t, std::size_t>> first_match(const Sequence& seq, std::size_t k,
                                                               Convention convention) {
    if (k == 0) throw ConfigError("first_match needs k >= 1");
    const TupleKeyer keyer(seq.alphabet(), k);
    const auto keys = window_keys(seq, keyer, convention);
    std::unordered_map<TupleKey, std::size_t> first_seen;
    for (std::size_t j = 0; j < keys.size(); ++j) {
        auto [it, inserted] = first_seen.try_emplace(keys[j], j);
        if (!inserted) return std::pair{it->second, j};
    }
    return std::nullopt;
}

namespace {

// sigma^k >= n, saturating.
bool power_reaches(std::uint64_t sigma, std::size_t k, std::uint64_t n) {
    std::uint64_t p = 1;
    for (std::size_t i = 0; i < k; ++i) {
        if (p >= n) return true;
        p *= sigma;
    }
    return p >= n;
}

}  // namespace

std::vector<CompressibilityRow> compressibility_report(const Sequence& seq, std::size_t k_max,
                                                       double epsilon, Convention convention) {
    const std::size_t n = seq.size();
    const double log_n = n <= 1 ? 0.0 : std::log(static_cast<double>(n)) / std::log(static_cast<double>(seq.sigma()));
    std::vector<CompressibilityRow> rows;
    rows.reserve(k_max + 1);
    for (std::size_t k = 0; k <= k_max; ++k) {
        CompressibilityRow row;
        row.report = hk(seq, k, convention);
        row.log_sigma_n = log_n;
        row.k_ge_log = power_reaches(seq.sigma(), k, n);
        const auto kd = static_cast<double>(k);
        row.k_ge_one_plus_eps = kd >= (1.0 + epsilon) * log_n;
        row.k_ge_two_plus_eps = kd >= (2.0 + epsilon) * log_n;
        rows.push_back(row);
    }
    return rows;
}

}  // namespace cardbounds
