#include "cardbounds/records.hpp"

#include <chrono>
#include <iomanip>
#include <sstream>
#include <string>

namespace cardbounds {

namespace {

std::string fmt(double v, int precision = 6) {
    std::ostringstream os;
    os << std::setprecision(precision) << v;
    return os.str();
}

const char* yes_no(bool b) { return b ? "yes" : "no"; }

}  // namespace

Record to_record(const ExperimentResult& result, bool include_timing) {
    Record r;
    r["name"] = result.config.name;
    Record params = Record::object();
    for (const auto& [key, value] : result.params) params[key] = value;
    r["params"] = params;
    r["estimate"] = result.estimate;
    r["stderr"] = result.standard_error;
    r["bound"] = result.bound;
    r["direction"] = std::string(to_string(result.direction));
    r["verdict"] = std::string(to_string(result.verdict));
    r["vacuous"] = result.vacuous;
    r["trials"] = result.trials;
    r["seed"] = result.config.seed;
    Record checks = Record::array();
    for (const auto& c : result.checks) {
        Record check;
        check["label"] = c.label;
        check["estimate"] = c.estimate;
        check["stderr"] = c.standard_error;
        check["bound"] = c.bound;
        check["direction"] = std::string(to_string(c.direction));
        check["margin"] = c.margin;
        check["vacuous"] = c.vacuous;
        check["passed"] = c.passed;
        checks.push_back(std::move(check));
    }
    r["checks"] = std::move(checks);
    Record stats = Record::object();
    for (const auto& [key, value] : result.stats) {
        std::visit([&](auto v) { stats[key] = v; }, value);
    }
    r["stats"] = std::move(stats);
    if (include_timing) {
        r["elapsed"] = std::chrono::duration<double>(result.elapsed).count();
    }
    return r;
}

Record to_record(const CompressibilityRow& row, double epsilon) {
    const auto& rep = row.report;
    Record r;
    r["k"] = rep.k;
    r["h_value"] = rep.h_value;
    r["total_bits"] = rep.total_bits;
    r["context_count"] = rep.context_count;
    r["zero"] = rep.zero;
    r["n"] = rep.n;
    r["sigma"] = rep.sigma;
    r["convention"] = std::string(to_string(rep.convention));
    Record thresholds;
    thresholds["log_sigma_n"] = row.log_sigma_n;
    thresholds["epsilon"] = epsilon;
    thresholds["k_ge_log"] = row.k_ge_log;
    thresholds["k_ge_one_plus_eps_log"] = row.k_ge_one_plus_eps;
    thresholds["k_ge_two_plus_eps_log"] = row.k_ge_two_plus_eps;
    r["thresholds"] = std::move(thresholds);
    return r;
}

void write_table(std::ostream& out, const ExperimentResult& result, bool include_timing) {
    out << "experiment  " << result.config.name << '\n';
    out << "params     ";
    for (const auto& [key, value] : result.params) out << ' ' << key << '=' << value;
    out << '\n';
    out << "trials      " << result.trials << '\n';
    out << "seed        " << result.config.seed << '\n';
    out << "estimate    " << fmt(result.estimate) << " +/- " << fmt(result.standard_error, 3) << " (1 SE)\n";
    out << "bound       " << to_string(result.direction) << ' ' << fmt(result.bound)
        << (result.vacuous ? "  [vacuous bound]" : "") << '\n';
    out << "checks\n";
    for (const auto& c : result.checks) {
        out << "  [" << (c.passed ? "pass" : "FAIL") << "] " << c.label << ": " << fmt(c.estimate) << ' '
            << to_string(c.direction) << ' ' << fmt(c.bound) << " (margin " << fmt(c.margin, 3) << ')'
            << (c.vacuous ? " [vacuous]" : "") << '\n';
    }
    if (!result.stats.empty()) {
        out << "stats\n";
        for (const auto& [key, value] : result.stats) {
            out << "  " << key << " = ";
            std::visit([&](auto v) {
                if constexpr (std::is_same_v<decltype(v), double>) {
                    out << fmt(v);
                } else {
                    out << v;
                }
            }, value);
            out << '\n';
        }
    }
    if (include_timing) {
        out << "elapsed     " << fmt(std::chrono::duration<double>(result.elapsed).count(), 4) << " s\n";
    }
    out << "verdict     " << to_string(result.verdict) << '\n';
}

void write_table(std::ostream& out, const std::vector<CompressibilityRow>& rows, double epsilon) {
    if (rows.empty()) return;
    const auto& first = rows.front().report;
    out << "n=" << first.n << " sigma=" << first.sigma << " convention=" << to_string(first.convention)
        << " log_sigma(n)=" << fmt(rows.front().log_sigma_n) << " epsilon=" << fmt(epsilon) << '\n';
    out << std::left << std::setw(5) << "k" << std::setw(14) << "h_k" << std::setw(14) << "total_bits"
        << std::setw(10) << "contexts" << std::setw(8) << ">=log" << std::setw(11) << ">=(1+e)log"
        << ">=(2+e)log" << '\n';
    for (const auto& row : rows) {
        const auto& r = row.report;
        out << std::left << std::setw(5) << r.k << std::setw(14) << fmt(r.h_value) << std::setw(14)
            << fmt(r.total_bits) << std::setw(10) << r.context_count << std::setw(8) << yes_no(row.k_ge_log)
            << std::setw(11) << yes_no(row.k_ge_one_plus_eps) << yes_no(row.k_ge_two_plus_eps) << '\n';
    }
}

}  // namespace cardbounds
