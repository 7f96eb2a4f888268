#pragma once

// Structured output. Records are single-line JSON objects with keys in a fixed
// order; nothing run-dependent is emitted unless timing is requested, so equal
// invocations produce byte-identical records.

#include <ostream>
#include <vector>

#include <json.hpp>

#include "cardbounds/entropy.hpp"
#include "cardbounds/experiments.hpp"

namespace cardbounds {

using Record = nlohmann::ordered_json;

/// {name, params, estimate, stderr, bound, direction, verdict, vacuous, trials,
///  seed, checks, stats} plus `elapsed` (seconds) when include_timing is set.
Record to_record(const ExperimentResult& result, bool include_timing = false);

/// {k, h_value, total_bits, context_count, zero, n, sigma, convention, thresholds}.
Record to_record(const CompressibilityRow& row, double epsilon);

void write_table(std::ostream& out, const ExperimentResult& result, bool include_timing = false);
void write_table(std::ostream& out, const std::vector<CompressibilityRow>& rows, double epsilon);

}  // namespace cardbounds
