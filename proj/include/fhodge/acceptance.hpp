#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "fhodge/io.hpp"

namespace fhodge {

/// Outcome of one acceptance criterion. Reports carry no timings so that
/// repeated runs are byte-identical.
struct CriterionResult {
    int id = 0;
    std::string title;
    std::size_t samples = 0;
    std::size_t failures = 0;
    std::vector<std::string> failure_examples;  // first few, in seed order
    std::map<std::string, std::size_t> counters;
    bool pass() const { return samples > 0 && failures == 0; }
};

struct BatteryOptions {
    /// Scale of the battery; 1000 gives the full sample counts.
    std::uint64_t seeds = 1000;
    /// Worker threads; 0 picks the hardware concurrency. Results do not depend on it.
    unsigned threads = 0;
};

/// Criteria 1 to 8; criterion 9 compares whole reports and lives with the caller.
CriterionResult run_criterion(int id, const BatteryOptions& opts);
std::vector<CriterionResult> run_battery(const BatteryOptions& opts);

/// Number of samples for a criterion whose full count is `full`.
std::size_t scaled(std::size_t full, std::uint64_t seeds);

Json criterion_to_json(const CriterionResult& r);
Json battery_to_json(const std::vector<CriterionResult>& results, const BatteryOptions& opts);

}  // namespace fhodge
