#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tcpurity/corpus.hpp"

namespace tcpurity::agg {

struct FamilyStats {
    std::string family;
    std::int64_t n = 0;
    double mean_olr = 0.0;
    double pass_rate = 0.0;  // in [0,1]
    std::int64_t degenerate_count = 0;

    bool operator==(const FamilyStats&) const = default;
};

struct MacroMicro {
    double macro_olr;
    double macro_pass;
    double micro_olr;
    double micro_pass;
};

struct AggregateReport {
    std::vector<FamilyStats> per_family;
    double macro_olr = 0.0;
    double macro_pass = 0.0;
    double micro_olr = 0.0;
    double micro_pass = 0.0;
    std::string policy_preset;
    std::string model_id;
    std::string run_id;
};

struct ComparisonRow {
    std::string family;  // "macro" / "micro" for the aggregate rows
    // 100 * (olr_base - olr_ours) / olr_base; null when olr_base == 0.
    std::optional<double> olr_rel_reduction_pct;
    // 100 * (pass_ours - pass_base), percentage points.
    double pass_pp_delta = 0.0;
};

struct Comparison {
    std::vector<ComparisonRow> per_family;
    ComparisonRow macro;
    ComparisonRow micro;
    std::string ours_model_id;
    std::string baseline_model_id;
    std::string policy_preset;
};

struct FamilyStatsResult {
    std::vector<FamilyStats> stats;  // manifest order, empty families omitted
    std::vector<std::string> warnings;
};

// Joins scores to families via the prompt pool. Unknown prompt_id or
// family raises CorpusError.
FamilyStatsResult family_stats(const std::vector<corpus::ScoreRecord>& scores,
                               const std::vector<corpus::PromptRecord>& prompts,
                               const std::vector<corpus::TaskFamily>& manifest);

// macro = unweighted mean over families; micro = record-count-weighted.
// Throws std::invalid_argument on empty input or any n == 0.
MacroMicro macro_micro(const std::vector<FamilyStats>& per_family);

AggregateReport make_report(std::vector<FamilyStats> per_family,
                            std::string policy_preset, std::string model_id,
                            std::string run_id);

// Requires matching policy presets and identical family sets.
Comparison compare(const AggregateReport& ours, const AggregateReport& baseline);

}  // namespace tcpurity::agg
