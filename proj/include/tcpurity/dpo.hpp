#pragma once

#include <string>
#include <vector>

#include "tcpurity/corpus.hpp"
#include "tcpurity/script_policy.hpp"

namespace tcpurity::dpo {

struct PreferenceTriplet {
    std::string prompt;  // instruction + input, joined as the runner sends it
    std::string chosen;
    std::string rejected;
    double chosen_olr = 0.0;
    double rejected_olr = 0.0;
    std::string prompt_id;
};

struct BuildSummary {
    std::int64_t emitted = 0;
    std::int64_t skipped_no_preferred = 0;
    std::int64_t skipped_preferred_impure = 0;
    std::int64_t skipped_no_candidate = 0;
};

struct BuildResult {
    std::vector<PreferenceTriplet> triplets;  // prompt order
    BuildSummary summary;
};

// For each prompt: keep it when the preferred response scores
// olr <= chosen_max_olr and some candidate scores olr >= rejected_min_olr
// with olr strictly above the chosen. Among qualifying candidates the
// one with maximal olr wins, ties broken by smallest run_id then earliest
// timestamp. A prompt_id seen in preferred/candidates but absent from
// `prompts` raises CorpusError.
BuildResult build_pairs(const std::vector<corpus::PromptRecord>& prompts,
                        const std::vector<corpus::GenerationRecord>& preferred,
                        const std::vector<corpus::GenerationRecord>& candidates,
                        const script::ScriptPolicy& policy,
                        double chosen_max_olr = 0.02,
                        double rejected_min_olr = 0.10);

// {"prompt","chosen","rejected"} per line; provenance goes to the
// `<path>.meta.jsonl` sidecar.
void save_pairs(const std::string& path, const std::vector<PreferenceTriplet>& triplets);

std::vector<PreferenceTriplet> load_pairs_with_meta(const std::string& path);

}  // namespace tcpurity::dpo
