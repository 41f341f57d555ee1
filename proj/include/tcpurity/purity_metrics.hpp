#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "tcpurity/script_policy.hpp"

namespace tcpurity::metrics {

struct PurityScore {
    double olr = 0.0;       // illegal_chars / counted_chars
    bool pass_tc = false;   // olr == 0, on non-degenerate input
    std::int64_t counted_chars = 0;
    std::int64_t illegal_chars = 0;
    // Empty after normalization. Scored as maximally contaminated:
    // olr = 1.0, pass_tc = false.
    bool degenerate = false;
    // Covers counted and skipped characters alike.
    std::map<script::CharClass, std::int64_t> class_histogram;
};

// Normalizes `raw`, classifies every scalar value, tallies.
PurityScore score(std::string_view raw, const script::ScriptPolicy& policy);

struct BatchItem {
    std::string id;
    std::string text;
};

// Scores each item independently, preserving input order.
// Throws std::invalid_argument on duplicate ids.
std::vector<std::pair<std::string, PurityScore>> score_batch(
    const std::vector<BatchItem>& items, const script::ScriptPolicy& policy);

}  // namespace tcpurity::metrics
