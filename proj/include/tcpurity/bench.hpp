#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "tcpurity/corpus.hpp"

namespace tcpurity::bench {

class BenchError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Which JSON field carries the repetition penalty. OpenAI-compatible
// servers disagree on the name; the choice is recorded per record batch.
enum class PenaltyField { RepetitionPenalty, FrequencyPenalty };

std::string_view penalty_field_name(PenaltyField f);

struct EndpointSpec {
    std::string base_url;  // e.g. "http://localhost:8080"
    std::string model_name;
    std::string api_key;  // optional; sent as a Bearer token when set
    int timeout_s = 120;
    int max_in_flight = 4;
    int max_retries = 3;
    int initial_backoff_ms = 250;
    int max_backoff_ms = 8000;
    PenaltyField penalty_field = PenaltyField::RepetitionPenalty;
};

struct AttemptLog {
    std::string prompt_id;
    int attempts = 0;
    std::string last_error;  // empty on success
};

struct BenchResult {
    std::vector<corpus::GenerationRecord> records;  // prompt order, 1:1
    std::vector<AttemptLog> attempts;               // prompt order
};

// The user message the runner sends: instruction, then a blank line and
// the input when the input is non-empty.
std::string prompt_to_message(const corpus::PromptRecord& prompt);

// One generation per prompt under the fixed decoding config. The
// endpoint is probed once before the batch; an unreachable endpoint
// raises BenchError without issuing any generation request. 429/5xx and
// transport errors retry with capped exponential backoff and full
// jitter; exhausted or non-retryable prompts yield a record with empty
// text and an error annotation.
BenchResult run_benchmark(const std::vector<corpus::PromptRecord>& prompts,
                          const EndpointSpec& endpoint,
                          const corpus::DecodingConfig& decoding,
                          const std::string& run_id);

}  // namespace tcpurity::bench
