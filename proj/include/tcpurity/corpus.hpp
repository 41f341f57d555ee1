#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace tcpurity::corpus {

class CorpusError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct TaskFamily {
    std::string key;
    std::string display_name;
    int expected_n = 0;

    bool operator==(const TaskFamily&) const = default;
};

// The eight task families with their Table-style prompt counts
// (80, 100, 60, 100, 60, 60, 100, 100; total 660).
const std::vector<TaskFamily>& default_manifest();

const TaskFamily* find_family(const std::vector<TaskFamily>& manifest,
                              const std::string& key);

struct PromptRecord {
    std::string id;
    std::string family;
    std::string instruction;
    std::string input;  // may be empty

    bool operator==(const PromptRecord&) const = default;
};

struct DecodingConfig {
    double temperature = 0.2;
    double top_p = 0.9;
    int max_new_tokens = 1024;
    double repetition_penalty = 1.05;

    // temperature 0.2, top-p 0.9, max new tokens 1024, repetition
    // penalty 1.05.
    static DecodingConfig paper_fixed();
    static std::optional<DecodingConfig> from_preset(const std::string& name);

    bool operator==(const DecodingConfig&) const = default;
};

struct GenerationRecord {
    std::string prompt_id;
    std::string model_id;
    std::string run_id;
    std::string text;  // raw model output, stored verbatim
    DecodingConfig decoding;
    std::string timestamp;  // ISO-8601 UTC
    std::string error;      // non-empty when generation failed

    bool operator==(const GenerationRecord&) const = default;
};

struct ScoreRecord {
    std::string prompt_id;
    std::string model_id;
    std::string run_id;
    double olr = 0.0;
    bool pass_tc = false;
    std::int64_t counted_chars = 0;
    std::int64_t illegal_chars = 0;
    bool degenerate = false;
    std::string policy_preset;

    bool operator==(const ScoreRecord&) const = default;
};

struct PromptLoadResult {
    std::vector<PromptRecord> records;
    // Per-family count mismatches vs the manifest's expected_n.
    std::vector<std::string> warnings;
};

// JSON Lines, one object per line. Malformed lines, unknown family keys
// and duplicate ids raise CorpusError naming the line number.
PromptLoadResult load_prompts(const std::string& path,
                              const std::vector<TaskFamily>& manifest);

std::vector<GenerationRecord> load_generations(const std::string& path);
void save_generations(const std::string& path,
                      const std::vector<GenerationRecord>& records);

std::vector<ScoreRecord> load_scores(const std::string& path);
void save_scores(const std::string& path, const std::vector<ScoreRecord>& records);

}  // namespace tcpurity::corpus
