#include "tcpurity/corpus.hpp"

#include <fstream>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "json.hpp"
#include "tcpurity/unicode.hpp"

namespace tcpurity::corpus {

using json = nlohmann::ordered_json;

const std::vector<TaskFamily>& default_manifest() {
    static const std::vector<TaskFamily> manifest = {
        {"entity_translation", "Entity Translation", 80},
        {"bilingual_purity", "Bilingual Purity", 100},
        {"sc_conversion", "SC Conversion", 60},
        {"structured_json", "Structured JSON", 100},
        {"content_organization", "Content Organization", 60},
        {"long_form_summary", "Long-Form Summary", 60},
        {"noise_robustness", "Noise Robustness", 100},
        {"named_entity_translation", "Named Entity Translation", 100},
    };
    return manifest;
}

const TaskFamily* find_family(const std::vector<TaskFamily>& manifest,
                              const std::string& key) {
    for (const auto& f : manifest) {
        if (f.key == key) return &f;
    }
    return nullptr;
}

DecodingConfig DecodingConfig::paper_fixed() { return DecodingConfig{}; }

std::optional<DecodingConfig> DecodingConfig::from_preset(const std::string& name) {
    if (name == "paper-fixed") return paper_fixed();
    return std::nullopt;
}

namespace {

[[noreturn]] void fail(const std::string& path, std::size_t line, const std::string& what) {
    throw CorpusError(path + ":" + std::to_string(line) + ": " + what);
}

// One parsed JSON object per non-empty line, with UTF-8 checked so a bad
// byte is reported by offset rather than surfacing as a parse error.
template <typename Fn>
void for_each_line(const std::string& path, Fn&& fn) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw CorpusError(path + ": cannot open file");
    }
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (auto bad = unicode::find_invalid_utf8(line)) {
            fail(path, lineno, "ill-formed UTF-8 at byte offset " + std::to_string(*bad));
        }
        json obj = json::parse(line, nullptr, false);
        if (obj.is_discarded() || !obj.is_object()) {
            fail(path, lineno, "malformed JSON object");
        }
        fn(lineno, obj);
    }
}

std::string require_string(const std::string& path, std::size_t line, const json& obj,
                           const char* field) {
    auto it = obj.find(field);
    if (it == obj.end() || !it->is_string()) {
        fail(path, line, std::string("missing or non-string field \"") + field + "\"");
    }
    return it->get<std::string>();
}

double require_number(const std::string& path, std::size_t line, const json& obj,
                      const char* field) {
    auto it = obj.find(field);
    if (it == obj.end() || !it->is_number()) {
        fail(path, line, std::string("missing or non-numeric field \"") + field + "\"");
    }
    return it->get<double>();
}

json decoding_to_json(const DecodingConfig& d) {
    return json{{"temperature", d.temperature},
                {"top_p", d.top_p},
                {"max_new_tokens", d.max_new_tokens},
                {"repetition_penalty", d.repetition_penalty}};
}

DecodingConfig decoding_from_json(const std::string& path, std::size_t line, const json& obj) {
    DecodingConfig d;
    d.temperature = require_number(path, line, obj, "temperature");
    d.top_p = require_number(path, line, obj, "top_p");
    d.max_new_tokens = static_cast<int>(require_number(path, line, obj, "max_new_tokens"));
    d.repetition_penalty = require_number(path, line, obj, "repetition_penalty");
    return d;
}

void write_lines(const std::string& path, const std::vector<json>& rows) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw CorpusError(path + ": cannot open file for writing");
    }
    for (const auto& row : rows) {
        out << row.dump() << '\n';
    }
    if (!out) {
        throw CorpusError(path + ": write failed");
    }
}

}  // namespace

PromptLoadResult load_prompts(const std::string& path,
                              const std::vector<TaskFamily>& manifest) {
    PromptLoadResult result;
    std::unordered_set<std::string> ids;
    std::unordered_map<std::string, int> counts;
    for_each_line(path, [&](std::size_t lineno, const json& obj) {
        PromptRecord rec;
        rec.id = require_string(path, lineno, obj, "id");
        rec.family = require_string(path, lineno, obj, "family");
        rec.instruction = require_string(path, lineno, obj, "instruction");
        if (auto it = obj.find("input"); it != obj.end() && it->is_string()) {
            rec.input = it->get<std::string>();
        }
        if (find_family(manifest, rec.family) == nullptr) {
            fail(path, lineno, "unknown family \"" + rec.family + "\"");
        }
        if (!ids.insert(rec.id).second) {
            fail(path, lineno, "duplicate prompt id \"" + rec.id + "\"");
        }
        ++counts[rec.family];
        result.records.push_back(std::move(rec));
    });
    // Count mismatches are warnings only; a pool can legitimately be a
    // subset of the manifest.
    for (const auto& f : manifest) {
        const int got = counts.count(f.key) ? counts.at(f.key) : 0;
        if (got != f.expected_n) {
            std::ostringstream msg;
            msg << "family " << f.key << ": expected " << f.expected_n
                << " prompts, found " << got;
            result.warnings.push_back(msg.str());
        }
    }
    return result;
}

std::vector<GenerationRecord> load_generations(const std::string& path) {
    std::vector<GenerationRecord> records;
    std::unordered_set<std::string> keys;
    for_each_line(path, [&](std::size_t lineno, const json& obj) {
        GenerationRecord rec;
        rec.prompt_id = require_string(path, lineno, obj, "prompt_id");
        rec.model_id = require_string(path, lineno, obj, "model_id");
        rec.run_id = require_string(path, lineno, obj, "run_id");
        rec.text = require_string(path, lineno, obj, "text");
        rec.timestamp = require_string(path, lineno, obj, "timestamp");
        auto dec = obj.find("decoding");
        if (dec == obj.end() || !dec->is_object()) {
            fail(path, lineno, "missing or non-object field \"decoding\"");
        }
        rec.decoding = decoding_from_json(path, lineno, *dec);
        if (auto it = obj.find("error"); it != obj.end() && it->is_string()) {
            rec.error = it->get<std::string>();
        }
        const std::string key = rec.prompt_id + "\x1f" + rec.model_id + "\x1f" + rec.run_id;
        if (!keys.insert(key).second) {
            fail(path, lineno, "duplicate (prompt_id, model_id, run_id)");
        }
        records.push_back(std::move(rec));
    });
    return records;
}

void save_generations(const std::string& path,
                      const std::vector<GenerationRecord>& records) {
    std::vector<json> rows;
    rows.reserve(records.size());
    for (const auto& rec : records) {
        json row{{"prompt_id", rec.prompt_id}, {"model_id", rec.model_id},
                 {"run_id", rec.run_id},       {"text", rec.text},
                 {"decoding", decoding_to_json(rec.decoding)},
                 {"timestamp", rec.timestamp}};
        if (!rec.error.empty()) {
            row["error"] = rec.error;
        }
        rows.push_back(std::move(row));
    }
    write_lines(path, rows);
}

std::vector<ScoreRecord> load_scores(const std::string& path) {
    std::vector<ScoreRecord> records;
    std::unordered_set<std::string> keys;
    for_each_line(path, [&](std::size_t lineno, const json& obj) {
        ScoreRecord rec;
        rec.prompt_id = require_string(path, lineno, obj, "prompt_id");
        rec.model_id = require_string(path, lineno, obj, "model_id");
        rec.run_id = require_string(path, lineno, obj, "run_id");
        rec.olr = require_number(path, lineno, obj, "olr");
        rec.counted_chars =
            static_cast<std::int64_t>(require_number(path, lineno, obj, "counted_chars"));
        rec.illegal_chars =
            static_cast<std::int64_t>(require_number(path, lineno, obj, "illegal_chars"));
        rec.policy_preset = require_string(path, lineno, obj, "policy_preset");
        auto pass = obj.find("pass_tc");
        if (pass == obj.end() || !pass->is_boolean()) {
            fail(path, lineno, "missing or non-boolean field \"pass_tc\"");
        }
        rec.pass_tc = pass->get<bool>();
        auto deg = obj.find("degenerate");
        if (deg == obj.end() || !deg->is_boolean()) {
            fail(path, lineno, "missing or non-boolean field \"degenerate\"");
        }
        rec.degenerate = deg->get<bool>();
        const std::string key = rec.prompt_id + "\x1f" + rec.model_id + "\x1f" + rec.run_id;
        if (!keys.insert(key).second) {
            fail(path, lineno, "duplicate (prompt_id, model_id, run_id)");
        }
        records.push_back(std::move(rec));
    });
    return records;
}

void save_scores(const std::string& path, const std::vector<ScoreRecord>& records) {
    std::vector<json> rows;
    rows.reserve(records.size());
    for (const auto& rec : records) {
        rows.push_back(json{{"prompt_id", rec.prompt_id},
                            {"model_id", rec.model_id},
                            {"run_id", rec.run_id},
                            {"olr", rec.olr},
                            {"pass_tc", rec.pass_tc},
                            {"counted_chars", rec.counted_chars},
                            {"illegal_chars", rec.illegal_chars},
                            {"degenerate", rec.degenerate},
                            {"policy_preset", rec.policy_preset}});
    }
    write_lines(path, rows);
}

}  // namespace tcpurity::corpus
