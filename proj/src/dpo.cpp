#include "tcpurity/dpo.hpp"

#include <fstream>
#include <tuple>
#include <unordered_map>

#include "json.hpp"
#include "tcpurity/bench.hpp"
#include "tcpurity/purity_metrics.hpp"

namespace tcpurity::dpo {

using json = nlohmann::ordered_json;

namespace {

struct Scored {
    const corpus::GenerationRecord* record;
    double olr;
};

void check_known(const std::vector<corpus::GenerationRecord>& records,
                 const std::unordered_map<std::string, const corpus::PromptRecord*>& prompts,
                 const char* side) {
    for (const auto& r : records) {
        if (!prompts.count(r.prompt_id)) {
            throw corpus::CorpusError(std::string(side) + " generation references unknown prompt_id \"" +
                                      r.prompt_id + "\"");
        }
    }
}

}  // namespace

BuildResult build_pairs(const std::vector<corpus::PromptRecord>& prompts,
                        const std::vector<corpus::GenerationRecord>& preferred,
                        const std::vector<corpus::GenerationRecord>& candidates,
                        const script::ScriptPolicy& policy,
                        double chosen_max_olr, double rejected_min_olr) {
    if (chosen_max_olr < 0.0 || chosen_max_olr > 1.0 || rejected_min_olr < 0.0 ||
        rejected_min_olr > 1.0) {
        throw std::invalid_argument("dpo thresholds must lie in [0,1]");
    }

    std::unordered_map<std::string, const corpus::PromptRecord*> by_id;
    for (const auto& p : prompts) by_id[p.id] = &p;
    check_known(preferred, by_id, "preferred");
    check_known(candidates, by_id, "candidate");

    std::unordered_map<std::string, Scored> preferred_by_prompt;
    for (const auto& r : preferred) {
        preferred_by_prompt.insert({r.prompt_id, {&r, metrics::score(r.text, policy).olr}});
    }
    std::unordered_map<std::string, std::vector<Scored>> candidates_by_prompt;
    for (const auto& r : candidates) {
        candidates_by_prompt[r.prompt_id].push_back(
            {&r, metrics::score(r.text, policy).olr});
    }

    BuildResult result;
    for (const auto& p : prompts) {
        auto pref = preferred_by_prompt.find(p.id);
        if (pref == preferred_by_prompt.end()) {
            ++result.summary.skipped_no_preferred;
            continue;
        }
        if (pref->second.olr > chosen_max_olr) {
            ++result.summary.skipped_preferred_impure;
            continue;
        }
        const Scored* best = nullptr;
        auto cands = candidates_by_prompt.find(p.id);
        if (cands != candidates_by_prompt.end()) {
            for (const Scored& c : cands->second) {
                if (c.olr < rejected_min_olr || c.olr <= pref->second.olr) continue;
                if (c.record->text == pref->second.record->text) continue;
                if (best == nullptr || c.olr > best->olr ||
                    (c.olr == best->olr &&
                     std::tie(c.record->run_id, c.record->timestamp) <
                         std::tie(best->record->run_id, best->record->timestamp))) {
                    best = &c;
                }
            }
        }
        if (best == nullptr) {
            ++result.summary.skipped_no_candidate;
            continue;
        }
        PreferenceTriplet t;
        t.prompt = bench::prompt_to_message(p);
        t.chosen = pref->second.record->text;
        t.rejected = best->record->text;
        t.chosen_olr = pref->second.olr;
        t.rejected_olr = best->olr;
        t.prompt_id = p.id;
        result.triplets.push_back(std::move(t));
        ++result.summary.emitted;
    }
    return result;
}

void save_pairs(const std::string& path, const std::vector<PreferenceTriplet>& triplets) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    std::ofstream meta(path + ".meta.jsonl", std::ios::binary | std::ios::trunc);
    if (!out || !meta) {
        throw corpus::CorpusError(path + ": cannot open file for writing");
    }
    for (const auto& t : triplets) {
        out << json{{"prompt", t.prompt}, {"chosen", t.chosen}, {"rejected", t.rejected}}.dump()
            << '\n';
        meta << json{{"prompt_id", t.prompt_id},
                     {"chosen_olr", t.chosen_olr},
                     {"rejected_olr", t.rejected_olr}}
                    .dump()
             << '\n';
    }
}

std::vector<PreferenceTriplet> load_pairs_with_meta(const std::string& path) {
    std::ifstream pairs(path, std::ios::binary);
    std::ifstream meta(path + ".meta.jsonl", std::ios::binary);
    if (!pairs || !meta) {
        throw corpus::CorpusError(path + ": cannot open pairs or sidecar file");
    }
    std::vector<PreferenceTriplet> out;
    std::string pair_line, meta_line;
    while (std::getline(pairs, pair_line)) {
        if (pair_line.empty()) continue;
        if (!std::getline(meta, meta_line)) {
            throw corpus::CorpusError(path + ": sidecar shorter than pairs file");
        }
        json pj = json::parse(pair_line);
        json mj = json::parse(meta_line);
        PreferenceTriplet t;
        t.prompt = pj.at("prompt").get<std::string>();
        t.chosen = pj.at("chosen").get<std::string>();
        t.rejected = pj.at("rejected").get<std::string>();
        t.prompt_id = mj.at("prompt_id").get<std::string>();
        t.chosen_olr = mj.at("chosen_olr").get<double>();
        t.rejected_olr = mj.at("rejected_olr").get<double>();
        out.push_back(std::move(t));
    }
    return out;
}

}  // namespace tcpurity::dpo
