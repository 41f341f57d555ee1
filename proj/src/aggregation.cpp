#include "tcpurity/aggregation.hpp"

#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace tcpurity::agg {

FamilyStatsResult family_stats(const std::vector<corpus::ScoreRecord>& scores,
                               const std::vector<corpus::PromptRecord>& prompts,
                               const std::vector<corpus::TaskFamily>& manifest) {
    std::unordered_map<std::string, const corpus::PromptRecord*> by_id;
    for (const auto& p : prompts) by_id[p.id] = &p;

    struct Acc {
        std::int64_t n = 0;
        double olr_sum = 0.0;
        std::int64_t pass_count = 0;
        std::int64_t degenerate = 0;
    };
    std::map<std::string, Acc> accs;
    for (const auto& s : scores) {
        auto it = by_id.find(s.prompt_id);
        if (it == by_id.end()) {
            throw corpus::CorpusError("score references unknown prompt_id \"" +
                                      s.prompt_id + "\"");
        }
        const std::string& family = it->second->family;
        if (corpus::find_family(manifest, family) == nullptr) {
            throw corpus::CorpusError("unknown family key \"" + family + "\"");
        }
        Acc& a = accs[family];
        ++a.n;
        a.olr_sum += s.olr;
        if (s.pass_tc) ++a.pass_count;
        if (s.degenerate) ++a.degenerate;
    }

    FamilyStatsResult result;
    for (const auto& f : manifest) {
        auto it = accs.find(f.key);
        if (it == accs.end()) {
            result.warnings.push_back("family " + f.key + ": no scored records");
            continue;
        }
        const Acc& a = it->second;
        FamilyStats fs;
        fs.family = f.key;
        fs.n = a.n;
        fs.mean_olr = a.olr_sum / static_cast<double>(a.n);
        fs.pass_rate = static_cast<double>(a.pass_count) / static_cast<double>(a.n);
        fs.degenerate_count = a.degenerate;
        result.stats.push_back(std::move(fs));
    }
    return result;
}

MacroMicro macro_micro(const std::vector<FamilyStats>& per_family) {
    if (per_family.empty()) {
        throw std::invalid_argument("macro_micro: no families");
    }
    double olr_sum = 0.0, pass_sum = 0.0;
    double olr_weighted = 0.0, pass_weighted = 0.0;
    std::int64_t total_n = 0;
    for (const auto& f : per_family) {
        if (f.n <= 0) {
            throw std::invalid_argument("macro_micro: family " + f.family +
                                        " has no records");
        }
        olr_sum += f.mean_olr;
        pass_sum += f.pass_rate;
        olr_weighted += static_cast<double>(f.n) * f.mean_olr;
        pass_weighted += static_cast<double>(f.n) * f.pass_rate;
        total_n += f.n;
    }
    const double k = static_cast<double>(per_family.size());
    return MacroMicro{olr_sum / k, pass_sum / k,
                      olr_weighted / static_cast<double>(total_n),
                      pass_weighted / static_cast<double>(total_n)};
}

AggregateReport make_report(std::vector<FamilyStats> per_family,
                            std::string policy_preset, std::string model_id,
                            std::string run_id) {
    AggregateReport r;
    const MacroMicro mm = macro_micro(per_family);
    r.per_family = std::move(per_family);
    r.macro_olr = mm.macro_olr;
    r.macro_pass = mm.macro_pass;
    r.micro_olr = mm.micro_olr;
    r.micro_pass = mm.micro_pass;
    r.policy_preset = std::move(policy_preset);
    r.model_id = std::move(model_id);
    r.run_id = std::move(run_id);
    return r;
}

namespace {

ComparisonRow make_row(std::string family, double olr_ours, double olr_base,
                       double pass_ours, double pass_base) {
    ComparisonRow row;
    row.family = std::move(family);
    if (olr_base != 0.0) {
        row.olr_rel_reduction_pct = 100.0 * (olr_base - olr_ours) / olr_base;
    }
    row.pass_pp_delta = 100.0 * (pass_ours - pass_base);
    return row;
}

}  // namespace

Comparison compare(const AggregateReport& ours, const AggregateReport& baseline) {
    if (ours.policy_preset != baseline.policy_preset) {
        throw std::invalid_argument("compare: policy preset mismatch (\"" +
                                    ours.policy_preset + "\" vs \"" +
                                    baseline.policy_preset + "\")");
    }
    std::set<std::string> ours_keys, base_keys;
    for (const auto& f : ours.per_family) ours_keys.insert(f.family);
    for (const auto& f : baseline.per_family) base_keys.insert(f.family);
    if (ours_keys != base_keys) {
        std::ostringstream msg;
        msg << "compare: family sets differ:";
        for (const auto& k : ours_keys) {
            if (!base_keys.count(k)) msg << " -" << k;
        }
        for (const auto& k : base_keys) {
            if (!ours_keys.count(k)) msg << " +" << k;
        }
        throw std::invalid_argument(msg.str());
    }

    std::unordered_map<std::string, const FamilyStats*> base_by_key;
    for (const auto& f : baseline.per_family) base_by_key[f.family] = &f;

    Comparison c;
    for (const auto& f : ours.per_family) {
        const FamilyStats& b = *base_by_key.at(f.family);
        c.per_family.push_back(
            make_row(f.family, f.mean_olr, b.mean_olr, f.pass_rate, b.pass_rate));
    }
    c.macro = make_row("macro", ours.macro_olr, baseline.macro_olr, ours.macro_pass,
                       baseline.macro_pass);
    c.micro = make_row("micro", ours.micro_olr, baseline.micro_olr, ours.micro_pass,
                       baseline.micro_pass);
    c.ours_model_id = ours.model_id;
    c.baseline_model_id = baseline.model_id;
    c.policy_preset = ours.policy_preset;
    return c;
}

}  // namespace tcpurity::agg
