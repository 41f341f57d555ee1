// Acceptance suite. Each criterion prints one [PASS]/[FAIL] line; a
// failing criterion lists every violated check in the doctest message.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <random>
#include <sstream>
#include <tuple>

#include "json.hpp"
#include "support/mock_server.hpp"
#include "support/oracle.hpp"
#include "tcpurity/aggregation.hpp"
#include "tcpurity/bench.hpp"
#include "tcpurity/corpus.hpp"
#include "tcpurity/dpo.hpp"
#include "tcpurity/purity_metrics.hpp"
#include "tcpurity/report.hpp"
#include "tcpurity/script_policy.hpp"
#include "tcpurity/textnorm.hpp"

using namespace tcpurity;
namespace fs = std::filesystem;

namespace {

class Criterion {
public:
    explicit Criterion(std::string name) : name_(std::move(name)) {
        start_ = std::chrono::steady_clock::now();
    }

    void expect(bool ok, const std::string& what) {
        if (!ok) failures_.push_back(what);
    }

    void expect_near(double got, double want, double tol, const std::string& what) {
        if (!(std::abs(got - want) <= tol)) {
            std::ostringstream msg;
            msg << what << ": got " << got << ", want " << want << " +/- " << tol;
            failures_.push_back(msg.str());
        }
    }

    double elapsed_s() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_)
            .count();
    }

    void finish() {
        std::printf("[%s] %s (%.2fs)\n", failures_.empty() ? "PASS" : "FAIL",
                    name_.c_str(), elapsed_s());
        std::fflush(stdout);
        std::string joined;
        for (const auto& f : failures_) joined += "\n  - " + f;
        CHECK_MESSAGE(failures_.empty(), name_ << joined);
    }

private:
    std::string name_;
    std::vector<std::string> failures_;
    std::chrono::steady_clock::time_point start_;
};

// Published per-family results: {family key, N, then (olr, pass%) for
// the tuned 1B model, the 1B base, the 3B and the 1.5B baselines}.
struct PublishedRow {
    const char* family;
    int n;
    double olr_ours, pass_ours;
    double olr_1b, pass_1b;
    double olr_3b, pass_3b;
    double olr_qwen, pass_qwen;
};

const std::vector<PublishedRow>& published_rows() {
    static const std::vector<PublishedRow> rows = {
        {"entity_translation", 80, 0.123, 12.0, 0.310, 1.3, 0.243, 4.0, 0.185, 10.7},
        {"bilingual_purity", 100, 0.016, 59.6, 0.125, 33.3, 0.131, 37.4, 0.071, 55.6},
        {"sc_conversion", 60, 0.014, 46.3, 0.062, 14.8, 0.232, 3.7, 0.040, 57.4},
        {"structured_json", 100, 0.078, 46.2, 0.302, 15.4, 0.476, 10.6, 0.061, 19.2},
        {"content_organization", 60, 0.014, 20.0, 0.123, 0.0, 0.151, 4.4, 0.043, 37.8},
        {"long_form_summary", 60, 0.017, 26.7, 0.130, 2.2, 0.170, 2.2, 0.067, 40.0},
        {"noise_robustness", 100, 0.467, 0.0, 0.389, 5.6, 0.329, 23.6, 0.480, 0.0},
        {"named_entity_translation", 100, 0.057, 28.7, 0.273, 3.2, 0.250, 6.4, 0.133, 12.8},
    };
    return rows;
}

enum class Model { Ours, Base1B, Llama3B, Qwen };

std::vector<agg::FamilyStats> published_stats(Model m) {
    std::vector<agg::FamilyStats> out;
    for (const auto& r : published_rows()) {
        double olr = 0, pass = 0;
        switch (m) {
            case Model::Ours: olr = r.olr_ours; pass = r.pass_ours; break;
            case Model::Base1B: olr = r.olr_1b; pass = r.pass_1b; break;
            case Model::Llama3B: olr = r.olr_3b; pass = r.pass_3b; break;
            case Model::Qwen: olr = r.olr_qwen; pass = r.pass_qwen; break;
        }
        out.push_back({r.family, r.n, olr, pass / 100.0, 0});
    }
    return out;
}

const agg::ComparisonRow& row_for(const agg::Comparison& c, const std::string& family) {
    for (const auto& row : c.per_family) {
        if (row.family == family) return row;
    }
    throw std::runtime_error("missing family " + family);
}

std::string read_file(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(in), {});
}

}  // namespace

TEST_CASE("criterion 1: aggregation regression on published per-family values") {
    Criterion c("criterion 1: aggregation regression (published arithmetic)");

    const auto ours = agg::macro_micro(published_stats(Model::Ours));
    const auto base = agg::macro_micro(published_stats(Model::Base1B));

    c.expect_near(ours.macro_olr, 0.098, 0.0005, "tuned-model macro OLR");
    c.expect_near(100.0 * ours.macro_pass, 29.9, 0.05, "tuned-model macro pass (%)");
    c.expect_near(100.0 * ours.micro_pass, 30.3, 0.05, "tuned-model micro pass (%)");
    c.expect_near(base.macro_olr, 0.214, 0.0005, "base macro OLR");
    c.expect_near(base.micro_olr, 0.231, 0.0005, "base micro OLR");
    // The weighted mean of the published per-family values is 0.113,
    // matching the prose "0.231 -> 0.113"; the table's printed micro
    // value 0.104 is inconsistent with its own rows.
    c.expect_near(ours.micro_olr, 0.113, 0.001, "tuned-model micro OLR (derived)");
    c.expect(std::abs(ours.micro_olr - 0.104) > 0.005,
             "derived micro OLR unexpectedly matches the inconsistent 0.104");
    c.expect(c.elapsed_s() < 1.0, "runtime exceeded budget");
    c.finish();
}

TEST_CASE("criterion 2: comparison regression on published table cells") {
    Criterion c("criterion 2: comparison regression (published deltas)");

    const auto ours = agg::make_report(published_stats(Model::Ours), "paper-strict",
                                       "tuned-1b", "pub");
    const auto base1b = agg::make_report(published_stats(Model::Base1B), "paper-strict",
                                         "base-1b", "pub");
    const auto llama3b = agg::make_report(published_stats(Model::Llama3B), "paper-strict",
                                          "llama-3b", "pub");
    const auto qwen = agg::make_report(published_stats(Model::Qwen), "paper-strict",
                                       "qwen-1.5b", "pub");

    const auto vs_1b = agg::compare(ours, base1b);
    const auto vs_3b = agg::compare(ours, llama3b);
    const auto vs_qwen = agg::compare(ours, qwen);

    c.expect_near(*row_for(vs_3b, "named_entity_translation").olr_rel_reduction_pct,
                  77.2, 0.05, "NET OLR reduction vs 3B");
    // The published +57.2% is not recoverable from the published
    // 3-decimal inputs: (0.133 - 0.057) / 0.133 = 57.14%, which misses
    // the printed cell by 0.057. Both the published cell and the
    // derived-consistent value are asserted; the former documents the
    // source inconsistency.
    c.expect_near(*row_for(vs_qwen, "named_entity_translation").olr_rel_reduction_pct,
                  57.2, 0.05, "NET OLR reduction vs Qwen (published cell)");
    c.expect_near(*row_for(vs_qwen, "named_entity_translation").olr_rel_reduction_pct,
                  100.0 * (0.133 - 0.057) / 0.133, 1e-9,
                  "NET OLR reduction vs Qwen (derived from published inputs)");

    c.expect_near(*row_for(vs_1b, "bilingual_purity").olr_rel_reduction_pct, 87.2, 0.05,
                  "Bilingual Purity OLR reduction vs 1B");
    c.expect_near(row_for(vs_1b, "bilingual_purity").pass_pp_delta, 26.3, 0.05,
                  "Bilingual Purity pass delta vs 1B (pp)");
    c.expect_near(*row_for(vs_1b, "noise_robustness").olr_rel_reduction_pct, -20.1, 0.05,
                  "Noise Robustness OLR reduction vs 1B");
    c.expect_near(row_for(vs_1b, "noise_robustness").pass_pp_delta, -5.6, 0.05,
                  "Noise Robustness pass delta vs 1B (pp)");
    c.expect_near(row_for(vs_1b, "entity_translation").pass_pp_delta, 10.7, 0.05,
                  "Entity Translation pass delta vs 1B (pp)");

    // Headline aggregates, computed from the consistent micro/macro
    // inputs rather than the separately rounded aggregate rows.
    c.expect_near(*vs_1b.micro.olr_rel_reduction_pct, 51.3, 0.05,
                  "headline micro OLR reduction vs 1B");
    c.expect_near(*vs_1b.macro.olr_rel_reduction_pct, 54.1, 0.05,
                  "headline macro OLR reduction vs 1B");

    // Self-comparison sanity.
    const auto self = agg::compare(ours, ours);
    for (const auto& row : self.per_family) {
        c.expect(std::abs(*row.olr_rel_reduction_pct) < 1e-12 &&
                     std::abs(row.pass_pp_delta) < 1e-12,
                 "self-comparison not zero for " + row.family);
    }
    c.expect(c.elapsed_s() < 1.0, "runtime exceeded budget");
    c.finish();
}

TEST_CASE("criterion 3: policy oracle equivalence over all scalar values") {
    Criterion c("criterion 3: policy oracle equivalence (exhaustive sweep)");

    for (bool lenient : {false, true}) {
        const auto policy = lenient ? script::ScriptPolicy::cjk_punct_lenient()
                                    : script::ScriptPolicy::paper_strict();
        std::int64_t mismatches = 0;
        for (char32_t cp = 0; cp <= 0x10FFFF; ++cp) {
            if (cp >= 0xD800 && cp <= 0xDFFF) continue;
            const auto got = script::classify(cp, policy);
            const auto want = oracle::classify(cp, lenient, false, false);
            if (got.legal != want.legal || got.counted != want.counted) {
                if (++mismatches <= 3) {
                    std::ostringstream msg;
                    msg << "mismatch at U+" << std::hex << std::uppercase
                        << static_cast<std::uint32_t>(cp) << std::dec
                        << (lenient ? " (lenient)" : " (strict)");
                    c.expect(false, msg.str());
                }
            }
        }
        c.expect(mismatches == 0,
                 std::to_string(mismatches) + " total mismatches in sweep");
    }

    // 24 boundary probes: both ends of each default block.
    const auto policy = script::ScriptPolicy::paper_strict();
    int probes = 0;
    for (const auto& b : script::ScriptPolicy::default_han_blocks()) {
        ++probes;
        c.expect(policy.in_han_ranges(b.lo), "block low end not legal");
        c.expect(policy.in_han_ranges(b.lo - 1) ==
                     oracle::linear_scan(oracle::han_blocks(), b.lo - 1),
                 "below block low end misclassified");
        ++probes;
        c.expect(policy.in_han_ranges(b.hi), "block high end not legal");
        c.expect(policy.in_han_ranges(b.hi + 1) ==
                     oracle::linear_scan(oracle::han_blocks(), b.hi + 1),
                 "above block high end misclassified");
    }
    c.expect(probes == 24, "expected 24 boundary probes");
    c.expect(c.elapsed_s() < 5.0, "runtime exceeded 5 s budget");
    c.finish();
}

TEST_CASE("criterion 4: metric property suite on 10,000 random strings") {
    Criterion c("criterion 4: metric property suite (10,000 random strings)");

    const auto policy = script::ScriptPolicy::paper_strict();
    std::mt19937 rng(20260823);
    std::vector<std::string> normalized_pool;

    for (int i = 0; i < 10000; ++i) {
        const std::string raw = oracle::random_string(rng);
        const auto s = metrics::score(raw, policy);
        c.expect(s.olr >= 0.0 && s.olr <= 1.0, "OLR out of [0,1]");
        if (!s.degenerate) {
            c.expect(s.pass_tc == (s.illegal_chars == 0),
                     "pass_tc does not match zero-illegal");
        }
        const auto norm = textnorm::normalize(raw);
        const auto ref = oracle::olr_brute_force(norm.text, policy);
        c.expect(s.counted_chars == ref.counted && s.illegal_chars == ref.illegal &&
                     s.olr == ref.olr,
                 "brute-force OLR oracle disagreement");
        if (normalized_pool.size() < 600) normalized_pool.push_back(norm.text);
    }

    // Weighted concatenation within one ulp.
    for (std::size_t i = 0; i + 1 < normalized_pool.size(); i += 2) {
        const auto& s1 = normalized_pool[i];
        const auto& s2 = normalized_pool[i + 1];
        const auto a = metrics::score(s1, policy);
        const auto b = metrics::score(s2, policy);
        if (a.counted_chars == 0 || b.counted_chars == 0) continue;
        const auto both = metrics::score(s1 + s2, policy);
        const double expected =
            (static_cast<double>(a.counted_chars) * a.olr +
             static_cast<double>(b.counted_chars) * b.olr) /
            static_cast<double>(a.counted_chars + b.counted_chars);
        c.expect(std::abs(both.olr - expected) <=
                     std::numeric_limits<double>::epsilon() * expected,
                 "weighted concatenation identity violated");
    }

    // Monotonicity under single-character appends.
    for (std::size_t i = 0; i < normalized_pool.size(); ++i) {
        const auto s = metrics::score(normalized_pool[i], policy);
        if (s.degenerate) continue;
        c.expect(metrics::score(normalized_pool[i] + "A", policy).olr >= s.olr,
                 "appending an illegal character decreased OLR");
        c.expect(metrics::score(normalized_pool[i] + "中", policy).olr <= s.olr,
                 "appending a legal character increased OLR");
    }

    c.expect(c.elapsed_s() < 10.0, "runtime exceeded 10 s budget");
    c.finish();
}

TEST_CASE("criterion 5: normalization conformance") {
    Criterion c("criterion 5: normalization conformance");

    std::ifstream fixture(std::string(TEST_DATA_DIR) + "/nfkc_cases.jsonl");
    c.expect(fixture.good(), "fixture nfkc_cases.jsonl missing");
    std::string line;
    while (std::getline(fixture, line)) {
        if (line.empty()) continue;
        const auto obj = nlohmann::json::parse(line);
        const auto src = obj.at("src").get<std::string>();
        const auto expect = obj.at("expect").get<std::string>();
        c.expect(textnorm::normalize(src).text == expect,
                 "fixture mapping failed for source \"" + src + "\"");
    }

    c.expect(textnorm::normalize("５").text == "5", "fullwidth five");
    c.expect(textnorm::normalize("a \t\n b").text == "a b", "whitespace collapse");
    c.expect(textnorm::normalize("ABC").text == "ABC", "case preservation");

    std::mt19937 rng(20260823);
    for (int i = 0; i < 10000; ++i) {
        const auto once = textnorm::normalize(oracle::random_string(rng));
        if (textnorm::normalize(once.text).text != once.text) {
            c.expect(false, "idempotence violated");
            break;
        }
    }
    c.finish();
}

TEST_CASE("criterion 6: wire format, retry and concurrency invariants") {
    Criterion c("criterion 6: wire format against scripted mock endpoint");

    std::vector<corpus::PromptRecord> prompts;
    for (int i = 0; i < 10; ++i) {
        prompts.push_back({"p" + std::to_string(i), "sc_conversion",
                           "題目" + std::to_string(i), ""});
    }

    // Exact decoding fields on the wire.
    {
        mock::ChatServer server(
            [](const nlohmann::json&) { return std::make_pair(0, std::string("你好")); });
        bench::EndpointSpec ep;
        ep.base_url = server.base_url();
        ep.model_name = "mock";
        ep.max_in_flight = 3;
        ep.initial_backoff_ms = 1;
        auto result = bench::run_benchmark(prompts, ep,
                                           corpus::DecodingConfig::paper_fixed(), "acc");
        c.expect(result.records.size() == prompts.size(), "dropped records");
        for (const auto& body : server.request_bodies()) {
            c.expect(body.find("\"temperature\":0.2") != std::string::npos,
                     "temperature not 0.2 on the wire");
            c.expect(body.find("\"top_p\":0.9") != std::string::npos,
                     "top_p not 0.9 on the wire");
            c.expect(body.find("\"max_tokens\":1024") != std::string::npos,
                     "max_tokens not 1024 on the wire");
            c.expect(body.find("\"repetition_penalty\":1.05") != std::string::npos,
                     "penalty field not 1.05 on the wire");
        }
    }

    // Retry-to-success, exhaustion, no-drop and bounded concurrency
    // under injected failures.
    {
        std::mutex mutex;
        std::map<std::string, int> seen;
        mock::ChatServer server([&](const nlohmann::json& body) {
            const std::string content = body.at("messages").at(0).at("content");
            std::scoped_lock lock(mutex);
            const int n = ++seen[content];
            if (content == "題目1" && n <= 2) {
                return std::make_pair(503, std::string("{}"));
            }
            if (content == "題目2") {
                return std::make_pair(500, std::string("{}"));
            }
            return std::make_pair(0, std::string("答:" + content));
        });
        server.set_handler_delay_ms(10);
        bench::EndpointSpec ep;
        ep.base_url = server.base_url();
        ep.model_name = "mock";
        ep.max_in_flight = 4;
        ep.max_retries = 2;
        ep.initial_backoff_ms = 1;
        ep.max_backoff_ms = 4;
        auto result = bench::run_benchmark(prompts, ep,
                                           corpus::DecodingConfig::paper_fixed(), "acc");
        c.expect(result.records.size() == prompts.size(),
                 "prompt dropped under failures");
        c.expect(result.attempts[1].attempts == 3 && result.records[1].text == "答:題目1",
                 "retry-then-succeed contract violated");
        c.expect(result.records[2].text.empty() && !result.records[2].error.empty(),
                 "exhausted prompt lacks error annotation");
        c.expect(server.max_observed_in_flight() <= 4,
                 "concurrency bound exceeded");
        for (std::size_t i = 0; i < prompts.size(); ++i) {
            c.expect(result.records[i].prompt_id == prompts[i].id,
                     "record order broken");
        }
    }

    c.expect(c.elapsed_s() < 30.0, "runtime exceeded 30 s budget");
    c.finish();
}

TEST_CASE("criterion 7: preference pair builder matches a brute-force oracle") {
    Criterion c("criterion 7: preference pair builder determinism");

    const auto policy = script::ScriptPolicy::paper_strict();
    const double chosen_max = 0.02, rejected_min = 0.10;

    // Synthetic corpus with known candidate OLRs: k Latin characters
    // padded with Han to length 20 gives olr = k/20.
    auto text_olr = [](int illegal, int total) {
        std::string t;
        for (int i = 0; i < illegal; ++i) t += "Z";
        for (int i = illegal; i < total; ++i) t += "字";
        return t;
    };

    std::vector<corpus::PromptRecord> prompts;
    std::vector<corpus::GenerationRecord> preferred, candidates;
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> illegal_dist(0, 20);
    for (int i = 0; i < 60; ++i) {
        const std::string id = "p" + std::to_string(i);
        prompts.push_back({id, "sc_conversion", "題" + std::to_string(i), ""});
        corpus::GenerationRecord pref;
        pref.prompt_id = id;
        pref.model_id = "teacher";
        pref.run_id = "gold";
        pref.text = text_olr(i % 3, 20);  // olr in {0, .05, .10}
        pref.timestamp = "2026-08-23T00:00:00Z";
        preferred.push_back(pref);
        const int n_cands = i % 4;
        for (int j = 0; j < n_cands; ++j) {
            corpus::GenerationRecord cand = pref;
            cand.model_id = "student";
            cand.run_id = "run" + std::to_string(rng() % 3);
            cand.text = text_olr(illegal_dist(rng), 20);
            cand.timestamp = "2026-08-23T0" + std::to_string(j) + ":00:00Z";
            candidates.push_back(cand);
        }
    }

    const auto result =
        dpo::build_pairs(prompts, preferred, candidates, policy, chosen_max, rejected_min);

    // Independent selection oracle: naive scan per prompt using the
    // brute-force OLR routine.
    std::int64_t expected_emitted = 0;
    for (const auto& p : prompts) {
        const corpus::GenerationRecord* pref = nullptr;
        for (const auto& g : preferred) {
            if (g.prompt_id == p.id) pref = &g;
        }
        if (pref == nullptr) continue;
        const double pref_olr =
            oracle::olr_brute_force(textnorm::normalize(pref->text).text, policy).olr;
        if (pref_olr > chosen_max) continue;
        const corpus::GenerationRecord* best = nullptr;
        double best_olr = -1.0;
        for (const auto& g : candidates) {
            if (g.prompt_id != p.id) continue;
            const double olr =
                oracle::olr_brute_force(textnorm::normalize(g.text).text, policy).olr;
            if (olr < rejected_min || olr <= pref_olr || g.text == pref->text) continue;
            if (best == nullptr || olr > best_olr ||
                (olr == best_olr &&
                 std::tie(g.run_id, g.timestamp) < std::tie(best->run_id, best->timestamp))) {
                best = &g;
                best_olr = olr;
            }
        }
        if (best == nullptr) continue;
        ++expected_emitted;
        bool found = false;
        for (const auto& t : result.triplets) {
            if (t.prompt_id == p.id) {
                found = t.rejected == best->text && t.chosen == pref->text;
            }
        }
        c.expect(found, "oracle selection mismatch for " + p.id);
    }
    c.expect(result.summary.emitted == expected_emitted,
             "emitted count differs from oracle");

    for (const auto& t : result.triplets) {
        c.expect(t.rejected_olr > t.chosen_olr, "rejected_olr not strictly above chosen");
        c.expect(metrics::score(t.chosen, policy).olr == t.chosen_olr &&
                     metrics::score(t.rejected, policy).olr == t.rejected_olr,
                 "round-trip re-scoring changed an OLR");
    }

    const auto again =
        dpo::build_pairs(prompts, preferred, candidates, policy, chosen_max, rejected_min);
    c.expect(again.triplets.size() == result.triplets.size(), "nondeterministic size");
    for (std::size_t i = 0; i < again.triplets.size(); ++i) {
        c.expect(again.triplets[i].rejected == result.triplets[i].rejected &&
                     again.triplets[i].prompt_id == result.triplets[i].prompt_id,
                 "nondeterministic selection");
    }
    c.finish();
}

TEST_CASE("criterion 8: end-to-end smoke through the command-line tool") {
    Criterion c("criterion 8: end-to-end smoke (run-bench -> score -> aggregate -> report)");

    const char* cli = std::getenv("TCPURITY_CLI_BIN");
    c.expect(cli != nullptr, "TCPURITY_CLI_BIN not set");
    if (cli == nullptr) {
        c.finish();
        return;
    }

    // Deterministic mock: noise_robustness prompts get contaminated
    // replies, everything else pure TC.
    mock::ChatServer server([](const nlohmann::json& body) {
        const std::string content = body.at("messages").at(0).at("content");
        if (content.find("noise") != std::string::npos) {
            return std::make_pair(0, std::string("中文AB"));  // olr exactly 0.5
        }
        return std::make_pair(0, std::string("純粹的繁體中文輸出 " + content));
    });

    const fs::path dir = fs::temp_directory_path() / "tcpurity_acceptance_e2e";
    fs::remove_all(dir);
    fs::create_directories(dir);

    // 20 prompts spread over all eight families.
    {
        std::ofstream prompts(dir / "prompts.jsonl", std::ios::binary);
        const auto& manifest = corpus::default_manifest();
        for (int i = 0; i < 20; ++i) {
            const auto& fam = manifest[i % manifest.size()];
            nlohmann::ordered_json row{
                {"id", "p" + std::to_string(i)},
                {"family", fam.key},
                {"instruction",
                 fam.key == "noise_robustness" ? "noise 任務 " + std::to_string(i)
                                               : "任務 " + std::to_string(i)},
                {"input", ""}};
            prompts << row.dump() << "\n";
        }
    }

    auto run_pipeline = [&](const std::string& tag) {
        const std::string p = (dir / "prompts.jsonl").string();
        const std::string gen = (dir / ("gen_" + tag + ".jsonl")).string();
        const std::string scores = (dir / ("scores_" + tag + ".jsonl")).string();
        const std::string report = (dir / ("report_" + tag + ".json")).string();
        const std::string md = (dir / ("report_" + tag + ".md")).string();
        const std::string csv = (dir / ("report_" + tag + ".csv")).string();
        const std::string q = "\"";
        auto run = [&](const std::string& cmd) {
            const std::string full = q + cli + q + " " + cmd + " 2>/dev/null";
            return std::system(full.c_str());
        };
        int rc = 0;
        rc |= run("run-bench --prompts " + p + " --endpoint " + server.base_url() +
                  " --model mock --decoding paper-fixed --out " + gen +
                  " --run-id smoke --concurrency 3 --initial-backoff-ms 1");
        rc |= run("score --generations " + gen + " --out " + scores +
                  " --policy paper-strict");
        rc |= run("aggregate --scores " + scores + " --prompts " + p + " --out " + report);
        rc |= run("report --report " + report + " --out-md " + md + " --out-csv " + csv);
        return rc;
    };

    c.expect(run_pipeline("a") == 0, "pipeline run A failed");
    c.expect(run_pipeline("b") == 0, "pipeline run B failed");

    const std::string md_a = read_file(dir / "report_a.md");
    const std::string md_b = read_file(dir / "report_b.md");
    c.expect(!md_a.empty(), "empty markdown report");
    c.expect(md_a == md_b, "markdown reports differ between runs");
    c.expect(read_file(dir / "report_a.json") == read_file(dir / "report_b.json"),
             "aggregate reports differ between runs");
    c.expect(read_file(dir / "report_a.csv") == read_file(dir / "report_b.csv"),
             "csv reports differ between runs");

    // Table-shaped output: header plus all eight family rows.
    c.expect(md_a.find("| Task | N | OLR | Pass@TC |") != std::string::npos,
             "missing table header");
    for (const auto& fam : corpus::default_manifest()) {
        c.expect(md_a.find("| " + fam.display_name + " | ") != std::string::npos,
                 "missing family row: " + fam.display_name);
    }
    c.expect(md_a.find("| Noise Robustness | 2 | 0.500 | 0.0% |") != std::string::npos,
             "contaminated family row not as expected");
    c.expect(md_a.find("paper-strict") != std::string::npos,
             "policy preset not named in report");

    c.expect(c.elapsed_s() < 60.0, "runtime exceeded 60 s budget");
    fs::remove_all(dir);
    c.finish();
}
