#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "tcpurity/aggregation.hpp"
#include "tcpurity/bench.hpp"
#include "tcpurity/corpus.hpp"
#include "tcpurity/dpo.hpp"
#include "tcpurity/purity_metrics.hpp"
#include "tcpurity/report.hpp"
#include "tcpurity/script_policy.hpp"

namespace {

using namespace tcpurity;

constexpr int kExitOk = 0;
constexpr int kExitUserError = 1;
constexpr int kExitInternalError = 2;

void emit_error(const std::string& category, const std::string& message) {
    std::cerr << nlohmann::ordered_json{{"error", category}, {"message", message}}.dump()
              << std::endl;
}

script::ScriptPolicy resolve_policy(const std::string& preset,
                                    const std::string& whitespace,
                                    bool ascii_digits_only) {
    auto policy = script::ScriptPolicy::from_preset(preset);
    if (!policy) {
        throw CLI::ValidationError("--policy", "unknown policy preset \"" + preset + "\"");
    }
    if (whitespace == "count-illegal") {
        policy->whitespace_counting = script::WhitespaceCounting::CountIllegal;
    } else if (whitespace != "skip") {
        throw CLI::ValidationError("--whitespace", "expected skip|count-illegal");
    }
    policy->ascii_digits_only = ascii_digits_only;
    return *policy;
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw corpus::CorpusError(path + ": cannot open file for writing");
    }
    out << content;
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw corpus::CorpusError(path + ": cannot open file");
    }
    return std::string(std::istreambuf_iterator<char>(in), {});
}

struct ScoreArgs {
    std::string generations_path;
    std::string out_path;
    std::string policy_preset = "paper-strict";
    std::string whitespace = "skip";
    bool ascii_digits_only = false;
};

int cmd_score(const ScoreArgs& args) {
    const auto policy =
        resolve_policy(args.policy_preset, args.whitespace, args.ascii_digits_only);
    const auto generations = corpus::load_generations(args.generations_path);
    if (generations.empty()) {
        std::cerr << "warning: " << args.generations_path << " contains no records\n";
    }
    std::vector<corpus::ScoreRecord> scores;
    scores.reserve(generations.size());
    for (const auto& g : generations) {
        const metrics::PurityScore s = metrics::score(g.text, policy);
        scores.push_back({g.prompt_id, g.model_id, g.run_id, s.olr, s.pass_tc,
                          s.counted_chars, s.illegal_chars, s.degenerate,
                          policy.preset_name()});
    }
    corpus::save_scores(args.out_path, scores);
    std::cerr << "scored " << scores.size() << " records -> " << args.out_path << "\n";
    return kExitOk;
}

struct AggregateArgs {
    std::string scores_path;
    std::string prompts_path;
    std::string out_path;
    std::string model_id;
    std::string run_id;
};

int cmd_aggregate(const AggregateArgs& args) {
    const auto& manifest = corpus::default_manifest();
    const auto prompts = corpus::load_prompts(args.prompts_path, manifest);
    for (const auto& w : prompts.warnings) std::cerr << "warning: " << w << "\n";
    const auto scores = corpus::load_scores(args.scores_path);
    if (scores.empty()) {
        emit_error("user", "no score records in " + args.scores_path);
        return kExitUserError;
    }
    std::string model_id = args.model_id.empty() ? scores.front().model_id : args.model_id;
    std::string run_id = args.run_id.empty() ? scores.front().run_id : args.run_id;
    const std::string preset = scores.front().policy_preset;

    auto stats = agg::family_stats(scores, prompts.records, manifest);
    for (const auto& w : stats.warnings) std::cerr << "warning: " << w << "\n";
    const auto report = agg::make_report(std::move(stats.stats), preset, model_id, run_id);
    write_text_file(args.out_path, report::report_to_json(report));
    std::cerr << "aggregated " << scores.size() << " scores -> " << args.out_path << "\n";
    return kExitOk;
}

struct CompareArgs {
    std::string ours_path;
    std::string baseline_path;
    std::string out_path;
};

int cmd_compare(const CompareArgs& args) {
    const auto ours = report::report_from_json(read_text_file(args.ours_path));
    const auto baseline = report::report_from_json(read_text_file(args.baseline_path));
    const auto comparison = agg::compare(ours, baseline);
    write_text_file(args.out_path, report::comparison_to_json(comparison));
    std::cerr << "comparison -> " << args.out_path << "\n";
    return kExitOk;
}

struct RunBenchArgs {
    std::string prompts_path;
    std::string out_path;
    std::string decoding_preset = "paper-fixed";
    bench::EndpointSpec endpoint;
    std::string penalty_field = "repetition_penalty";
};

int cmd_run_bench(RunBenchArgs& args, const std::string& run_id) {
    auto decoding = corpus::DecodingConfig::from_preset(args.decoding_preset);
    if (!decoding) {
        throw CLI::ValidationError("--decoding",
                                   "unknown preset \"" + args.decoding_preset + "\"");
    }
    if (args.penalty_field == "frequency_penalty") {
        args.endpoint.penalty_field = bench::PenaltyField::FrequencyPenalty;
    } else if (args.penalty_field != "repetition_penalty") {
        throw CLI::ValidationError("--penalty-field",
                                   "expected repetition_penalty|frequency_penalty");
    }
    if (const char* key = std::getenv("TCPURITY_API_KEY")) {
        args.endpoint.api_key = key;
    }
    const auto prompts = corpus::load_prompts(args.prompts_path, corpus::default_manifest());
    for (const auto& w : prompts.warnings) std::cerr << "warning: " << w << "\n";

    const auto result = bench::run_benchmark(prompts.records, args.endpoint, *decoding, run_id);
    corpus::save_generations(args.out_path, result.records);
    std::int64_t failed = 0;
    for (const auto& a : result.attempts) {
        if (!a.last_error.empty()) {
            ++failed;
            std::cerr << "warning: " << a.prompt_id << ": " << a.last_error << " ("
                      << a.attempts << " attempts)\n";
        }
    }
    std::cerr << result.records.size() << " generations (" << failed << " failed) -> "
              << args.out_path << "\n";
    return kExitOk;
}

struct BuildDpoArgs {
    std::string prompts_path;
    std::string preferred_path;
    std::string candidates_path;
    std::string out_path;
    double chosen_max_olr = 0.02;
    double rejected_min_olr = 0.10;
    std::string policy_preset = "paper-strict";
    std::string whitespace = "skip";
};

int cmd_build_dpo(const BuildDpoArgs& args) {
    const auto policy = resolve_policy(args.policy_preset, args.whitespace, false);
    const auto prompts = corpus::load_prompts(args.prompts_path, corpus::default_manifest());
    const auto preferred = corpus::load_generations(args.preferred_path);
    const auto candidates = corpus::load_generations(args.candidates_path);
    const auto result = dpo::build_pairs(prompts.records, preferred, candidates, policy,
                                         args.chosen_max_olr, args.rejected_min_olr);
    dpo::save_pairs(args.out_path, result.triplets);
    std::cerr << "emitted " << result.summary.emitted << " triplets (skipped: "
              << result.summary.skipped_no_preferred << " no preferred, "
              << result.summary.skipped_preferred_impure << " impure preferred, "
              << result.summary.skipped_no_candidate << " no candidate) -> "
              << args.out_path << "\n";
    return kExitOk;
}

struct ReportArgs {
    std::string report_path;
    std::string baseline_path;  // optional; renders a comparison when set
    std::string out_md;
    std::string out_csv;
};

int cmd_report(const ReportArgs& args) {
    const auto& manifest = corpus::default_manifest();
    const auto ours = report::report_from_json(read_text_file(args.report_path));
    std::string md, csv;
    if (args.baseline_path.empty()) {
        md = report::render_report_markdown(ours, manifest);
        csv = report::render_report_csv(ours, manifest);
    } else {
        const auto baseline = report::report_from_json(read_text_file(args.baseline_path));
        const auto comparison = agg::compare(ours, baseline);
        md = report::render_comparison_markdown(comparison, manifest);
        csv = report::render_comparison_csv(comparison, manifest);
    }
    if (!args.out_md.empty()) write_text_file(args.out_md, md);
    if (!args.out_csv.empty()) write_text_file(args.out_csv, csv);
    if (args.out_md.empty() && args.out_csv.empty()) std::cout << md;
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Character-level script purity toolkit for LLM outputs"};
    app.set_config("--config", "", "Read options from an INI/TOML file");
    app.require_subcommand(1);

    ScoreArgs score_args;
    auto* score = app.add_subcommand("score", "Score generations under a script policy");
    score->add_option("--generations", score_args.generations_path)->required();
    score->add_option("--out", score_args.out_path)->required();
    score->add_option("--policy", score_args.policy_preset,
                      "paper-strict | cjk-punct-lenient");
    score->add_option("--whitespace", score_args.whitespace, "skip | count-illegal");
    score->add_flag("--ascii-digits-only", score_args.ascii_digits_only);

    AggregateArgs agg_args;
    auto* aggregate = app.add_subcommand("aggregate", "Roll scores up to a report");
    aggregate->add_option("--scores", agg_args.scores_path)->required();
    aggregate->add_option("--prompts", agg_args.prompts_path)->required();
    aggregate->add_option("--out", agg_args.out_path)->required();
    aggregate->add_option("--model", agg_args.model_id);
    aggregate->add_option("--run-id", agg_args.run_id);

    CompareArgs cmp_args;
    auto* compare = app.add_subcommand("compare", "Compare two aggregate reports");
    compare->add_option("--ours", cmp_args.ours_path)->required();
    compare->add_option("--baseline", cmp_args.baseline_path)->required();
    compare->add_option("--out", cmp_args.out_path)->required();

    RunBenchArgs bench_args;
    std::string run_id;
    auto* run_bench =
        app.add_subcommand("run-bench", "Drive an OpenAI-compatible endpoint");
    run_bench->add_option("--prompts", bench_args.prompts_path)->required();
    run_bench->add_option("--endpoint", bench_args.endpoint.base_url)->required();
    run_bench->add_option("--model", bench_args.endpoint.model_name)->required();
    run_bench->add_option("--out", bench_args.out_path)->required();
    run_bench->add_option("--run-id", run_id)->required();
    run_bench->add_option("--decoding", bench_args.decoding_preset);
    run_bench->add_option("--concurrency", bench_args.endpoint.max_in_flight);
    run_bench->add_option("--max-retries", bench_args.endpoint.max_retries);
    run_bench->add_option("--timeout", bench_args.endpoint.timeout_s);
    run_bench->add_option("--initial-backoff-ms", bench_args.endpoint.initial_backoff_ms);
    run_bench->add_option("--penalty-field", bench_args.penalty_field,
                          "repetition_penalty | frequency_penalty");

    BuildDpoArgs dpo_args;
    auto* build_dpo = app.add_subcommand("build-dpo", "Build preference triplets");
    build_dpo->add_option("--prompts", dpo_args.prompts_path)->required();
    build_dpo->add_option("--preferred", dpo_args.preferred_path)->required();
    build_dpo->add_option("--candidates", dpo_args.candidates_path)->required();
    build_dpo->add_option("--out", dpo_args.out_path)->required();
    build_dpo->add_option("--chosen-max-olr", dpo_args.chosen_max_olr);
    build_dpo->add_option("--rejected-min-olr", dpo_args.rejected_min_olr);
    build_dpo->add_option("--policy", dpo_args.policy_preset);
    build_dpo->add_option("--whitespace", dpo_args.whitespace);

    ReportArgs report_args;
    auto* report_cmd = app.add_subcommand("report", "Render markdown/CSV tables");
    report_cmd->add_option("--report", report_args.report_path)->required();
    report_cmd->add_option("--baseline", report_args.baseline_path,
                           "Render a comparison against this report");
    report_cmd->add_option("--out-md", report_args.out_md);
    report_cmd->add_option("--out-csv", report_args.out_csv);

    try {
        app.parse(argc, argv);
        if (score->parsed()) return cmd_score(score_args);
        if (aggregate->parsed()) return cmd_aggregate(agg_args);
        if (compare->parsed()) return cmd_compare(cmp_args);
        if (run_bench->parsed()) return cmd_run_bench(bench_args, run_id);
        if (build_dpo->parsed()) return cmd_build_dpo(dpo_args);
        if (report_cmd->parsed()) return cmd_report(report_args);
        return kExitUserError;
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUserError;
    } catch (const corpus::CorpusError& e) {
        emit_error("user", e.what());
        return kExitUserError;
    } catch (const bench::BenchError& e) {
        emit_error("user", e.what());
        return kExitUserError;
    } catch (const std::invalid_argument& e) {
        emit_error("user", e.what());
        return kExitUserError;
    } catch (const std::exception& e) {
        emit_error("internal", e.what());
        return kExitInternalError;
    }
}
