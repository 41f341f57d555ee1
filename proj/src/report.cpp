#include "tcpurity/report.hpp"

#include <cstdio>
#include <sstream>

#include "json.hpp"

namespace tcpurity::report {

using json = nlohmann::ordered_json;

namespace {

std::string printf_str(const char* fmt, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, fmt, v);
    return buf;
}

const std::string& display_name(const std::vector<corpus::TaskFamily>& manifest,
                                const std::string& key) {
    const corpus::TaskFamily* f = corpus::find_family(manifest, key);
    static const std::string empty;
    return f != nullptr ? f->display_name : key;
}

std::string null_or_signed_pct(const std::optional<double>& v) {
    return v ? format_signed_pct(*v) : "n/a";
}

}  // namespace

std::string format_olr(double v) { return printf_str("%.3f", v); }

std::string format_percent(double frac) { return printf_str("%.1f%%", frac * 100.0); }

std::string format_signed_pct(double pct) { return printf_str("%+.1f%%", pct); }

std::string format_signed_pp(double pp) { return printf_str("%+.1f pp", pp); }

std::string render_report_markdown(const agg::AggregateReport& r,
                                   const std::vector<corpus::TaskFamily>& manifest) {
    std::ostringstream out;
    out << "# Purity report\n\n"
        << "- model: " << r.model_id << "\n"
        << "- run: " << r.run_id << "\n"
        << "- policy preset: " << r.policy_preset << "\n\n"
        << "| Task | N | OLR | Pass@TC |\n"
        << "|---|---:|---:|---:|\n";
    std::int64_t total_n = 0;
    for (const auto& f : r.per_family) {
        total_n += f.n;
        out << "| " << display_name(manifest, f.family) << " | " << f.n << " | "
            << format_olr(f.mean_olr) << " | " << format_percent(f.pass_rate)
            << " |\n";
    }
    out << "| Macro-Avg | — | " << format_olr(r.macro_olr) << " | "
        << format_percent(r.macro_pass) << " |\n";
    out << "| Micro-Avg | " << total_n << " | " << format_olr(r.micro_olr) << " | "
        << format_percent(r.micro_pass) << " |\n";
    return out.str();
}

std::string render_report_csv(const agg::AggregateReport& r,
                              const std::vector<corpus::TaskFamily>& manifest) {
    std::ostringstream out;
    out << "task,n,olr,pass\n";
    std::int64_t total_n = 0;
    for (const auto& f : r.per_family) {
        total_n += f.n;
        out << display_name(manifest, f.family) << "," << f.n << ","
            << format_olr(f.mean_olr) << "," << format_percent(f.pass_rate) << "\n";
    }
    out << "Macro-Avg,," << format_olr(r.macro_olr) << ","
        << format_percent(r.macro_pass) << "\n";
    out << "Micro-Avg," << total_n << "," << format_olr(r.micro_olr) << ","
        << format_percent(r.micro_pass) << "\n";
    return out.str();
}

std::string render_comparison_markdown(const agg::Comparison& c,
                                       const std::vector<corpus::TaskFamily>& manifest) {
    std::ostringstream out;
    out << "# Comparison: " << c.ours_model_id << " vs " << c.baseline_model_id
        << "\n\n"
        << "- policy preset: " << c.policy_preset << "\n\n"
        << "| Task | OLR vs. " << c.baseline_model_id << " (%↓) | Pass vs. "
        << c.baseline_model_id << " (pp) |\n"
        << "|---|---:|---:|\n";
    for (const auto& row : c.per_family) {
        out << "| " << display_name(manifest, row.family) << " | "
            << null_or_signed_pct(row.olr_rel_reduction_pct) << " | "
            << format_signed_pp(row.pass_pp_delta) << " |\n";
    }
    out << "| Macro-Avg | " << null_or_signed_pct(c.macro.olr_rel_reduction_pct)
        << " | " << format_signed_pp(c.macro.pass_pp_delta) << " |\n";
    out << "| Micro-Avg | " << null_or_signed_pct(c.micro.olr_rel_reduction_pct)
        << " | " << format_signed_pp(c.micro.pass_pp_delta) << " |\n";
    return out.str();
}

std::string render_comparison_csv(const agg::Comparison& c,
                                  const std::vector<corpus::TaskFamily>& manifest) {
    std::ostringstream out;
    out << "task,olr_rel_reduction,pass_pp_delta\n";
    auto cell = [&](const agg::ComparisonRow& row, const std::string& name) {
        out << name << "," << null_or_signed_pct(row.olr_rel_reduction_pct) << ","
            << format_signed_pp(row.pass_pp_delta) << "\n";
    };
    for (const auto& row : c.per_family) {
        cell(row, display_name(manifest, row.family));
    }
    cell(c.macro, "Macro-Avg");
    cell(c.micro, "Micro-Avg");
    return out.str();
}

std::string report_to_json(const agg::AggregateReport& r) {
    json families = json::array();
    for (const auto& f : r.per_family) {
        families.push_back(json{{"family", f.family},
                                {"n", f.n},
                                {"mean_olr", f.mean_olr},
                                {"pass_rate", f.pass_rate},
                                {"degenerate_count", f.degenerate_count}});
    }
    return json{{"model_id", r.model_id},
                {"run_id", r.run_id},
                {"policy_preset", r.policy_preset},
                {"per_family", families},
                {"macro_olr", r.macro_olr},
                {"macro_pass", r.macro_pass},
                {"micro_olr", r.micro_olr},
                {"micro_pass", r.micro_pass}}
        .dump(2);
}

agg::AggregateReport report_from_json(const std::string& text) {
    json obj = json::parse(text);
    agg::AggregateReport r;
    r.model_id = obj.at("model_id").get<std::string>();
    r.run_id = obj.at("run_id").get<std::string>();
    r.policy_preset = obj.at("policy_preset").get<std::string>();
    for (const auto& f : obj.at("per_family")) {
        agg::FamilyStats fs;
        fs.family = f.at("family").get<std::string>();
        fs.n = f.at("n").get<std::int64_t>();
        fs.mean_olr = f.at("mean_olr").get<double>();
        fs.pass_rate = f.at("pass_rate").get<double>();
        fs.degenerate_count = f.value("degenerate_count", std::int64_t{0});
        r.per_family.push_back(std::move(fs));
    }
    r.macro_olr = obj.at("macro_olr").get<double>();
    r.macro_pass = obj.at("macro_pass").get<double>();
    r.micro_olr = obj.at("micro_olr").get<double>();
    r.micro_pass = obj.at("micro_pass").get<double>();
    return r;
}

std::string comparison_to_json(const agg::Comparison& c) {
    auto row_json = [](const agg::ComparisonRow& row) {
        json j{{"family", row.family}, {"pass_pp_delta", row.pass_pp_delta}};
        if (row.olr_rel_reduction_pct) {
            j["olr_rel_reduction_pct"] = *row.olr_rel_reduction_pct;
        } else {
            j["olr_rel_reduction_pct"] = nullptr;
        }
        return j;
    };
    json families = json::array();
    for (const auto& row : c.per_family) families.push_back(row_json(row));
    return json{{"ours_model_id", c.ours_model_id},
                {"baseline_model_id", c.baseline_model_id},
                {"policy_preset", c.policy_preset},
                {"per_family", families},
                {"macro", row_json(c.macro)},
                {"micro", row_json(c.micro)}}
        .dump(2);
}

}  // namespace tcpurity::report
