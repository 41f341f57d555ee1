#pragma once

#include <string>

#include "tcpurity/aggregation.hpp"

namespace tcpurity::report {

// Cells round as rendered in the published tables: OLR to 3 decimals,
// percentages to 1 decimal, deltas signed ("+77.2%", "-5.6 pp").
std::string render_report_markdown(const agg::AggregateReport& r,
                                   const std::vector<corpus::TaskFamily>& manifest);
std::string render_report_csv(const agg::AggregateReport& r,
                              const std::vector<corpus::TaskFamily>& manifest);

std::string render_comparison_markdown(const agg::Comparison& c,
                                       const std::vector<corpus::TaskFamily>& manifest);
std::string render_comparison_csv(const agg::Comparison& c,
                                  const std::vector<corpus::TaskFamily>& manifest);

// report.json payloads.
std::string report_to_json(const agg::AggregateReport& r);
agg::AggregateReport report_from_json(const std::string& text);
std::string comparison_to_json(const agg::Comparison& c);

std::string format_olr(double v);            // "0.057"
std::string format_percent(double frac);     // 0.287 -> "28.7%"
std::string format_signed_pct(double pct);   // 77.2 -> "+77.2%"
std::string format_signed_pp(double pp);     // 10.7 -> "+10.7 pp"

}  // namespace tcpurity::report
