#include "tcpurity/purity_metrics.hpp"

#include <stdexcept>
#include <unordered_set>

#include "tcpurity/textnorm.hpp"
#include "tcpurity/unicode.hpp"

namespace tcpurity::metrics {

PurityScore score(std::string_view raw, const script::ScriptPolicy& policy) {
    PurityScore s;
    const textnorm::NormalizedText norm = textnorm::normalize(raw);
    for (char32_t c : unicode::decode_utf8(norm.text)) {
        const script::CharVerdict v = script::classify(c, policy);
        ++s.class_histogram[v.cls];
        if (!v.counted) continue;
        ++s.counted_chars;
        if (!v.legal) ++s.illegal_chars;
    }
    if (s.counted_chars == 0) {
        s.degenerate = true;
        s.olr = 1.0;
        s.pass_tc = false;
        return s;
    }
    // Exact integer tallies, one division at the end.
    s.olr = static_cast<double>(s.illegal_chars) / static_cast<double>(s.counted_chars);
    s.pass_tc = s.illegal_chars == 0;
    return s;
}

std::vector<std::pair<std::string, PurityScore>> score_batch(
    const std::vector<BatchItem>& items, const script::ScriptPolicy& policy) {
    std::unordered_set<std::string> seen;
    for (const auto& item : items) {
        if (!seen.insert(item.id).second) {
            throw std::invalid_argument("duplicate record id: " + item.id);
        }
    }
    std::vector<std::pair<std::string, PurityScore>> out;
    out.reserve(items.size());
    for (const auto& item : items) {
        out.emplace_back(item.id, score(item.text, policy));
    }
    return out;
}

}  // namespace tcpurity::metrics
