#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tcpurity/textnorm.hpp"

namespace tcpurity::script {

enum class CharClass {
    HanIdeograph,
    DecimalDigit,
    Whitespace,
    CjkPunctuation,
    LatinLetter,
    OtherPunctuation,
    OtherSymbol,
    OtherLetter,
    Control,
};

std::string_view to_string(CharClass c);

enum class WhitespaceCounting {
    Skip,          // whitespace appears in neither numerator nor denominator
    CountIllegal,  // whitespace counts and is illegal
};

struct CodepointRange {
    char32_t lo;
    char32_t hi;  // inclusive

    bool contains(char32_t c) const noexcept { return c >= lo && c <= hi; }
    bool operator==(const CodepointRange&) const = default;
};

// Character-level legality policy. Immutable once built; share freely
// across threads.
class ScriptPolicy {
public:
    // The Han ideograph blocks the default policy accepts: CJK Unified
    // Ideographs, Extensions A through I, and both Compatibility
    // Ideographs blocks. 12 blocks, in block order.
    static const std::vector<CodepointRange>& default_han_blocks();

    // Han + Nd only; CJK punctuation illegal; whitespace skipped.
    static ScriptPolicy paper_strict();

    // Same, but CJK punctuation (U+3000-303F, U+FF01-FF65, U+FE30-FE4F)
    // is legal.
    static ScriptPolicy cjk_punct_lenient();

    static std::optional<ScriptPolicy> from_preset(std::string_view name);

    // Ranges are sorted and merged so the stored table is non-overlapping
    // and non-adjacent.
    void set_han_ranges(std::vector<CodepointRange> ranges);
    const std::vector<CodepointRange>& han_ranges() const noexcept { return han_ranges_; }

    bool in_han_ranges(char32_t c) const noexcept;

    WhitespaceCounting whitespace_counting = WhitespaceCounting::Skip;
    bool cjk_punct_legal = false;
    // Restrict the Nd rule to U+0030-0039. Off by default: the policy
    // accepts any General_Category=Nd codepoint.
    bool ascii_digits_only = false;

    const std::string& preset_name() const noexcept { return preset_name_; }

private:
    std::vector<CodepointRange> han_ranges_;
    std::string preset_name_ = "custom";
};

struct CharVerdict {
    char32_t codepoint;
    CharClass cls;
    bool legal;
    bool counted;  // participates in the OLR denominator
};

// Total over all Unicode scalar values. Class precedence:
// Han > Nd > Whitespace > CJK punctuation > Latin > remaining categories.
CharVerdict classify(char32_t c, const ScriptPolicy& policy);

// Maximal runs of equal legality over the counted subsequence of `s`.
// Indices address positions within that counted subsequence (skipped
// characters do not advance the index).
struct LegalitySpan {
    std::size_t begin;
    std::size_t end;  // exclusive
    bool legal;

    bool operator==(const LegalitySpan&) const = default;
};

std::vector<LegalitySpan> legality_spans(const textnorm::NormalizedText& s,
                                         const ScriptPolicy& policy);

}  // namespace tcpurity::script
