#include "tcpurity/script_policy.hpp"

#include <unicode/uchar.h>
#include <unicode/uscript.h>

#include <algorithm>
#include <stdexcept>

#include "tcpurity/unicode.hpp"

namespace tcpurity::script {

std::string_view to_string(CharClass c) {
    switch (c) {
        case CharClass::HanIdeograph: return "han_ideograph";
        case CharClass::DecimalDigit: return "decimal_digit";
        case CharClass::Whitespace: return "whitespace";
        case CharClass::CjkPunctuation: return "cjk_punctuation";
        case CharClass::LatinLetter: return "latin_letter";
        case CharClass::OtherPunctuation: return "other_punctuation";
        case CharClass::OtherSymbol: return "other_symbol";
        case CharClass::OtherLetter: return "other_letter";
        case CharClass::Control: return "control";
    }
    return "unknown";
}

const std::vector<CodepointRange>& ScriptPolicy::default_han_blocks() {
    // CJK Unified Ideographs, Extension A, Extensions B-I, and the two
    // Compatibility Ideographs blocks.
    static const std::vector<CodepointRange> blocks = {
        {0x4E00, 0x9FFF},    // CJK Unified Ideographs
        {0x3400, 0x4DBF},    // Extension A
        {0x20000, 0x2A6DF},  // Extension B
        {0x2A700, 0x2B73F},  // Extension C
        {0x2B740, 0x2B81F},  // Extension D
        {0x2B820, 0x2CEAF},  // Extension E
        {0x2CEB0, 0x2EBEF},  // Extension F
        {0x2EBF0, 0x2EE5F},  // Extension I
        {0x30000, 0x3134F},  // Extension G
        {0x31350, 0x323AF},  // Extension H
        {0xF900, 0xFAFF},    // CJK Compatibility Ideographs
        {0x2F800, 0x2FA1F},  // CJK Compatibility Ideographs Supplement
    };
    return blocks;
}

void ScriptPolicy::set_han_ranges(std::vector<CodepointRange> ranges) {
    for (const auto& r : ranges) {
        if (r.lo > r.hi || r.hi > 0x10FFFF) {
            throw std::invalid_argument("invalid codepoint range");
        }
    }
    std::sort(ranges.begin(), ranges.end(),
              [](const CodepointRange& a, const CodepointRange& b) { return a.lo < b.lo; });
    std::vector<CodepointRange> merged;
    for (const auto& r : ranges) {
        if (!merged.empty() && r.lo <= merged.back().hi + 1) {
            merged.back().hi = std::max(merged.back().hi, r.hi);
        } else {
            merged.push_back(r);
        }
    }
    han_ranges_ = std::move(merged);
}

ScriptPolicy ScriptPolicy::paper_strict() {
    ScriptPolicy p;
    p.set_han_ranges(default_han_blocks());
    p.preset_name_ = "paper-strict";
    return p;
}

ScriptPolicy ScriptPolicy::cjk_punct_lenient() {
    ScriptPolicy p = paper_strict();
    p.cjk_punct_legal = true;
    p.preset_name_ = "cjk-punct-lenient";
    return p;
}

std::optional<ScriptPolicy> ScriptPolicy::from_preset(std::string_view name) {
    if (name == "paper-strict") return paper_strict();
    if (name == "cjk-punct-lenient") return cjk_punct_lenient();
    return std::nullopt;
}

bool ScriptPolicy::in_han_ranges(char32_t c) const noexcept {
    auto it = std::upper_bound(
        han_ranges_.begin(), han_ranges_.end(), c,
        [](char32_t v, const CodepointRange& r) { return v < r.lo; });
    return it != han_ranges_.begin() && std::prev(it)->contains(c);
}

namespace {

bool in_cjk_punct_ranges(char32_t c) {
    // CJK Symbols and Punctuation, the punctuation stretch of the
    // Fullwidth/Halfwidth Forms block, and Vertical Forms.
    return (c >= 0x3000 && c <= 0x303F) || (c >= 0xFF01 && c <= 0xFF65) ||
           (c >= 0xFE30 && c <= 0xFE4F);
}

bool is_latin_letter(char32_t c) {
    if (!u_isalpha(static_cast<UChar32>(c))) return false;
    UErrorCode status = U_ZERO_ERROR;
    UScriptCode sc = uscript_getScript(static_cast<UChar32>(c), &status);
    return U_SUCCESS(status) && sc == USCRIPT_LATIN;
}

CharClass residual_class(char32_t c) {
    switch (u_charType(static_cast<UChar32>(c))) {
        case U_DASH_PUNCTUATION:
        case U_START_PUNCTUATION:
        case U_END_PUNCTUATION:
        case U_CONNECTOR_PUNCTUATION:
        case U_OTHER_PUNCTUATION:
        case U_INITIAL_PUNCTUATION:
        case U_FINAL_PUNCTUATION:
            return CharClass::OtherPunctuation;
        case U_MATH_SYMBOL:
        case U_CURRENCY_SYMBOL:
        case U_MODIFIER_SYMBOL:
        case U_OTHER_SYMBOL:
            return CharClass::OtherSymbol;
        case U_UPPERCASE_LETTER:
        case U_LOWERCASE_LETTER:
        case U_TITLECASE_LETTER:
        case U_MODIFIER_LETTER:
        case U_OTHER_LETTER:
            return CharClass::OtherLetter;
        case U_CONTROL_CHAR:
        case U_FORMAT_CHAR:
        case U_PRIVATE_USE_CHAR:
        case U_SURROGATE:
        case U_GENERAL_OTHER_TYPES:  // unassigned
            return CharClass::Control;
        default:
            // Marks, non-decimal numbers, remaining separators.
            return CharClass::OtherSymbol;
    }
}

}  // namespace

CharVerdict classify(char32_t c, const ScriptPolicy& policy) {
    CharClass cls;
    if (policy.in_han_ranges(c)) {
        cls = CharClass::HanIdeograph;
    } else if (u_charType(static_cast<UChar32>(c)) == U_DECIMAL_DIGIT_NUMBER) {
        cls = CharClass::DecimalDigit;
    } else if (u_isUWhiteSpace(static_cast<UChar32>(c))) {
        cls = CharClass::Whitespace;
    } else if (in_cjk_punct_ranges(c)) {
        cls = CharClass::CjkPunctuation;
    } else if (is_latin_letter(c)) {
        cls = CharClass::LatinLetter;
    } else {
        cls = residual_class(c);
    }

    bool legal = false;
    switch (cls) {
        case CharClass::HanIdeograph:
            legal = true;
            break;
        case CharClass::DecimalDigit:
            legal = !policy.ascii_digits_only || (c >= U'0' && c <= U'9');
            break;
        case CharClass::CjkPunctuation:
            legal = policy.cjk_punct_legal;
            break;
        default:
            break;
    }

    const bool counted =
        cls != CharClass::Whitespace ||
        policy.whitespace_counting == WhitespaceCounting::CountIllegal;
    return CharVerdict{c, cls, legal, counted};
}

std::vector<LegalitySpan> legality_spans(const textnorm::NormalizedText& s,
                                         const ScriptPolicy& policy) {
    std::vector<LegalitySpan> spans;
    std::size_t counted_index = 0;
    for (char32_t c : unicode::decode_utf8(s.text)) {
        CharVerdict v = classify(c, policy);
        if (!v.counted) continue;
        if (!spans.empty() && spans.back().legal == v.legal) {
            spans.back().end = counted_index + 1;
        } else {
            spans.push_back({counted_index, counted_index + 1, v.legal});
        }
        ++counted_index;
    }
    return spans;
}

}  // namespace tcpurity::script
