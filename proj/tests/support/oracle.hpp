#pragma once

// Independent brute-force references used by the property suites. The
// block tables here are transcribed from the published Unicode block
// list on purpose; they must not be derived from the production policy
// tables.

#include <unicode/uchar.h>

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "tcpurity/script_policy.hpp"
#include "tcpurity/textnorm.hpp"
#include "tcpurity/unicode.hpp"

namespace oracle {

struct Block {
    char32_t lo;
    char32_t hi;
};

// Han ideograph blocks, transcribed from the Unicode block listing:
// Unified Ideographs, Extensions A-I, Compatibility Ideographs and the
// Compatibility Supplement. Deliberately in a different order than the
// production table.
inline const std::vector<Block>& han_blocks() {
    static const std::vector<Block> blocks = {
        {0x3400, 0x4DBF},   {0x4E00, 0x9FFF},   {0xF900, 0xFAFF},
        {0x20000, 0x2A6DF}, {0x2A700, 0x2B73F}, {0x2B740, 0x2B81F},
        {0x2B820, 0x2CEAF}, {0x2CEB0, 0x2EBEF}, {0x2EBF0, 0x2EE5F},
        {0x2F800, 0x2FA1F}, {0x30000, 0x3134F}, {0x31350, 0x323AF},
    };
    return blocks;
}

inline const std::vector<Block>& cjk_punct_blocks() {
    static const std::vector<Block> blocks = {
        {0x3000, 0x303F}, {0xFE30, 0xFE4F}, {0xFF01, 0xFF65}};
    return blocks;
}

inline bool linear_scan(const std::vector<Block>& blocks, char32_t c) {
    for (const auto& b : blocks) {
        if (c >= b.lo && c <= b.hi) return true;
    }
    return false;
}

struct Verdict {
    bool legal;
    bool counted;
};

// Same policy semantics, rebuilt from scratch: linear block scans plus
// the Unicode character database for Nd and White_Space.
inline Verdict classify(char32_t c, bool cjk_punct_legal, bool whitespace_counted,
                        bool ascii_digits_only) {
    if (linear_scan(han_blocks(), c)) return {true, true};
    if (u_charType(static_cast<UChar32>(c)) == U_DECIMAL_DIGIT_NUMBER) {
        const bool legal = !ascii_digits_only || (c >= U'0' && c <= U'9');
        return {legal, true};
    }
    if (u_isUWhiteSpace(static_cast<UChar32>(c))) return {false, whitespace_counted};
    if (linear_scan(cjk_punct_blocks(), c)) return {cjk_punct_legal, true};
    return {false, true};
}

struct OlrResult {
    std::int64_t counted = 0;
    std::int64_t illegal = 0;
    double olr = 1.0;  // degenerate default
};

// Naive per-character OLR over an already-normalized string.
inline OlrResult olr_brute_force(const std::string& normalized_utf8,
                                 const tcpurity::script::ScriptPolicy& policy) {
    OlrResult r;
    const bool ws_counted = policy.whitespace_counting ==
                            tcpurity::script::WhitespaceCounting::CountIllegal;
    for (char32_t c : tcpurity::unicode::decode_utf8(normalized_utf8)) {
        Verdict v = classify(c, policy.cjk_punct_legal, ws_counted,
                             policy.ascii_digits_only);
        if (!v.counted) continue;
        ++r.counted;
        if (!v.legal) ++r.illegal;
    }
    if (r.counted > 0) {
        r.olr = static_cast<double>(r.illegal) / static_cast<double>(r.counted);
    }
    return r;
}

// Mixed-script sample alphabet: Han (BMP and supplementary), Latin,
// digits from several scripts, kana, CJK punctuation, whitespace,
// symbols and emoji. No combining marks, so concatenations of
// normalized strings stay normalized.
inline const std::vector<char32_t>& sample_alphabet() {
    static const std::vector<char32_t> chars = [] {
        std::vector<char32_t> v;
        for (char32_t c : {U'中', U'文', U'你', U'好', U'測', U'試', U'繁', U'體'}) v.push_back(c);
        v.push_back(0x3400);   // Extension A
        v.push_back(0x20000);  // Extension B
        v.push_back(0x2B740);  // Extension D
        v.push_back(0xFA0E);   // compatibility ideograph kept by NFKC
        for (char32_t c = U'A'; c <= U'F'; ++c) v.push_back(c);
        for (char32_t c = U'a'; c <= U'f'; ++c) v.push_back(c);
        for (char32_t c = U'0'; c <= U'9'; ++c) v.push_back(c);
        v.push_back(0x0660);  // Arabic-Indic digit zero
        v.push_back(0x0966);  // Devanagari digit zero
        for (char32_t c : {U'。', U'、', U'！', U'，', U'「', U'」'}) v.push_back(c);
        for (char32_t c : {U' ', U'\t', U'\n', char32_t(0x3000)}) v.push_back(c);
        for (char32_t c : {U'あ', U'ア', U'한', U'д', U'α'}) v.push_back(c);
        for (char32_t c : {U'$', U'%', U'+', U'@', U'#', char32_t(0x1F600)}) v.push_back(c);
        return v;
    }();
    return chars;
}

inline std::string random_string(std::mt19937& rng, std::size_t max_len = 64) {
    const auto& alphabet = sample_alphabet();
    std::uniform_int_distribution<std::size_t> len_dist(0, max_len);
    std::uniform_int_distribution<std::size_t> pick(0, alphabet.size() - 1);
    std::u32string s;
    const std::size_t len = len_dist(rng);
    for (std::size_t i = 0; i < len; ++i) s.push_back(alphabet[pick(rng)]);
    return tcpurity::unicode::encode_utf8(s);
}

}  // namespace oracle
