#include "tcpurity/textnorm.hpp"

#include <unicode/normalizer2.h>
#include <unicode/uchar.h>
#include <unicode/unistr.h>

#include <stdexcept>

#include "tcpurity/unicode.hpp"

namespace tcpurity::textnorm {

namespace {

const icu::Normalizer2& nfkc() {
    UErrorCode status = U_ZERO_ERROR;
    const icu::Normalizer2* n = icu::Normalizer2::getNFKCInstance(status);
    if (U_FAILURE(status) || n == nullptr) {
        throw std::runtime_error("ICU NFKC normalizer unavailable");
    }
    return *n;
}

}  // namespace

NormalizedText normalize(std::string_view raw) {
    const std::u32string original = unicode::decode_utf8(raw);

    icu::UnicodeString us = icu::UnicodeString::fromUTF8(
        icu::StringPiece(raw.data(), static_cast<std::int32_t>(raw.size())));
    UErrorCode status = U_ZERO_ERROR;
    icu::UnicodeString composed = nfkc().normalize(us, status);
    if (U_FAILURE(status)) {
        throw std::runtime_error("NFKC normalization failed");
    }

    // Collapse White_Space runs to one U+0020 and trim the ends.
    std::u32string out;
    out.reserve(static_cast<std::size_t>(composed.countChar32()));
    bool pending_space = false;
    for (std::int32_t i = 0; i < composed.length();) {
        UChar32 c = composed.char32At(i);
        i += U16_LENGTH(c);
        if (u_isUWhiteSpace(c)) {
            pending_space = !out.empty();
            continue;
        }
        if (pending_space) {
            out.push_back(U' ');
            pending_space = false;
        }
        out.push_back(static_cast<char32_t>(c));
    }

    NormalizedText result;
    result.original_length = original.size();
    result.normalized_length = out.size();
    result.text = unicode::encode_utf8(out);
    return result;
}

}  // namespace tcpurity::textnorm
