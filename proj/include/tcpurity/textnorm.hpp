#pragma once

#include <cstddef>
#include <string>
#include <string_view>

namespace tcpurity::textnorm {

// Result of the pre-scoring normalization pipeline.
//
// Invariants on `text`:
//  - no two consecutive whitespace scalar values (the only whitespace left
//    is a single U+0020 between non-whitespace runs)
//  - no leading or trailing whitespace
//  - fixed point: normalize(text).text == text
struct NormalizedText {
    std::string text;               // UTF-8
    std::size_t original_length;    // scalar values before normalization
    std::size_t normalized_length;  // scalar values after
};

// NFKC, then every maximal run of White_Space scalars becomes one U+0020,
// then leading/trailing space is stripped. Case is never touched.
NormalizedText normalize(std::string_view raw);

}  // namespace tcpurity::textnorm
