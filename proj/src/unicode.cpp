#include "tcpurity/unicode.hpp"

#include <unicode/utf8.h>

namespace tcpurity::unicode {

std::optional<std::size_t> find_invalid_utf8(std::string_view bytes) {
    const auto* s = reinterpret_cast<const std::uint8_t*>(bytes.data());
    std::int32_t i = 0;
    const auto length = static_cast<std::int32_t>(bytes.size());
    while (i < length) {
        std::int32_t start = i;
        UChar32 c;
        U8_NEXT(s, i, length, c);
        if (c < 0) {
            return static_cast<std::size_t>(start);
        }
    }
    return std::nullopt;
}

std::u32string decode_utf8(std::string_view bytes) {
    std::u32string out;
    out.reserve(bytes.size());
    const auto* s = reinterpret_cast<const std::uint8_t*>(bytes.data());
    std::int32_t i = 0;
    const auto length = static_cast<std::int32_t>(bytes.size());
    while (i < length) {
        std::int32_t start = i;
        UChar32 c;
        U8_NEXT(s, i, length, c);
        if (c < 0) {
            throw Utf8Error(static_cast<std::size_t>(start),
                            "ill-formed UTF-8 at byte offset " + std::to_string(start));
        }
        out.push_back(static_cast<char32_t>(c));
    }
    return out;
}

std::string encode_utf8(std::u32string_view scalars) {
    std::string out;
    out.reserve(scalars.size() * 3);
    for (char32_t c : scalars) {
        std::uint8_t buf[U8_MAX_LENGTH];
        std::int32_t i = 0;
        UBool error = false;
        U8_APPEND(buf, i, U8_MAX_LENGTH, static_cast<UChar32>(c), error);
        if (error) {
            throw std::invalid_argument("not a Unicode scalar value: " +
                                        std::to_string(static_cast<std::uint32_t>(c)));
        }
        out.append(reinterpret_cast<const char*>(buf), static_cast<std::size_t>(i));
    }
    return out;
}

std::size_t scalar_count(std::string_view bytes) {
    std::size_t n = 0;
    const auto* s = reinterpret_cast<const std::uint8_t*>(bytes.data());
    std::int32_t i = 0;
    const auto length = static_cast<std::int32_t>(bytes.size());
    while (i < length) {
        UChar32 c;
        U8_NEXT(s, i, length, c);
        if (c < 0) {
            throw Utf8Error(static_cast<std::size_t>(i),
                            "ill-formed UTF-8 at byte offset " + std::to_string(i));
        }
        ++n;
    }
    return n;
}

}  // namespace tcpurity::unicode
