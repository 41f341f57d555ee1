#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace tcpurity::unicode {

// Raised when a byte stream is not well-formed UTF-8.
class Utf8Error : public std::runtime_error {
public:
    Utf8Error(std::size_t byte_offset, std::string message)
        : std::runtime_error(std::move(message)), byte_offset_(byte_offset) {}
    std::size_t byte_offset() const noexcept { return byte_offset_; }

private:
    std::size_t byte_offset_;
};

// Byte offset of the first ill-formed sequence, or nullopt if valid.
std::optional<std::size_t> find_invalid_utf8(std::string_view bytes);

// Decodes UTF-8 to scalar values; throws Utf8Error on ill-formed input.
std::u32string decode_utf8(std::string_view bytes);

std::string encode_utf8(std::u32string_view scalars);

// Number of scalar values in a valid UTF-8 string.
std::size_t scalar_count(std::string_view bytes);

}  // namespace tcpurity::unicode
