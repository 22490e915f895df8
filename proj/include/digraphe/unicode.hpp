#ifndef DIGRAPHE_UNICODE_HPP
#define DIGRAPHE_UNICODE_HPP

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace digraphe::uni {

/// A UTF-8 string decoded to scalar values with the byte offset of each scalar.
/// offsets has scalars.size() + 1 entries; the last one is the byte length.
struct DecodedText {
    std::u32string scalars;
    std::vector<std::size_t> offsets;
};

/// Throws EncodingError on malformed UTF-8.
DecodedText decode_utf8(std::string_view bytes);

std::string encode_utf8(std::u32string_view scalars);
std::string encode_utf8(char32_t scalar);

/// Canonical composed normalization (NFC). Throws EncodingError on bad input.
std::string nfc(std::string_view bytes);
bool is_nfc(std::string_view bytes);

/// Canonical combining class; 0 for starters.
unsigned char combining_class(char32_t c);

char32_t to_lower(char32_t c);

bool is_whitespace(char32_t c);
bool is_decimal_digit(char32_t c);

inline bool is_ascii_punct(char32_t c) {
    return (c >= 0x21 && c <= 0x2F) || (c >= 0x3A && c <= 0x40) ||
           (c >= 0x5B && c <= 0x60) || (c >= 0x7B && c <= 0x7E);
}

} // namespace digraphe::uni

#endif
