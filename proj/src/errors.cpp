#include "digraphe/errors.hpp"
#include "digraphe/unicode.hpp"

#include <cstdio>

namespace digraphe {

namespace {

std::string describe_unknown(char32_t scalar, std::size_t offset) {
    char hex[16];
    std::snprintf(hex, sizeof(hex), "U+%04X", static_cast<unsigned>(scalar));
    return "no rule matches character '" + uni::encode_utf8(scalar) + "' (" + hex +
           ") at byte " + std::to_string(offset);
}

} // namespace

UnknownCharacterError::UnknownCharacterError(char32_t scalar, std::size_t offset)
    : Error(describe_unknown(scalar, offset)), scalar(scalar), offset(offset) {}

} // namespace digraphe
