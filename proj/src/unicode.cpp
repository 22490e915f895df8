#include "digraphe/unicode.hpp"
#include "digraphe/errors.hpp"

#include <unicode/normalizer2.h>
#include <unicode/uchar.h>
#include <unicode/unistr.h>
#include <unicode/utf8.h>

namespace digraphe::uni {

DecodedText decode_utf8(std::string_view bytes) {
    DecodedText out;
    out.scalars.reserve(bytes.size());
    out.offsets.reserve(bytes.size() + 1);
    const auto* s = reinterpret_cast<const uint8_t*>(bytes.data());
    int32_t i = 0;
    const auto n = static_cast<int32_t>(bytes.size());
    while (i < n) {
        out.offsets.push_back(static_cast<std::size_t>(i));
        UChar32 c;
        U8_NEXT(s, i, n, c);
        if (c < 0)
            throw EncodingError("invalid UTF-8 sequence", out.offsets.back());
        out.scalars.push_back(static_cast<char32_t>(c));
    }
    out.offsets.push_back(bytes.size());
    return out;
}

std::string encode_utf8(std::u32string_view scalars) {
    std::string out;
    out.reserve(scalars.size() * 2);
    for (char32_t c : scalars) {
        uint8_t buf[U8_MAX_LENGTH];
        int32_t len = 0;
        UBool err = false;
        U8_APPEND(buf, len, U8_MAX_LENGTH, static_cast<UChar32>(c), err);
        if (err)
            throw EncodingError("scalar value outside Unicode range", 0);
        out.append(reinterpret_cast<const char*>(buf), static_cast<std::size_t>(len));
    }
    return out;
}

std::string encode_utf8(char32_t scalar) {
    return encode_utf8(std::u32string_view(&scalar, 1));
}

namespace {

const icu::Normalizer2& nfc_instance() {
    UErrorCode ec = U_ZERO_ERROR;
    const icu::Normalizer2* n = icu::Normalizer2::getNFCInstance(ec);
    if (U_FAILURE(ec) || n == nullptr)
        throw Error("ICU NFC normalizer unavailable");
    return *n;
}

} // namespace

std::string nfc(std::string_view bytes) {
    decode_utf8(bytes); // reject malformed input with a byte offset
    const icu::Normalizer2& n = nfc_instance();
    icu::UnicodeString u = icu::UnicodeString::fromUTF8(
        icu::StringPiece(bytes.data(), static_cast<int32_t>(bytes.size())));
    UErrorCode ec = U_ZERO_ERROR;
    if (n.isNormalized(u, ec) && U_SUCCESS(ec)) // cheap quick-check path
        return std::string(bytes);
    ec = U_ZERO_ERROR;
    icu::UnicodeString normalized = n.normalize(u, ec);
    if (U_FAILURE(ec))
        throw Error("NFC normalization failed");
    std::string out;
    normalized.toUTF8String(out);
    return out;
}

bool is_nfc(std::string_view bytes) {
    icu::UnicodeString u = icu::UnicodeString::fromUTF8(
        icu::StringPiece(bytes.data(), static_cast<int32_t>(bytes.size())));
    UErrorCode ec = U_ZERO_ERROR;
    UBool r = nfc_instance().isNormalized(u, ec);
    return U_SUCCESS(ec) && r;
}

unsigned char combining_class(char32_t c) {
    return u_getCombiningClass(static_cast<UChar32>(c));
}

char32_t to_lower(char32_t c) {
    return static_cast<char32_t>(u_tolower(static_cast<UChar32>(c)));
}

bool is_whitespace(char32_t c) {
    return u_isUWhiteSpace(static_cast<UChar32>(c));
}

bool is_decimal_digit(char32_t c) {
    return u_charType(static_cast<UChar32>(c)) == U_DECIMAL_DIGIT_NUMBER;
}

} // namespace digraphe::uni
