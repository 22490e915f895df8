#ifndef DIGRAPHE_ERRORS_HPP
#define DIGRAPHE_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace digraphe {

class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Malformed table file. `line` is 1-based.
class ParseError : public Error {
public:
    ParseError(const std::string& msg, std::size_t line)
        : Error(msg + " (line " + std::to_string(line) + ")"), line(line) {}
    std::size_t line;
};

/// Invalid UTF-8. `offset` is the byte position of the offending unit.
class EncodingError : public Error {
public:
    EncodingError(const std::string& msg, std::size_t offset)
        : Error(msg + " (byte " + std::to_string(offset) + ")"), offset(offset) {}
    std::size_t offset;
};

/// Strict-mode failure: no rule covers `scalar` and it is not a delimiter.
/// `offset` is a byte position into the normalized input; when raised from a
/// line-oriented stream, `line`/`column` are filled in (1-based, column in
/// scalars).
class UnknownCharacterError : public Error {
public:
    UnknownCharacterError(char32_t scalar, std::size_t offset);
    char32_t scalar;
    std::size_t offset;
    std::size_t line = 0;
    std::size_t column = 0;
};

/// A precondition the caller was responsible for does not hold.
class ContractError : public Error {
public:
    explicit ContractError(const std::string& msg) : Error(msg) {}
};

class IoError : public Error {
public:
    explicit IoError(const std::string& msg) : Error(msg) {}
};

} // namespace digraphe

#endif
