#ifndef DIGRAPHE_MAPPING_TABLE_HPP
#define DIGRAPHE_MAPPING_TABLE_HPP

#include <cstddef>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace digraphe {

/// Word-position class a rule is restricted to. `Any` applies everywhere.
enum class Context : std::uint8_t { Any = 0, Initial, Medial, Final, Isolated };

constexpr std::size_t kContextCount = 5;

const char* to_string(Context c);

/// One directed grapheme correspondence. Both sides are canonical-composed
/// UTF-8 and non-empty.
struct Rule {
    std::string source;
    std::string target;
    Context context = Context::Any;
    std::uint32_t priority = 0;
    std::size_t line = 0; // table file line, for diagnostics

    friend bool operator==(const Rule& a, const Rule& b) {
        return a.source == b.source && a.target == b.target &&
               a.context == b.context && a.priority == b.priority;
    }
};

/// Word-boundary character set: the built-in defaults (Unicode whitespace,
/// ASCII punctuation, Arabic punctuation, decimal digits, U+FEFF) plus any
/// scalars a table adds via @delimiters.
class DelimiterSet {
public:
    DelimiterSet() = default;
    explicit DelimiterSet(std::set<char32_t> extra) : extra_(std::move(extra)) {}

    bool contains(char32_t c) const;
    const std::set<char32_t>& extra() const { return extra_; }
    void add(char32_t c) { extra_.insert(c); }

private:
    std::set<char32_t> extra_;
};

struct MappingTable {
    std::string language;
    std::string version;
    std::vector<Rule> rules;
    DelimiterSet delimiters;
    std::map<std::string, std::string> metadata; // every @key value directive

    /// Set by validate_table when no errors were found. Conversion requires it.
    bool validated = false;
};

struct ValidationIssue {
    std::string code;
    std::string message;
    std::size_t line = 0;
};

struct ValidationReport {
    std::vector<ValidationIssue> errors;
    std::vector<ValidationIssue> warnings;
    bool decodable_forward = false;
    bool decodable_reverse = false;

    bool accepted() const { return errors.empty(); }
};

/// Parses the line-oriented table format:
///   source <TAB> target <TAB> context [<TAB> priority]
/// with `#` comment lines, `@key value` header directives and \uXXXX, \t, \\,
/// \# escapes. Rule text is normalized to NFC. Throws ParseError /
/// EncodingError.
MappingTable parse_table(std::string_view raw);

/// Inverse of parse_table up to comments and insignificant whitespace.
std::string serialize_table(const MappingTable& table);

/// Duplicate / collision / delimiter checks, unique-decodability analysis of
/// both code sides (contexts ignored, hence conservative), and lint warnings.
/// Marks the table validated when no errors are found. Never throws.
ValidationReport validate_table(MappingTable& table);

/// Swaps every rule's source and target, keeping context and priority.
/// Throws ContractError if the table has (target, context) collisions, which
/// would alias rules in the inverted table.
MappingTable invert(const MappingTable& table);

} // namespace digraphe

#endif
