#ifndef DIGRAPHE_FORMATS_HPP
#define DIGRAPHE_FORMATS_HPP

#include "digraphe/transducer.hpp"

#include <iosfwd>
#include <set>
#include <string>
#include <string_view>

namespace digraphe {

/// Line-oriented plain-text conversion: lines are delimited by U+000A and
/// converted independently (U+000D survives as an ordinary delimiter), so
/// output lines correspond one-to-one with input lines. Unknown offsets in
/// the aggregate report are byte offsets into the normalized document. In
/// strict mode UnknownCharacterError is raised with 1-based line and column.
TransliterationReport transliterate_text_stream(std::istream& in, std::ostream& out,
                                                const Engine& engine, MatchMode mode);
TransliterationReport transliterate_text_stream(std::istream& in, std::ostream& out,
                                                const MappingTable& table,
                                                Direction direction, MatchMode mode);

struct HtmlOptions {
    std::set<std::string> skip_elements{"script", "style"}; // ASCII-lowercase
    bool set_dir_attribute = false; // dir="rtl"/"ltr" on the root element
};

/// Converts the text content of an HTML document, leaving tags, attributes,
/// comments, CDATA sections, declarations and skip-element content
/// byte-for-byte untouched. The five reserved character entities and numeric
/// entities are decoded before conversion; entities that decoded to delimiter
/// characters are re-encoded with their original spelling.
TransliterationReport transliterate_html(std::istream& in, std::ostream& out,
                                         const Engine& engine, MatchMode mode,
                                         const HtmlOptions& options = {});
TransliterationReport transliterate_html(std::istream& in, std::ostream& out,
                                         const MappingTable& table, Direction direction,
                                         MatchMode mode, const HtmlOptions& options = {});

/// String-in/string-out conveniences.
std::pair<std::string, TransliterationReport>
transliterate_text(std::string_view text, const Engine& engine, MatchMode mode);
std::pair<std::string, TransliterationReport>
transliterate_html(std::string_view html, const Engine& engine, MatchMode mode,
                   const HtmlOptions& options = {});

} // namespace digraphe

#endif
