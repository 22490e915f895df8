#include "digraphe/transducer.hpp"

#include "digraphe/errors.hpp"
#include "digraphe/unicode.hpp"

namespace digraphe {

const char* to_string(Direction d) {
    return d == Direction::LatinToAjami ? "latin-to-ajami" : "ajami-to-latin";
}

Engine::Engine(const MappingTable& table, Direction direction)
    : table_(direction == Direction::LatinToAjami ? table : invert(table)),
      direction_(direction) {
    if (!table_.validated)
        throw ContractError("transliteration requires a validated table");
    trie_ = build_trie(table_, TrieDirection::Forward);
}

std::pair<std::string, TransliterationReport>
Engine::transliterate(std::string_view text, MatchMode mode) const {
    TransliterationReport report;
    report.direction = direction_;
    report.language = table_.language;
    report.mode = mode;

    std::string normalized = uni::nfc(text);
    uni::DecodedText decoded = uni::decode_utf8(normalized);
    report.chars_in = decoded.scalars.size();

    std::vector<Token> tokens = segment(decoded, trie_, table_.delimiters, mode);

    std::string out;
    out.reserve(normalized.size() + normalized.size() / 2);
    for (const Token& t : tokens) {
        if (t.kind == Token::Kind::Mapped) {
            out += t.rule->target;
            ++report.tokens_mapped;
            continue;
        }
        out.append(normalized, t.begin, t.end - t.begin);
        ++report.tokens_passthrough;
    }
    // Passthrough tokens are delimiter runs or single unknown scalars; record
    // the unknowns with their byte offsets.
    std::size_t scalar_index = 0;
    for (const Token& t : tokens) {
        while (scalar_index < decoded.scalars.size() &&
               decoded.offsets[scalar_index] < t.begin)
            ++scalar_index;
        if (t.kind != Token::Kind::Passthrough)
            continue;
        std::size_t i = scalar_index;
        while (i < decoded.scalars.size() && decoded.offsets[i] < t.end) {
            if (!table_.delimiters.contains(decoded.scalars[i]))
                report.unknown.push_back({decoded.scalars[i], decoded.offsets[i]});
            ++i;
        }
    }

    report.chars_out = uni::decode_utf8(out).scalars.size();
    return {std::move(out), std::move(report)};
}

std::pair<std::string, TransliterationReport>
transliterate(std::string_view text, const MappingTable& table, Direction direction,
              MatchMode mode) {
    return Engine(table, direction).transliterate(text, mode);
}

std::string transliterate_word(std::string_view word, const GraphemeTrie& trie,
                               MatchMode mode) {
    std::string normalized = uni::nfc(word);
    uni::DecodedText decoded = uni::decode_utf8(normalized);
    const DelimiterSet& delimiters = trie.table().delimiters;
    for (char32_t c : decoded.scalars)
        if (delimiters.contains(c))
            throw ContractError("transliterate_word: word contains a delimiter");

    std::vector<Token> tokens = segment(decoded, trie, delimiters, mode);
    std::string out;
    for (const Token& t : tokens) {
        if (t.kind == Token::Kind::Mapped)
            out += t.rule->target;
        else
            out.append(normalized, t.begin, t.end - t.begin);
    }
    return out;
}

} // namespace digraphe
