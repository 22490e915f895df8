#ifndef DIGRAPHE_TRANSDUCER_HPP
#define DIGRAPHE_TRANSDUCER_HPP

#include "digraphe/mapping_table.hpp"
#include "digraphe/segmenter.hpp"
#include "digraphe/trie.hpp"

#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace digraphe {

enum class Direction { LatinToAjami, AjamiToLatin };

const char* to_string(Direction d);

struct UnknownOccurrence {
    char32_t scalar;
    std::size_t offset; // byte offset into the normalized input
};

struct TransliterationReport {
    std::size_t chars_in = 0;  // scalars in the normalized input
    std::size_t chars_out = 0; // scalars in the output
    std::size_t tokens_mapped = 0;
    std::size_t tokens_passthrough = 0;
    std::vector<UnknownOccurrence> unknown;
    Direction direction = Direction::LatinToAjami;
    std::string language;
    MatchMode mode = MatchMode::Lenient;
};

/// A validated table compiled for one direction: AjamiToLatin runs the same
/// machinery over the inverted table. Immutable and safe to share across
/// threads.
class Engine {
public:
    /// Throws ContractError if the table has not been validated.
    Engine(const MappingTable& table, Direction direction);

    std::pair<std::string, TransliterationReport>
    transliterate(std::string_view text, MatchMode mode) const;

    const MappingTable& table() const { return table_; }
    const GraphemeTrie& trie() const { return trie_; }
    Direction direction() const { return direction_; }

private:
    MappingTable table_; // forward or inverted copy, owned
    GraphemeTrie trie_;
    Direction direction_;
};

/// Replaces each grapheme of `text` by its correspondent, leaving delimiter
/// runs untouched. Output is NFC whenever the table concatenates stably
/// (validate_table warns otherwise). Strict mode throws
/// UnknownCharacterError; lenient mode records unknowns in the report.
std::pair<std::string, TransliterationReport>
transliterate(std::string_view text, const MappingTable& table, Direction direction,
              MatchMode mode);

/// Single-word conversion against an already-built trie. The word must not
/// contain delimiter characters (ContractError).
std::string transliterate_word(std::string_view word, const GraphemeTrie& trie,
                               MatchMode mode);

} // namespace digraphe

#endif
