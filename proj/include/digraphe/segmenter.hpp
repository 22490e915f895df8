#ifndef DIGRAPHE_SEGMENTER_HPP
#define DIGRAPHE_SEGMENTER_HPP

#include "digraphe/mapping_table.hpp"
#include "digraphe/trie.hpp"
#include "digraphe/unicode.hpp"

#include <cstdint>
#include <string_view>
#include <vector>

namespace digraphe {

enum class MatchMode { Strict, Lenient };

/// Small set of Context values.
class ContextSet {
public:
    void add(Context c) { bits_ |= mask(c); }
    bool contains(Context c) const { return bits_ & mask(c); }

private:
    static std::uint8_t mask(Context c) {
        return static_cast<std::uint8_t>(1u << static_cast<unsigned>(c));
    }
    std::uint8_t bits_ = 0;
};

/// Word-position classes a match occupies. A whole-word match is isolated,
/// initial and final at once; `any` is always a member. Offsets must satisfy
/// word_start <= match_start < match_end <= word_end (ContractError
/// otherwise).
ContextSet classify_context(std::size_t word_start, std::size_t word_end,
                            std::size_t match_start, std::size_t match_end);

/// Matching specificity: isolated > initial = final > medial > any.
int context_specificity(Context c);

/// One segmented unit. Spans are byte offsets into the normalized input;
/// tokens tile it exactly.
struct Token {
    enum class Kind { Mapped, Passthrough };
    Kind kind;
    std::size_t begin;
    std::size_t end;
    const Rule* rule = nullptr; // Mapped only
    Context context_used = Context::Any;
};

/// Greedy longest-match segmentation. `text` must already be in NFC.
/// Delimiter runs become passthrough tokens. In strict mode an uncovered
/// non-delimiter scalar raises UnknownCharacterError; in lenient mode it
/// becomes a one-scalar passthrough token.
std::vector<Token> segment(std::string_view text, const GraphemeTrie& trie,
                           const DelimiterSet& delimiters, MatchMode mode);

/// Variant over pre-decoded text, for callers that already hold the scalars.
std::vector<Token> segment(const uni::DecodedText& text, const GraphemeTrie& trie,
                           const DelimiterSet& delimiters, MatchMode mode);

} // namespace digraphe

#endif
