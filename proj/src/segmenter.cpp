#include "digraphe/segmenter.hpp"

#include "digraphe/errors.hpp"

namespace digraphe {

ContextSet classify_context(std::size_t word_start, std::size_t word_end,
                            std::size_t match_start, std::size_t match_end) {
    if (!(word_start <= match_start && match_start < match_end &&
          match_end <= word_end))
        throw ContractError("classify_context: offsets out of order");

    ContextSet set;
    set.add(Context::Any);
    bool at_start = match_start == word_start;
    bool at_end = match_end == word_end;
    if (at_start && at_end) {
        set.add(Context::Isolated);
        set.add(Context::Initial);
        set.add(Context::Final);
    } else if (at_start) {
        set.add(Context::Initial);
    } else if (at_end) {
        set.add(Context::Final);
    } else {
        set.add(Context::Medial);
    }
    return set;
}

int context_specificity(Context c) {
    switch (c) {
    case Context::Isolated: return 3;
    case Context::Initial: return 2;
    case Context::Final: return 2;
    case Context::Medial: return 1;
    case Context::Any: return 0;
    }
    return 0;
}

namespace {

// All context classes, most specific first; ties go to the earlier entry so
// selection is deterministic.
constexpr Context kBySpecificity[kContextCount] = {
    Context::Isolated, Context::Initial, Context::Final, Context::Medial,
    Context::Any};

struct Selected {
    const Rule* rule;
    std::size_t length;
    Context context;
};

// Longest hit first; at equal length the most specific applicable context,
// then the highest priority.
bool select_match(const GraphemeTrie& trie, const std::vector<TrieHit>& hits,
                  std::size_t word_start, std::size_t word_end, std::size_t pos,
                  Selected& out) {
    for (auto it = hits.rbegin(); it != hits.rend(); ++it) {
        ContextSet classes =
            classify_context(word_start, word_end, pos, pos + it->length);
        const Rule* best = nullptr;
        Context best_ctx = Context::Any;
        for (Context c : kBySpecificity) {
            if (!classes.contains(c))
                continue;
            const Rule* r = trie.rule_at(it->node, c);
            if (!r)
                continue;
            if (!best || (context_specificity(c) == context_specificity(best_ctx) &&
                          r->priority > best->priority)) {
                best = r;
                best_ctx = c;
            }
            // kBySpecificity is ordered, so anything after an entry of lower
            // specificity cannot win.
            if (best && context_specificity(c) < context_specificity(best_ctx))
                break;
        }
        if (best) {
            out = {best, it->length, best_ctx};
            return true;
        }
    }
    return false;
}

} // namespace

std::vector<Token> segment(const uni::DecodedText& text, const GraphemeTrie& trie,
                           const DelimiterSet& delimiters, MatchMode mode) {
    const std::u32string& s = text.scalars;
    const std::vector<std::size_t>& off = text.offsets;
    std::vector<Token> tokens;
    std::vector<TrieHit> hits;

    std::size_t i = 0;
    const std::size_t n = s.size();
    while (i < n) {
        if (delimiters.contains(s[i])) {
            std::size_t j = i;
            while (j < n && delimiters.contains(s[j]))
                ++j;
            tokens.push_back({Token::Kind::Passthrough, off[i], off[j]});
            i = j;
            continue;
        }
        std::size_t word_start = i;
        std::size_t word_end = i;
        while (word_end < n && !delimiters.contains(s[word_end]))
            ++word_end;

        std::size_t pos = word_start;
        while (pos < word_end) {
            trie.collect_hits(s, pos, word_end, /*case_fold=*/true, hits);
            Selected match{};
            if (select_match(trie, hits, word_start, word_end, pos, match)) {
                tokens.push_back({Token::Kind::Mapped, off[pos], off[pos + match.length],
                                  match.rule, match.context});
                pos += match.length;
            } else if (mode == MatchMode::Strict) {
                throw UnknownCharacterError(s[pos], off[pos]);
            } else {
                tokens.push_back({Token::Kind::Passthrough, off[pos], off[pos + 1]});
                ++pos;
            }
        }
        i = word_end;
    }
    return tokens;
}

std::vector<Token> segment(std::string_view text, const GraphemeTrie& trie,
                           const DelimiterSet& delimiters, MatchMode mode) {
    return segment(uni::decode_utf8(text), trie, delimiters, mode);
}

} // namespace digraphe
