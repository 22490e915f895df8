#include "digraphe/trie.hpp"

#include "digraphe/errors.hpp"
#include "digraphe/unicode.hpp"

namespace digraphe {

GraphemeTrie build_trie(const MappingTable& table, TrieDirection direction) {
    if (!table.validated)
        throw ContractError("build_trie requires a validated table");

    GraphemeTrie trie;
    trie.table_ = &table;
    for (std::size_t i = 0; i < table.rules.size(); ++i) {
        const Rule& r = table.rules[i];
        const std::string& path =
            direction == TrieDirection::Forward ? r.source : r.target;
        std::uint32_t node = 0;
        for (char32_t c : uni::decode_utf8(path).scalars) {
            auto it = trie.nodes_[node].children.find(c);
            if (it == trie.nodes_[node].children.end()) {
                trie.nodes_.push_back({});
                it = trie.nodes_[node]
                         .children.emplace(c, static_cast<std::uint32_t>(
                                                  trie.nodes_.size() - 1))
                         .first;
            }
            node = it->second;
        }
        // Validation guarantees one rule per (path, context).
        trie.nodes_[node].rule[static_cast<std::size_t>(r.context)] =
            static_cast<std::int32_t>(i);
        trie.nodes_[node].terminal = true;
    }
    return trie;
}

void GraphemeTrie::collect_hits(std::span<const char32_t> text, std::size_t pos,
                                std::size_t limit, bool case_fold,
                                std::vector<TrieHit>& out) const {
    out.clear();
    std::uint32_t node = 0;
    for (std::size_t i = pos; i < limit; ++i) {
        const auto& children = nodes_[node].children;
        auto it = children.find(text[i]);
        if (it == children.end() && case_fold) {
            char32_t folded = uni::to_lower(text[i]);
            if (folded != text[i])
                it = children.find(folded);
        }
        if (it == children.end())
            break;
        node = it->second;
        if (nodes_[node].terminal)
            out.push_back({i - pos + 1, node});
    }
}

const Rule* GraphemeTrie::rule_at(std::uint32_t node, Context context) const {
    std::int32_t idx = nodes_[node].rule[static_cast<std::size_t>(context)];
    return idx < 0 ? nullptr : &table_->rules[static_cast<std::size_t>(idx)];
}

} // namespace digraphe
