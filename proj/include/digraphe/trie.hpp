#ifndef DIGRAPHE_TRIE_HPP
#define DIGRAPHE_TRIE_HPP

#include "digraphe/mapping_table.hpp"

#include <array>
#include <cstdint>
#include <map>
#include <span>
#include <vector>

namespace digraphe {

enum class TrieDirection { Forward, Reverse };

/// A match candidate: `length` scalars consumed from the walk start, ending
/// at a node carrying at least one rule.
struct TrieHit {
    std::size_t length;
    std::uint32_t node;
};

/// Longest-match index over rule sources (Forward) or rule targets (Reverse).
/// Immutable after build_trie; the indexed MappingTable must outlive it.
class GraphemeTrie {
public:
    /// Walks from `pos`, collecting every rule-bearing node, nearest first.
    /// Never crosses `limit`. When `case_fold` is set and an exact child is
    /// missing, the walk retries the step with the lowercased scalar.
    void collect_hits(std::span<const char32_t> text, std::size_t pos, std::size_t limit,
                      bool case_fold, std::vector<TrieHit>& out) const;

    /// The rule terminating at `node` under `context`, or nullptr.
    const Rule* rule_at(std::uint32_t node, Context context) const;

    const MappingTable& table() const { return *table_; }
    bool empty() const { return nodes_.size() == 1 && nodes_[0].children.empty(); }

private:
    friend GraphemeTrie build_trie(const MappingTable&, TrieDirection);

    struct Node {
        std::map<char32_t, std::uint32_t> children;
        std::array<std::int32_t, kContextCount> rule{-1, -1, -1, -1, -1};
        bool terminal = false;
    };

    std::vector<Node> nodes_{Node{}};
    const MappingTable* table_ = nullptr;
};

/// Indexes a validated table for one direction. Throws ContractError when the
/// table has not been validated.
GraphemeTrie build_trie(const MappingTable& table, TrieDirection direction);

} // namespace digraphe

#endif
