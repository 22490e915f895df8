#ifndef DIGRAPHE_VERIFIER_HPP
#define DIGRAPHE_VERIFIER_HPP

#include "digraphe/mapping_table.hpp"

#include <cstdint>
#include <functional>
#include <set>
#include <string>
#include <vector>

namespace digraphe {

struct RoundTripFailure {
    std::string input;
    std::string forward_output;
    std::string back_output;
};

struct RoundTripReport {
    std::size_t max_length = 0;      // bound in graphemes (rule applications)
    std::uint64_t strings_tested = 0; // context-realizable rule sequences
    std::vector<RoundTripFailure> failures;
    bool passed = true;
};

/// Progress callback: (sequences done, total sequences).
using ProgressFn = std::function<void(std::uint64_t, std::uint64_t)>;

/// Enumerates every context-realizable sequence of at most `max_length` rule
/// sources, converts the concatenation forward and back, and records every
/// string that fails to reproduce itself. Deterministic order. The table must
/// be validated (ContractError otherwise); max_length must be >= 1.
RoundTripReport check_round_trip(const MappingTable& table, std::size_t max_length,
                                 const ProgressFn& progress = {});

/// True iff every concatenation of code words has exactly one factorization.
/// Iterated dangling-suffix construction, terminating on set repetition.
/// Throws ContractError for an empty code or a code containing the empty
/// string.
bool sardinas_patterson(const std::set<std::u32string>& code);

} // namespace digraphe

#endif
