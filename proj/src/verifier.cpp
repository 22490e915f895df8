#include "digraphe/verifier.hpp"

#include "digraphe/errors.hpp"
#include "digraphe/transducer.hpp"

namespace digraphe {

namespace {

// Dangling suffixes: every w such that a + w = b with a in A, b in B.
std::set<std::u32string> dangling_suffixes(const std::set<std::u32string>& a_set,
                                           const std::set<std::u32string>& b_set) {
    std::set<std::u32string> out;
    for (const auto& a : a_set)
        for (const auto& b : b_set)
            if (b.size() > a.size() && b.compare(0, a.size(), a) == 0)
                out.insert(b.substr(a.size()));
    return out;
}

} // namespace

bool sardinas_patterson(const std::set<std::u32string>& code) {
    if (code.empty())
        throw ContractError("sardinas_patterson: empty code");
    if (code.contains(std::u32string()))
        throw ContractError("sardinas_patterson: code contains the empty string");

    std::set<std::u32string> seen = dangling_suffixes(code, code);
    std::set<std::u32string> frontier = seen;
    while (!frontier.empty()) {
        for (const auto& w : frontier)
            if (code.contains(w))
                return false;
        std::set<std::u32string> next = dangling_suffixes(code, frontier);
        std::set<std::u32string> more = dangling_suffixes(frontier, code);
        next.insert(more.begin(), more.end());
        std::set<std::u32string> fresh;
        for (const auto& w : next)
            if (!seen.contains(w))
                fresh.insert(w);
        seen.insert(fresh.begin(), fresh.end());
        frontier = std::move(fresh);
    }
    return true;
}

namespace {

bool fits_whole(Context c) { return c != Context::Medial; }
bool fits_initial(Context c) { return c == Context::Initial || c == Context::Any; }
bool fits_medial(Context c) { return c == Context::Medial || c == Context::Any; }
bool fits_final(Context c) { return c == Context::Final || c == Context::Any; }

std::uint64_t total_sequences(const MappingTable& table, std::size_t max_length) {
    std::uint64_t whole = 0, initial = 0, medial = 0, final = 0;
    for (const Rule& r : table.rules) {
        whole += fits_whole(r.context);
        initial += fits_initial(r.context);
        medial += fits_medial(r.context);
        final += fits_final(r.context);
    }
    std::uint64_t total = whole;
    std::uint64_t mid_product = 1;
    for (std::size_t k = 2; k <= max_length; ++k) {
        total += initial * mid_product * final;
        mid_product *= medial;
    }
    return total;
}

struct Enumerator {
    const MappingTable& table;
    const Engine& forward;
    const Engine& backward;
    std::size_t max_length;
    const ProgressFn& progress;
    std::uint64_t total;
    RoundTripReport report;

    void test(const std::string& word) {
        ++report.strings_tested;
        auto [ajami, fwd_report] = forward.transliterate(word, MatchMode::Lenient);
        auto [back, back_report] = backward.transliterate(ajami, MatchMode::Lenient);
        if (back != word)
            report.failures.push_back({word, ajami, back});
        if (progress && (report.strings_tested & 0xFFFF) == 0)
            progress(report.strings_tested, total);
    }

    void extend(std::size_t position, const std::string& prefix) {
        for (const Rule& r : table.rules) {
            bool terminal_ok = position == 1 ? fits_whole(r.context)
                                             : fits_final(r.context);
            bool continuing_ok = position == 1 ? fits_initial(r.context)
                                               : fits_medial(r.context);
            if (!terminal_ok && !continuing_ok)
                continue;
            std::string word = prefix + r.source;
            if (terminal_ok)
                test(word);
            if (continuing_ok && position < max_length)
                extend(position + 1, word);
        }
    }
};

} // namespace

RoundTripReport check_round_trip(const MappingTable& table, std::size_t max_length,
                                 const ProgressFn& progress) {
    if (!table.validated)
        throw ContractError("check_round_trip requires a validated table");
    if (max_length < 1)
        throw ContractError("check_round_trip requires max_length >= 1");

    RoundTripReport report;
    report.max_length = max_length;
    if (table.rules.empty())
        return report;

    Engine forward(table, Direction::LatinToAjami);
    Engine backward(table, Direction::AjamiToLatin);
    Enumerator e{table,    forward,
                 backward, max_length,
                 progress, total_sequences(table, max_length),
                 {}};
    e.report.max_length = max_length;
    e.extend(1, std::string());
    e.report.passed = e.report.failures.empty();
    if (progress)
        progress(e.report.strings_tested, e.total);
    return e.report;
}

} // namespace digraphe
