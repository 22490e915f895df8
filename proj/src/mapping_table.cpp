#include "digraphe/mapping_table.hpp"

#include "digraphe/errors.hpp"
#include "digraphe/segmenter.hpp"
#include "digraphe/trie.hpp"
#include "digraphe/unicode.hpp"
#include "digraphe/verifier.hpp"

#include <unicode/normalizer2.h>
#include <unicode/uchar.h>

#include <algorithm>
#include <cstdio>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <utility>

namespace digraphe {

const char* to_string(Context c) {
    switch (c) {
    case Context::Any: return "any";
    case Context::Initial: return "initial";
    case Context::Medial: return "medial";
    case Context::Final: return "final";
    case Context::Isolated: return "isolated";
    }
    return "any";
}

bool DelimiterSet::contains(char32_t c) const {
    if (uni::is_whitespace(c) || uni::is_ascii_punct(c) || uni::is_decimal_digit(c))
        return true;
    // Arabic comma, semicolon, question mark; BOM passes through untouched.
    if (c == U'،' || c == U'؛' || c == U'؟' || c == U'﻿')
        return true;
    return extra_.contains(c);
}

namespace {

std::optional<Context> parse_context(std::string_view word) {
    if (word == "any") return Context::Any;
    if (word == "initial") return Context::Initial;
    if (word == "medial") return Context::Medial;
    if (word == "final") return Context::Final;
    if (word == "isolated") return Context::Isolated;
    return std::nullopt;
}

int hex_value(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
}

// Decodes \uXXXX, \t, \\ and \# in a raw field.
std::string unescape(std::string_view field, std::size_t line) {
    std::string out;
    out.reserve(field.size());
    for (std::size_t i = 0; i < field.size(); ++i) {
        char c = field[i];
        if (c != '\\') {
            out.push_back(c);
            continue;
        }
        if (i + 1 >= field.size())
            throw ParseError("dangling backslash", line);
        char esc = field[++i];
        switch (esc) {
        case 't': out.push_back('\t'); break;
        case '\\': out.push_back('\\'); break;
        case '#': out.push_back('#'); break;
        case 'u': {
            if (i + 4 >= field.size())
                throw ParseError("\\u escape needs four hex digits", line);
            char32_t cp = 0;
            for (int k = 0; k < 4; ++k) {
                int v = hex_value(field[i + 1 + static_cast<std::size_t>(k)]);
                if (v < 0)
                    throw ParseError("\\u escape needs four hex digits", line);
                cp = cp * 16 + static_cast<char32_t>(v);
            }
            if (cp >= 0xD800 && cp <= 0xDFFF)
                throw ParseError("\\u escape is a surrogate, not a scalar value", line);
            i += 4;
            out += uni::encode_utf8(cp);
            break;
        }
        default:
            throw ParseError(std::string("invalid escape \\") + esc, line);
        }
    }
    return out;
}

std::string escape_field(std::string_view value) {
    uni::DecodedText dec = uni::decode_utf8(value);
    std::string out;
    bool first = true;
    for (char32_t c : dec.scalars) {
        bool as_hex = c < 0x20 || c == 0x7F ||
                      (first && (uni::combining_class(c) > 0 || c == U'#'));
        if (c == U'\t' || as_hex) {
            if (c == U'\t') {
                out += "\\t";
            } else if (first && c == U'#') {
                out += "\\#";
            } else if (c <= 0xFFFF) {
                char buf[8];
                std::snprintf(buf, sizeof(buf), "\\u%04X", static_cast<unsigned>(c));
                out += buf;
            } else {
                out += uni::encode_utf8(c);
            }
        } else if (c == U'\\') {
            out += "\\\\";
        } else {
            out += uni::encode_utf8(c);
        }
        first = false;
    }
    return out;
}

bool blank_line(std::string_view line) {
    return line.find_first_not_of(" \t") == std::string_view::npos;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return s;
}

void apply_directive(MappingTable& table, std::string_view body, std::size_t line) {
    std::size_t sp = body.find_first_of(" \t");
    std::string key(sp == std::string_view::npos ? body : body.substr(0, sp));
    std::string value;
    if (sp != std::string_view::npos)
        value = unescape(trim(body.substr(sp + 1)), line);
    if (key.empty())
        throw ParseError("directive has no name", line);
    if (key == "language") {
        table.language = value;
    } else if (key == "version") {
        table.version = value;
    } else if (key == "delimiters") {
        for (char32_t c : uni::decode_utf8(value).scalars)
            table.delimiters.add(c);
    }
    table.metadata[key] = value;
}

} // namespace

MappingTable parse_table(std::string_view raw) {
    uni::decode_utf8(raw); // reject non-UTF-8 up front, with a byte offset
    if (raw.starts_with("\xEF\xBB\xBF"))
        raw.remove_prefix(3);

    MappingTable table;
    std::size_t line_no = 0;
    while (!raw.empty() || line_no == 0) {
        std::size_t nl = raw.find('\n');
        std::string_view line = raw.substr(0, nl);
        raw = nl == std::string_view::npos ? std::string_view{} : raw.substr(nl + 1);
        ++line_no;
        if (line.ends_with('\r'))
            line.remove_suffix(1);
        if (blank_line(line) || line.front() == '#')
            continue;
        if (line.front() == '@') {
            apply_directive(table, line.substr(1), line_no);
            continue;
        }

        std::vector<std::string_view> fields;
        std::string_view rest = line;
        while (true) {
            std::size_t tab = rest.find('\t');
            fields.push_back(rest.substr(0, tab));
            if (tab == std::string_view::npos) break;
            rest = rest.substr(tab + 1);
        }
        if (fields.size() < 3 || fields.size() > 4)
            throw ParseError("expected 3 or 4 TAB-separated fields, got " +
                                 std::to_string(fields.size()),
                             line_no);

        Rule rule;
        rule.line = line_no;
        rule.source = uni::nfc(unescape(fields[0], line_no));
        rule.target = uni::nfc(unescape(fields[1], line_no));
        if (rule.source.empty())
            throw ParseError("empty source", line_no);
        if (rule.target.empty())
            throw ParseError("empty target", line_no);

        auto ctx = parse_context(trim(fields[2]));
        if (!ctx)
            throw ParseError("unknown context keyword '" + std::string(trim(fields[2])) +
                                 "'",
                             line_no);
        rule.context = *ctx;

        if (fields.size() == 4) {
            std::string_view p = trim(fields[3]);
            if (p.empty() || p.find_first_not_of("0123456789") != std::string_view::npos)
                throw ParseError("priority must be a non-negative integer", line_no);
            std::uint64_t v = 0;
            for (char c : p) {
                v = v * 10 + static_cast<std::uint64_t>(c - '0');
                if (v > 0xFFFFFFFFull)
                    throw ParseError("priority out of range", line_no);
            }
            rule.priority = static_cast<std::uint32_t>(v);
        }
        table.rules.push_back(std::move(rule));
    }
    return table;
}

std::string serialize_table(const MappingTable& table) {
    std::ostringstream out;
    if (!table.language.empty())
        out << "@language " << escape_field(table.language) << "\n";
    if (!table.version.empty())
        out << "@version " << escape_field(table.version) << "\n";
    if (!table.delimiters.extra().empty()) {
        std::u32string extra(table.delimiters.extra().begin(),
                             table.delimiters.extra().end());
        out << "@delimiters " << escape_field(uni::encode_utf8(extra)) << "\n";
    }
    for (const auto& [key, value] : table.metadata) {
        if (key == "language" || key == "version" || key == "delimiters")
            continue;
        out << "@" << key << " " << escape_field(value) << "\n";
    }
    for (const Rule& r : table.rules) {
        out << escape_field(r.source) << "\t" << escape_field(r.target) << "\t"
            << to_string(r.context);
        if (r.priority != 0)
            out << "\t" << r.priority;
        out << "\n";
    }
    return out.str();
}

namespace {

void check_delimiter_free(const MappingTable& table, ValidationReport& report) {
    for (const Rule& r : table.rules) {
        for (char32_t c : uni::decode_utf8(r.source).scalars) {
            if (table.delimiters.contains(c)) {
                report.errors.push_back({"SOURCE_HAS_DELIMITER",
                                         "source '" + r.source +
                                             "' contains a word-delimiter character",
                                         r.line});
                break;
            }
        }
        for (char32_t c : uni::decode_utf8(r.target).scalars) {
            if (table.delimiters.contains(c)) {
                report.errors.push_back({"TARGET_HAS_DELIMITER",
                                         "target of '" + r.source +
                                             "' contains a word-delimiter character",
                                         r.line});
                break;
            }
        }
    }
}

void check_duplicates(const MappingTable& table, ValidationReport& report) {
    std::map<std::pair<std::string, Context>, std::size_t> by_source, by_target;
    for (const Rule& r : table.rules) {
        auto [s_it, s_new] = by_source.try_emplace({r.source, r.context}, r.line);
        if (!s_new)
            report.errors.push_back(
                {"DUPLICATE_SOURCE",
                 "source '" + r.source + "' with context " + to_string(r.context) +
                     " already defined at line " + std::to_string(s_it->second),
                 r.line});
        auto [t_it, t_new] = by_target.try_emplace({r.target, r.context}, r.line);
        if (!t_new)
            report.errors.push_back(
                {"TARGET_COLLISION",
                 "target '" + r.target + "' with context " + to_string(r.context) +
                     " already produced by the rule at line " +
                     std::to_string(t_it->second),
                 r.line});
    }
}

// A mark run stays put under NFC iff its combining classes never descend and
// no canonical composition fires across the seam. Both outputs of a rule pair
// that can be adjacent inside a word are checked.
void check_concatenation_stability(const MappingTable& table, ValidationReport& report) {
    UErrorCode ec = U_ZERO_ERROR;
    const icu::Normalizer2* nfc = icu::Normalizer2::getNFCInstance(ec);
    if (U_FAILURE(ec))
        return;

    auto can_precede = [](Context c) {
        return c == Context::Any || c == Context::Initial || c == Context::Medial;
    };
    auto can_follow = [](Context c) {
        return c == Context::Any || c == Context::Medial || c == Context::Final;
    };

    for (int side = 0; side < 2; ++side) {
        for (const Rule& a : table.rules) {
            if (!can_precede(a.context)) continue;
            const std::string& out_a = side == 0 ? a.target : a.source;
            char32_t last = uni::decode_utf8(out_a).scalars.back();
            for (const Rule& b : table.rules) {
                if (!can_follow(b.context)) continue;
                const std::string& out_b = side == 0 ? b.target : b.source;
                char32_t first = uni::decode_utf8(out_b).scalars.front();
                unsigned cc_last = uni::combining_class(last);
                unsigned cc_first = uni::combining_class(first);
                bool reorders = cc_last > 0 && cc_first > 0 && cc_last > cc_first;
                bool composes = nfc->composePair(static_cast<UChar32>(last),
                                                 static_cast<UChar32>(first)) >= 0;
                if (reorders || composes) {
                    report.warnings.push_back(
                        {"UNSTABLE_CONCATENATION",
                         std::string(side == 0 ? "targets" : "sources") + " of '" +
                             a.source + "' (line " + std::to_string(a.line) +
                             ") and '" + b.source +
                             "' do not concatenate to a normalization-stable "
                             "string",
                         b.line});
                }
            }
        }
    }
}

// Flags multi-grapheme rules whose target is exactly what the rest of the
// table already produces for their source.
void check_redundant_rules(const MappingTable& table, ValidationReport& report) {
    for (std::size_t i = 0; i < table.rules.size(); ++i) {
        const Rule& r = table.rules[i];
        if (uni::decode_utf8(r.source).scalars.size() < 2)
            continue;
        MappingTable rest;
        rest.delimiters = table.delimiters;
        for (std::size_t j = 0; j < table.rules.size(); ++j)
            if (j != i)
                rest.rules.push_back(table.rules[j]);
        if (rest.rules.empty())
            continue;
        rest.validated = true; // removal cannot introduce duplicates
        GraphemeTrie trie = build_trie(rest, TrieDirection::Forward);
        std::vector<Token> tokens =
            segment(r.source, trie, rest.delimiters, MatchMode::Lenient);
        std::string composite;
        bool complete = true;
        for (const Token& t : tokens) {
            if (t.kind != Token::Kind::Mapped) {
                complete = false;
                break;
            }
            composite += t.rule->target;
        }
        if (complete && composite == r.target)
            report.warnings.push_back(
                {"REDUNDANT_RULE",
                 "rule '" + r.source +
                     "' duplicates the output of the shorter rules it extends",
                 r.line});
    }
}

} // namespace

ValidationReport validate_table(MappingTable& table) {
    ValidationReport report;
    // Parsed tables cannot hold empty fields; hand-built ones might.
    for (const Rule& r : table.rules)
        if (r.source.empty() || r.target.empty())
            report.errors.push_back(
                {"EMPTY_FIELD", "rule has an empty source or target", r.line});
    if (!report.errors.empty()) {
        table.validated = false;
        return report;
    }
    check_delimiter_free(table, report);
    check_duplicates(table, report);

    std::set<std::u32string> sources, targets;
    for (const Rule& r : table.rules) {
        sources.insert(uni::decode_utf8(r.source).scalars);
        targets.insert(uni::decode_utf8(r.target).scalars);
    }
    report.decodable_forward = targets.empty() || sardinas_patterson(targets);
    report.decodable_reverse = sources.empty() || sardinas_patterson(sources);

    if (report.errors.empty()) {
        check_concatenation_stability(table, report);
        check_redundant_rules(table, report);
    }

    table.validated = report.errors.empty();
    return report;
}

MappingTable invert(const MappingTable& table) {
    std::set<std::pair<std::string, Context>> seen;
    for (const Rule& r : table.rules)
        if (!seen.insert({r.target, r.context}).second)
            throw ContractError(
                "table has a (target, context) collision and cannot be inverted "
                "(target '" +
                r.target + "', line " + std::to_string(r.line) + ")");

    MappingTable out;
    out.language = table.language;
    out.version = table.version;
    out.delimiters = table.delimiters;
    out.metadata = table.metadata;
    out.validated = table.validated;
    out.rules.reserve(table.rules.size());
    for (const Rule& r : table.rules)
        out.rules.push_back({r.target, r.source, r.context, r.priority, r.line});
    return out;
}

} // namespace digraphe
