#include "digraphe/formats.hpp"

#include "digraphe/errors.hpp"
#include "digraphe/unicode.hpp"

#include <algorithm>
#include <cctype>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

namespace digraphe {

namespace {

void aggregate(TransliterationReport& total, const TransliterationReport& part,
               std::size_t offset_base) {
    total.chars_in += part.chars_in;
    total.chars_out += part.chars_out;
    total.tokens_mapped += part.tokens_mapped;
    total.tokens_passthrough += part.tokens_passthrough;
    for (const UnknownOccurrence& u : part.unknown)
        total.unknown.push_back({u.scalar, offset_base + u.offset});
}

std::string read_all(std::istream& in) {
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad())
        throw IoError("failed to read input stream");
    return buf.str();
}

} // namespace

TransliterationReport transliterate_text_stream(std::istream& in, std::ostream& out,
                                                const Engine& engine, MatchMode mode) {
    std::string all = read_all(in);
    TransliterationReport report;
    report.direction = engine.direction();
    report.language = engine.table().language;
    report.mode = mode;

    std::size_t line_no = 0;
    std::size_t norm_offset = 0; // byte offset in the normalized document
    std::string_view rest = all;
    while (!rest.empty() || line_no == 0) {
        std::size_t nl = rest.find('\n');
        std::string_view line = rest.substr(0, nl);
        bool has_newline = nl != std::string_view::npos;
        rest = has_newline ? rest.substr(nl + 1) : std::string_view{};
        ++line_no;
        if (line.empty() && !has_newline && all.empty())
            break; // wholly empty input

        try {
            auto [converted, part] = engine.transliterate(line, mode);
            out << converted;
            aggregate(report, part, norm_offset);
        } catch (UnknownCharacterError& e) {
            std::string norm = uni::nfc(line);
            uni::DecodedText dec = uni::decode_utf8(norm);
            std::size_t column = 1;
            for (std::size_t i = 0; i < dec.scalars.size(); ++i)
                if (dec.offsets[i] == e.offset) {
                    column = i + 1;
                    break;
                }
            UnknownCharacterError with_pos(e.scalar, norm_offset + e.offset);
            with_pos.line = line_no;
            with_pos.column = column;
            throw with_pos;
        }
        norm_offset += uni::nfc(line).size();
        if (has_newline) {
            out << '\n';
            ++norm_offset;
        }
        if (!has_newline)
            break;
    }
    if (out.bad())
        throw IoError("failed to write output stream");
    return report;
}

TransliterationReport transliterate_text_stream(std::istream& in, std::ostream& out,
                                                const MappingTable& table,
                                                Direction direction, MatchMode mode) {
    Engine engine(table, direction);
    return transliterate_text_stream(in, out, engine, mode);
}

std::pair<std::string, TransliterationReport>
transliterate_text(std::string_view text, const Engine& engine, MatchMode mode) {
    std::istringstream in{std::string(text)};
    std::ostringstream out;
    TransliterationReport report = transliterate_text_stream(in, out, engine, mode);
    return {out.str(), report};
}

// ---------------------------------------------------------------------------
// HTML
// ---------------------------------------------------------------------------

namespace {

bool ascii_alpha(char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
}

char ascii_lower(char c) {
    return c >= 'A' && c <= 'Z' ? static_cast<char>(c - 'A' + 'a') : c;
}

std::string lower_copy(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(), ascii_lower);
    return out;
}

// An entity whose decoded character is a delimiter: re-emitted with its
// original spelling after conversion, matched by occurrence ordinal.
struct TrackedEntity {
    char32_t ch;
    std::size_t ordinal;
    std::string spelling;
};

struct EntityParse {
    std::size_t length = 0; // bytes consumed, 0 = not an entity
    bool known = false;
    char32_t ch = 0;
};

EntityParse parse_entity(std::string_view s) {
    // s starts at '&'.
    static const std::pair<std::string_view, char32_t> named[] = {
        {"&amp;", U'&'}, {"&lt;", U'<'}, {"&gt;", U'>'},
        {"&quot;", U'"'}, {"&apos;", U'\''}};
    for (auto [spelling, ch] : named)
        if (s.starts_with(spelling))
            return {spelling.size(), true, ch};

    if (s.size() > 2 && s[1] == '#') {
        bool hex = s[2] == 'x' || s[2] == 'X';
        std::size_t i = hex ? 3 : 2;
        char32_t value = 0;
        std::size_t digits = 0;
        while (i < s.size() && digits < 8) {
            char c = s[i];
            int v;
            if (c >= '0' && c <= '9') v = c - '0';
            else if (hex && c >= 'a' && c <= 'f') v = c - 'a' + 10;
            else if (hex && c >= 'A' && c <= 'F') v = c - 'A' + 10;
            else break;
            value = value * (hex ? 16 : 10) + static_cast<char32_t>(v);
            ++i;
            ++digits;
        }
        if (digits > 0 && i < s.size() && s[i] == ';' && value > 0 &&
            value <= 0x10FFFF && !(value >= 0xD800 && value <= 0xDFFF))
            return {i + 1, true, value};
        return {};
    }

    // Unrecognized named entity: protected, copied through verbatim.
    if (s.size() > 1 && ascii_alpha(s[1])) {
        std::size_t i = 1;
        while (i < s.size() && (ascii_alpha(s[i]) || (s[i] >= '0' && s[i] <= '9')))
            ++i;
        if (i < s.size() && s[i] == ';')
            return {i + 1, false, 0};
    }
    return {};
}

class HtmlConverter {
public:
    HtmlConverter(const Engine& engine, MatchMode mode, const HtmlOptions& options,
                  std::string_view doc, std::string& out)
        : engine_(engine), mode_(mode), options_(options), doc_(doc), out_(out) {
        report_.direction = engine.direction();
        report_.language = engine.table().language;
        report_.mode = mode;
    }

    TransliterationReport run();

private:
    void flush_text(std::size_t chunk_offset);
    void process_text_run(std::string_view raw, std::size_t doc_offset);
    std::size_t handle_tag(std::size_t lt);
    std::string restore_entities(std::string_view converted,
                                 const std::vector<TrackedEntity>& tracked) const;
    void emit_tag(std::string_view tag_bytes, std::string_view name, bool is_start);

    const Engine& engine_;
    MatchMode mode_;
    const HtmlOptions& options_;
    std::string_view doc_;
    std::string& out_;
    TransliterationReport report_;

    std::string decoded_;                  // pending text-node content
    std::vector<TrackedEntity> tracked_;   // entities awaiting restoration
    std::map<char32_t, std::size_t> seen_; // decoded occurrences per scalar
    bool dir_injected_ = false;
};

void HtmlConverter::process_text_run(std::string_view raw, std::size_t doc_offset) {
    std::size_t i = 0;
    while (i < raw.size()) {
        if (raw[i] != '&') {
            std::size_t amp = raw.find('&', i);
            std::size_t end = amp == std::string_view::npos ? raw.size() : amp;
            std::string_view plain = raw.substr(i, end - i);
            decoded_ += plain;
            for (char32_t c : uni::decode_utf8(std::string(plain)).scalars)
                ++seen_[c];
            i = end;
            continue;
        }
        EntityParse ent = parse_entity(raw.substr(i));
        if (ent.length == 0) {
            decoded_ += '&';
            ++seen_[U'&'];
            ++i;
            continue;
        }
        if (!ent.known) {
            // Unknown named entity: convert what came before it, then copy it.
            flush_text(doc_offset);
            out_.append(raw.substr(i, ent.length));
            i += ent.length;
            continue;
        }
        if (engine_.table().delimiters.contains(ent.ch))
            tracked_.push_back(
                {ent.ch, seen_[ent.ch], std::string(raw.substr(i, ent.length))});
        decoded_ += uni::encode_utf8(ent.ch);
        ++seen_[ent.ch];
        i += ent.length;
    }
}

std::string
HtmlConverter::restore_entities(std::string_view converted,
                                const std::vector<TrackedEntity>& tracked) const {
    if (tracked.empty())
        return std::string(converted);
    std::map<char32_t, std::map<std::size_t, const TrackedEntity*>> by_scalar;
    for (const TrackedEntity& t : tracked)
        by_scalar[t.ch][t.ordinal] = &t;

    uni::DecodedText dec = uni::decode_utf8(std::string(converted));
    std::string out;
    out.reserve(converted.size());
    std::map<char32_t, std::size_t> counts;
    for (std::size_t i = 0; i < dec.scalars.size(); ++i) {
        char32_t c = dec.scalars[i];
        auto scalar_it = by_scalar.find(c);
        if (scalar_it != by_scalar.end()) {
            std::size_t ordinal = counts[c]++;
            auto ent_it = scalar_it->second.find(ordinal);
            if (ent_it != scalar_it->second.end()) {
                out += ent_it->second->spelling;
                continue;
            }
        }
        out.append(converted.substr(dec.offsets[i], dec.offsets[i + 1] - dec.offsets[i]));
    }
    return out;
}

void HtmlConverter::flush_text(std::size_t chunk_offset) {
    if (decoded_.empty()) {
        tracked_.clear();
        seen_.clear();
        return;
    }
    try {
        auto [converted, part] = engine_.transliterate(decoded_, mode_);
        out_ += restore_entities(converted, tracked_);
        aggregate(report_, part, chunk_offset);
    } catch (UnknownCharacterError& e) {
        throw UnknownCharacterError(e.scalar, chunk_offset + e.offset);
    }
    decoded_.clear();
    tracked_.clear();
    seen_.clear();
}

void HtmlConverter::emit_tag(std::string_view tag_bytes, std::string_view name,
                             bool is_start) {
    if (!is_start || dir_injected_ || !options_.set_dir_attribute || name.empty()) {
        out_.append(tag_bytes);
        return;
    }
    dir_injected_ = true;
    const char* value =
        engine_.direction() == Direction::LatinToAjami ? "rtl" : "ltr";

    // Replace an existing dir attribute, or insert one before the closing '>'.
    std::size_t i = 1 + name.size();
    char quote = 0;
    while (i < tag_bytes.size()) {
        char c = tag_bytes[i];
        if (quote) {
            if (c == quote) quote = 0;
            ++i;
            continue;
        }
        if (c == '"' || c == '\'') {
            quote = c;
            ++i;
            continue;
        }
        if (std::isspace(static_cast<unsigned char>(c))) {
            std::size_t name_start = i + 1;
            std::size_t j = name_start;
            while (j < tag_bytes.size() && !std::isspace(static_cast<unsigned char>(tag_bytes[j])) &&
                   tag_bytes[j] != '=' && tag_bytes[j] != '>' && tag_bytes[j] != '/')
                ++j;
            if (lower_copy(tag_bytes.substr(name_start, j - name_start)) == "dir") {
                // Attribute value span, if any.
                std::size_t k = j;
                while (k < tag_bytes.size() && std::isspace(static_cast<unsigned char>(tag_bytes[k])))
                    ++k;
                std::size_t value_end = j;
                if (k < tag_bytes.size() && tag_bytes[k] == '=') {
                    ++k;
                    while (k < tag_bytes.size() && std::isspace(static_cast<unsigned char>(tag_bytes[k])))
                        ++k;
                    if (k < tag_bytes.size() && (tag_bytes[k] == '"' || tag_bytes[k] == '\'')) {
                        char q = tag_bytes[k];
                        std::size_t close = tag_bytes.find(q, k + 1);
                        value_end = close == std::string_view::npos ? tag_bytes.size()
                                                                    : close + 1;
                    } else {
                        value_end = k;
                        while (value_end < tag_bytes.size() &&
                               !std::isspace(static_cast<unsigned char>(tag_bytes[value_end])) &&
                               tag_bytes[value_end] != '>' && tag_bytes[value_end] != '/')
                            ++value_end;
                    }
                }
                out_.append(tag_bytes.substr(0, name_start));
                out_ += "dir=\"";
                out_ += value;
                out_ += "\"";
                out_.append(tag_bytes.substr(value_end));
                return;
            }
            i = j;
            continue;
        }
        ++i;
    }
    // No dir attribute present: insert before '>' or '/>'.
    std::size_t insert_at = tag_bytes.size();
    if (tag_bytes.ends_with("/>"))
        insert_at = tag_bytes.size() - 2;
    else if (tag_bytes.ends_with(">"))
        insert_at = tag_bytes.size() - 1;
    out_.append(tag_bytes.substr(0, insert_at));
    out_ += " dir=\"";
    out_ += value;
    out_ += "\"";
    out_.append(tag_bytes.substr(insert_at));
}

std::size_t HtmlConverter::handle_tag(std::size_t lt) {
    std::string_view rest = doc_.substr(lt);

    if (rest.starts_with("<!--")) {
        std::size_t end = doc_.find("-->", lt + 4);
        std::size_t stop = end == std::string::npos ? doc_.size() : end + 3;
        out_.append(doc_.substr(lt, stop - lt));
        return stop;
    }
    if (rest.starts_with("<![CDATA[")) {
        std::size_t end = doc_.find("]]>", lt + 9);
        std::size_t stop = end == std::string::npos ? doc_.size() : end + 3;
        out_.append(doc_.substr(lt, stop - lt));
        return stop;
    }
    if (rest.starts_with("<!") || rest.starts_with("<?")) {
        std::size_t end = doc_.find('>', lt + 2);
        std::size_t stop = end == std::string::npos ? doc_.size() : end + 1;
        out_.append(doc_.substr(lt, stop - lt));
        return stop;
    }

    bool closing = rest.size() > 1 && rest[1] == '/';
    std::size_t name_start = lt + (closing ? 2 : 1);
    std::size_t name_end = name_start;
    while (name_end < doc_.size() &&
           (ascii_alpha(doc_[name_end]) || (doc_[name_end] >= '0' && doc_[name_end] <= '9') ||
            doc_[name_end] == '-'))
        ++name_end;
    std::string name = lower_copy(doc_.substr(name_start, name_end - name_start));

    // Scan to the closing '>' honoring quoted attribute values.
    std::size_t i = name_end;
    char quote = 0;
    while (i < doc_.size()) {
        char c = doc_[i];
        if (quote) {
            if (c == quote) quote = 0;
        } else if (c == '"' || c == '\'') {
            quote = c;
        } else if (c == '>') {
            break;
        }
        ++i;
    }
    std::size_t tag_end = i < doc_.size() ? i + 1 : doc_.size();
    std::string_view tag_bytes = doc_.substr(lt, tag_end - lt);
    bool self_closing = tag_bytes.size() >= 2 && tag_bytes[tag_bytes.size() - 2] == '/';

    emit_tag(tag_bytes, closing ? std::string_view{} : std::string_view(name),
             !closing);

    if (!closing && !self_closing && options_.skip_elements.contains(name)) {
        // Raw content: emit verbatim until the matching close tag, which then
        // goes through handle_tag like any other tag.
        std::string close = "</" + name;
        std::size_t stop = doc_.size();
        for (std::size_t k = tag_end; k + close.size() <= doc_.size(); ++k) {
            if (doc_[k] != '<' || doc_[k + 1] != '/')
                continue;
            if (lower_copy(doc_.substr(k, close.size())) != close)
                continue;
            char after = k + close.size() < doc_.size() ? doc_[k + close.size()] : '>';
            if (after == '>' || after == ' ' || after == '\t' || after == '\n' ||
                after == '\r' || after == '/') {
                stop = k;
                break;
            }
        }
        out_.append(doc_.substr(tag_end, stop - tag_end));
        return stop;
    }
    return tag_end;
}

TransliterationReport HtmlConverter::run() {
    std::size_t i = 0;
    std::size_t text_start = 0;
    while (i < doc_.size()) {
        char c = doc_[i];
        if (c != '<') {
            ++i;
            continue;
        }
        bool is_markup =
            i + 1 < doc_.size() &&
            (ascii_alpha(doc_[i + 1]) || doc_[i + 1] == '/' || doc_[i + 1] == '!' ||
             doc_[i + 1] == '?');
        if (!is_markup) { // literal '<' in text
            ++i;
            continue;
        }
        process_text_run(doc_.substr(text_start, i - text_start), text_start);
        flush_text(text_start);
        i = handle_tag(i);
        text_start = i;
    }
    process_text_run(doc_.substr(text_start), text_start);
    flush_text(text_start);
    return report_;
}

} // namespace

TransliterationReport transliterate_html(std::istream& in, std::ostream& out,
                                         const Engine& engine, MatchMode mode,
                                         const HtmlOptions& options) {
    std::string doc = read_all(in);
    uni::decode_utf8(doc); // reject non-UTF-8 input with a byte offset
    std::string converted;
    converted.reserve(doc.size() + doc.size() / 4);
    HtmlConverter conv(engine, mode, options, doc, converted);
    TransliterationReport report = conv.run();
    out << converted;
    if (out.bad())
        throw IoError("failed to write output stream");
    return report;
}

TransliterationReport transliterate_html(std::istream& in, std::ostream& out,
                                         const MappingTable& table, Direction direction,
                                         MatchMode mode, const HtmlOptions& options) {
    Engine engine(table, direction);
    return transliterate_html(in, out, engine, mode, options);
}

std::pair<std::string, TransliterationReport>
transliterate_html(std::string_view html, const Engine& engine, MatchMode mode,
                   const HtmlOptions& options) {
    std::istringstream in{std::string(html)};
    std::ostringstream out;
    TransliterationReport report = transliterate_html(in, out, engine, mode, options);
    return {out.str(), report};
}

} // namespace digraphe
