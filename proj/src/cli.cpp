#include "digraphe/cli.hpp"

#include "digraphe/errors.hpp"
#include "digraphe/unicode.hpp"
#include "digraphe/verifier.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace digraphe::cli {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

std::optional<fs::path> resolve_table_path(const std::string& path) {
    if (fs::exists(path))
        return fs::path(path);
    if (!fs::path(path).is_absolute()) {
        if (const char* dir = std::getenv("DIGRAPHE_TABLE_DIR")) {
            fs::path base(dir);
            if (fs::exists(base / path))
                return base / path;
            fs::path with_ext = base / (path + ".tbl");
            if (fs::exists(with_ext))
                return with_ext;
        }
    }
    return std::nullopt;
}

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("cannot open '" + path.string() + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad())
        throw IoError("cannot read '" + path.string() + "'");
    return buf.str();
}

json to_json(const TransliterationReport& r) {
    json unknown = json::array();
    for (const UnknownOccurrence& u : r.unknown)
        unknown.push_back({{"char", uni::encode_utf8(u.scalar)}, {"offset", u.offset}});
    return json{{"direction", to_string(r.direction)},
                {"language", r.language},
                {"mode", r.mode == MatchMode::Strict ? "strict" : "lenient"},
                {"chars_in", r.chars_in},
                {"chars_out", r.chars_out},
                {"tokens_mapped", r.tokens_mapped},
                {"tokens_passthrough", r.tokens_passthrough},
                {"unknown", unknown}};
}

json to_json(const ValidationReport& r) {
    auto issues = [](const std::vector<ValidationIssue>& v) {
        json arr = json::array();
        for (const ValidationIssue& i : v)
            arr.push_back({{"code", i.code}, {"message", i.message}, {"line", i.line}});
        return arr;
    };
    return json{{"errors", issues(r.errors)},
                {"warnings", issues(r.warnings)},
                {"decodable_forward", r.decodable_forward},
                {"decodable_reverse", r.decodable_reverse}};
}

json to_json(const RoundTripReport& r) {
    json failures = json::array();
    for (const RoundTripFailure& f : r.failures)
        failures.push_back({{"input", f.input},
                            {"forward_output", f.forward_output},
                            {"back_output", f.back_output}});
    return json{{"max_length", r.max_length},
                {"strings_tested", r.strings_tested},
                {"failures", failures},
                {"passed", r.passed}};
}

void write_report_file(const std::string& path, const json& j) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw IoError("cannot open report file '" + path + "'");
    out << j.dump(2) << "\n";
    if (!out)
        throw IoError("cannot write report file '" + path + "'");
}

MappingTable load_table(const CliConfig& config, std::ostream& err, int& status) {
    auto path = resolve_table_path(config.table_path);
    if (!path) {
        err << "error: table file '" << config.table_path << "' not found";
        if (const char* dir = std::getenv("DIGRAPHE_TABLE_DIR"))
            err << " (also searched " << dir << ")";
        err << "\n";
        status = kExitIo;
        return {};
    }
    MappingTable table = parse_table(read_file(*path));
    status = kExitOk;
    return table;
}

int run_convert(const CliConfig& config, MappingTable& table, std::istream& in,
                std::ostream& out, std::ostream& err) {
    ValidationReport validation = validate_table(table);
    if (!validation.accepted()) {
        err << "error: table rejected by validation:\n";
        for (const ValidationIssue& i : validation.errors)
            err << "  [" << i.code << "] line " << i.line << ": " << i.message << "\n";
        return kExitFailure;
    }
    if (!config.direction) {
        err << "error: convert requires --direction\n";
        return kExitUsage;
    }

    std::ifstream file_in;
    std::istream* src = &in;
    if (!config.input_path.empty()) {
        file_in.open(config.input_path, std::ios::binary);
        if (!file_in) {
            err << "error: cannot open input '" << config.input_path << "'\n";
            return kExitIo;
        }
        src = &file_in;
    }
    std::ofstream file_out;
    std::ostream* dst = &out;
    if (!config.output_path.empty()) {
        file_out.open(config.output_path, std::ios::binary);
        if (!file_out) {
            err << "error: cannot open output '" << config.output_path << "'\n";
            return kExitIo;
        }
        dst = &file_out;
    }

    Engine engine(table, *config.direction);
    TransliterationReport report;
    try {
        if (config.format == Format::Html)
            report = transliterate_html(*src, *dst, engine, config.mode, config.html);
        else
            report = transliterate_text_stream(*src, *dst, engine, config.mode);
    } catch (const UnknownCharacterError& e) {
        err << "error: " << e.what();
        if (e.line)
            err << " (line " << e.line << ", column " << e.column << ")";
        err << "\n";
        return kExitFailure;
    }
    dst->flush();
    if (!config.output_path.empty() && !file_out)
        throw IoError("cannot write output '" + config.output_path + "'");

    if (!config.report_path.empty())
        write_report_file(config.report_path, to_json(report));
    if (!report.unknown.empty())
        err << "warning: " << report.unknown.size()
            << " character(s) had no rule and passed through unchanged\n";
    return kExitOk;
}

int run_validate(const CliConfig& config, MappingTable& table, std::ostream& out,
                 std::ostream& err) {
    (void)err;
    ValidationReport report = validate_table(table);
    out << "table: " << (table.language.empty() ? "(no language)" : table.language);
    if (!table.version.empty())
        out << " " << table.version;
    out << ", " << table.rules.size() << " rules\n";
    for (const ValidationIssue& i : report.errors)
        out << "error [" << i.code << "] line " << i.line << ": " << i.message << "\n";
    for (const ValidationIssue& i : report.warnings)
        out << "warning [" << i.code << "] line " << i.line << ": " << i.message
            << "\n";
    out << "decodable forward:  " << (report.decodable_forward ? "yes" : "no") << "\n";
    out << "decodable reverse:  " << (report.decodable_reverse ? "yes" : "no") << "\n";
    out << (report.accepted() ? "table accepted\n" : "table rejected\n");
    if (!config.report_path.empty())
        write_report_file(config.report_path, to_json(report));
    return report.accepted() ? kExitOk : kExitFailure;
}

int run_roundtrip(const CliConfig& config, MappingTable& table, std::ostream& out,
                  std::ostream& err) {
    ValidationReport validation = validate_table(table);
    if (!validation.accepted()) {
        err << "error: table rejected by validation; run validate for details\n";
        return kExitFailure;
    }
    ProgressFn progress;
    if (config.show_progress)
        progress = [&err](std::uint64_t done, std::uint64_t total) {
            err << "\rround-trip: " << done << "/" << total << std::flush;
            if (done == total)
                err << "\n";
        };
    RoundTripReport report = check_round_trip(table, config.max_length, progress);
    out << "sequences tested: " << report.strings_tested << " (max length "
        << report.max_length << ")\n";
    if (!report.failures.empty()) {
        out << "failures: " << report.failures.size() << "\n";
        std::size_t shown = 0;
        for (const RoundTripFailure& f : report.failures) {
            if (++shown > 10) {
                out << "  ...\n";
                break;
            }
            out << "  '" << f.input << "' -> '" << f.forward_output << "' -> '"
                << f.back_output << "'\n";
        }
    }
    out << (report.passed ? "round trip: PASS\n" : "round trip: FAIL\n");
    if (!config.report_path.empty())
        write_report_file(config.report_path, to_json(report));
    return report.passed ? kExitOk : kExitFailure;
}

} // namespace

int run(const CliConfig& config, std::istream& in, std::ostream& out,
        std::ostream& err) {
    try {
        int status = kExitOk;
        MappingTable table = load_table(config, err, status);
        if (status != kExitOk)
            return status;
        switch (config.command) {
        case Command::Convert: return run_convert(config, table, in, out, err);
        case Command::Validate: return run_validate(config, table, out, err);
        case Command::RoundTrip: return run_roundtrip(config, table, out, err);
        }
        return kExitUsage;
    } catch (const ParseError& e) {
        err << "error: table parse failed: " << e.what() << "\n";
        return kExitFailure;
    } catch (const EncodingError& e) {
        err << "error: " << e.what() << "\n";
        return kExitFailure;
    } catch (const IoError& e) {
        err << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kExitFailure;
    }
}

int run_cli(int argc, const char* const* argv, std::istream& in, std::ostream& out,
            std::ostream& err) {
    CLI::App app{"Reversible Latin/Ajami transliteration for Senegal's local "
                 "languages"};
    app.require_subcommand(1);

    CliConfig config;
    std::string direction_str, format_str = "text", mode_str = "lenient";
    std::vector<std::string> skip_elements;

    auto add_table = [&config](CLI::App* cmd) {
        cmd->add_option("--table,-t", config.table_path,
                        "mapping table file (searched in DIGRAPHE_TABLE_DIR)")
            ->required();
    };

    CLI::App* convert = app.add_subcommand("convert", "transliterate a document");
    add_table(convert);
    convert->add_option("--direction,-d", direction_str, "latin-to-ajami | ajami-to-latin")
        ->required()
        ->check(CLI::IsMember({"latin-to-ajami", "ajami-to-latin"}));
    convert->add_option("--format,-f", format_str, "text | html")
        ->check(CLI::IsMember({"text", "html"}));
    convert->add_option("--mode,-m", mode_str, "strict | lenient")
        ->check(CLI::IsMember({"strict", "lenient"}));
    convert->add_option("--input,-i", config.input_path, "input file (default stdin)");
    convert->add_option("--output,-o", config.output_path,
                        "output file (default stdout)");
    convert->add_option("--report,-r", config.report_path, "write a JSON report here");
    convert->add_option("--html-skip", skip_elements,
                        "HTML elements left untouched (default: script style)");
    convert->add_flag("--html-set-dir", config.html.set_dir_attribute,
                      "set dir=\"rtl\"/\"ltr\" on the root element");

    CLI::App* validate = app.add_subcommand("validate", "check a mapping table");
    add_table(validate);
    validate->add_option("--report,-r", config.report_path, "write a JSON report here");

    CLI::App* roundtrip =
        app.add_subcommand("roundtrip", "verify retroconversion by enumeration");
    add_table(roundtrip);
    roundtrip->add_option("--max-length,-n", config.max_length,
                          "grapheme count bound (default 4)")
        ->check(CLI::PositiveNumber);
    roundtrip->add_option("--report,-r", config.report_path, "write a JSON report here");
    roundtrip->add_flag("--progress", config.show_progress, "report progress to stderr");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }

    if (convert->parsed()) {
        config.command = Command::Convert;
        config.direction = direction_str == "latin-to-ajami" ? Direction::LatinToAjami
                                                             : Direction::AjamiToLatin;
        config.format = format_str == "html" ? Format::Html : Format::Text;
        config.mode = mode_str == "strict" ? MatchMode::Strict : MatchMode::Lenient;
        if (!skip_elements.empty()) {
            config.html.skip_elements.clear();
            for (std::string& name : skip_elements) {
                for (char& c : name)
                    c = c >= 'A' && c <= 'Z' ? static_cast<char>(c - 'A' + 'a') : c;
                config.html.skip_elements.insert(name);
            }
        }
    } else if (validate->parsed()) {
        config.command = Command::Validate;
    } else {
        config.command = Command::RoundTrip;
    }
    return run(config, in, out, err);
}

} // namespace digraphe::cli
