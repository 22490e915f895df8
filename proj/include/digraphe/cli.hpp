#ifndef DIGRAPHE_CLI_HPP
#define DIGRAPHE_CLI_HPP

#include "digraphe/formats.hpp"
#include "digraphe/transducer.hpp"

#include <iosfwd>
#include <optional>
#include <string>

namespace digraphe::cli {

enum class Command { Convert, Validate, RoundTrip };
enum class Format { Text, Html };

struct CliConfig {
    Command command = Command::Convert;
    std::optional<Direction> direction; // required for convert
    std::string table_path;             // searched via DIGRAPHE_TABLE_DIR
    Format format = Format::Text;
    MatchMode mode = MatchMode::Lenient;
    std::string input_path;  // empty = standard input
    std::string output_path; // empty = standard output
    std::string report_path; // optional JSON report
    HtmlOptions html;
    std::size_t max_length = 4; // roundtrip only
    bool show_progress = false;
};

/// Exit statuses shared by run and run_cli.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1; // conversion/validation/round-trip failure
inline constexpr int kExitUsage = 2;
inline constexpr int kExitIo = 3;

/// Executes one command. Converted content goes to `out` (or the configured
/// output file); everything else goes to `err`.
int run(const CliConfig& config, std::istream& in, std::ostream& out,
        std::ostream& err);

/// Parses argv and runs. Returns a process exit status.
int run_cli(int argc, const char* const* argv, std::istream& in, std::ostream& out,
            std::ostream& err);

} // namespace digraphe::cli

#endif
