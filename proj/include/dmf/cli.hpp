#pragma once

#include "dmf/error_vector.hpp"
#include "dmf/numeric.hpp"
#include "dmf/target.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace dmf::cli {

enum class Backend { Float, Rational };
enum class Format { Csv, Json, Dot };

enum class Action { Plan, Simulate, Enumerate, WorstCase, Classify, Sweep };

/// A validated invocation. parse_args throws UsageError naming the
/// offending flag; execute assumes the command is well formed.
struct Command {
    Action action{Action::Plan};
    std::optional<TargetCF> target;
    std::optional<std::string> plan_file;
    int accuracy{0};  // sweep only
    Epsilon epsilon;
    std::string vector_text;
    std::vector<int> positions;
    std::optional<std::string> tolerance_text;  // CF-scale decimal
    bool include_skip{false};
    bool force{false};
    Backend backend{Backend::Float};
    Format format{Format::Csv};
    std::optional<std::string> output_path;
    int threads{0};
};

struct UsageError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

Command parse_args(const std::vector<std::string>& args);

/// Runs the command; data goes to `data` (or --output), summaries and
/// errors to `diag`. Returns 0 on success, 1 on validation failure, 2 on
/// I/O failure.
int execute(const Command& cmd, std::ostream& data, std::ostream& diag);

/// parse + execute with exit-code mapping; the main() body.
int run(const std::vector<std::string>& args, std::ostream& data,
        std::ostream& diag);

}  // namespace dmf::cli
