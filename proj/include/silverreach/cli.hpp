#pragma once

#include <array>
#include <iosfwd>
#include <optional>
#include <string>

namespace silverreach::cli {

enum class Command { Analyze, Gramian, Optimize, Sweep, Synthesize, Pendulum };
enum class Format { Json, Csv, Text };

/// Parsed invocation.  Numeric parameters are validated against the module
/// preconditions inside run(), before dispatch.
struct RunConfig {
    Command command = Command::Optimize;
    std::optional<Format> format;  // defaulted per command when unset
    std::optional<std::string> output_path;

    std::optional<std::array<double, 2>> pi;
    std::optional<std::array<double, 2>> v;
    std::optional<std::array<double, 2>> alpha;
    std::optional<std::array<double, 2>> beta;
    std::optional<std::array<double, 2>> inertia;
    std::optional<std::array<double, 4>> target;
    std::optional<double> horizon;
    std::optional<double> dt;
    std::optional<double> mass;
    std::optional<double> arm;
    double g0 = 9.81;
    std::optional<long long> n;
};

/// Executes one command.  Reports go to `out` (or the configured output file);
/// on validation failure a machine-readable error object goes to `err` and the
/// exit status is 2.  Output bytes are deterministic for identical configs:
/// JSON floats use 17 significant digits, CSV floats the shortest
/// round-trip form.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace silverreach::cli
