#include <array>
#include <cmath>
#include <iostream>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "silverreach/cli.hpp"
#include "silverreach/errors.hpp"

namespace {

using silverreach::cli::Command;
using silverreach::cli::Format;
using silverreach::cli::RunConfig;

// Shared flag storage; CLI11 writes into vectors, run() wants fixed arrays.
// Scalars start as NaN so an explicit zero still reaches the module validators.
struct RawOptions {
    std::vector<double> pi, v, alpha, beta, inertia, target;
    double horizon = kUnset, dt = kUnset, mass = kUnset, arm = kUnset, g0 = 9.81;
    long long n = 0;
    std::string format;
    std::string out;

    static constexpr double kUnset = std::numeric_limits<double>::quiet_NaN();
};

template <std::size_t N>
std::optional<std::array<double, N>> fixed(const std::vector<double>& values,
                                           const char* flag) {
    if (values.empty()) return std::nullopt;
    if (values.size() != N) {
        throw silverreach::Error(silverreach::ErrorCode::InvalidArgument,
                                 std::string(flag) + " expects " + std::to_string(N) +
                                     " comma-separated values");
    }
    std::array<double, N> arr{};
    std::copy(values.begin(), values.end(), arr.begin());
    return arr;
}

Format parse_format(const std::string& name) {
    if (name == "json") return Format::Json;
    if (name == "csv") return Format::Csv;
    if (name == "text") return Format::Text;
    throw silverreach::Error(silverreach::ErrorCode::InvalidArgument,
                             "unknown format: " + name);
}

void add_system_flags(CLI::App* cmd, RawOptions& raw) {
    cmd->add_option("--pi", raw.pi, "time constants pi1,pi2")->delimiter(',');
    cmd->add_option("--v", raw.v, "input gains v1,v2 (default 1,1)")->delimiter(',');
}

void add_common_flags(CLI::App* cmd, RawOptions& raw) {
    cmd->add_option("--format", raw.format, "output format");
    cmd->add_option("--out", raw.out, "write the report to this file");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "silverreach: unit-energy reachability analysis for two unstable "
        "second-order plants sharing one input"};
    app.require_subcommand(1);

    RawOptions raw;

    CLI::App* analyze = app.add_subcommand(
        "analyze", "volume measures and ratio objective of a coupled system");
    add_system_flags(analyze, raw);
    add_common_flags(analyze, raw);

    CLI::App* gramian = app.add_subcommand(
        "gramian", "unit-energy set of a first-order pair");
    gramian->add_option("--alpha", raw.alpha, "pole magnitudes alpha1,alpha2")
        ->delimiter(',');
    gramian->add_option("--beta", raw.beta, "input gains beta1,beta2")->delimiter(',');
    add_common_flags(gramian, raw);

    CLI::App* optimize = app.add_subcommand(
        "optimize", "silver-ratio optimum of the volume objective");
    add_common_flags(optimize, raw);

    CLI::App* sweep = app.add_subcommand(
        "sweep", "sample the objective f(eps) = eps(1-eps)/(1+eps) on (0,1]");
    sweep->add_option("--n", raw.n, "number of samples (>= 2)");
    add_common_flags(sweep, raw);

    CLI::App* synthesize = app.add_subcommand(
        "synthesize", "minimum-energy input reaching a target state");
    add_system_flags(synthesize, raw);
    synthesize->add_option("--target", raw.target, "target state x1,dx1,x2,dx2")
        ->delimiter(',');
    synthesize->add_option("--horizon", raw.horizon,
                           "horizon T in seconds (default 8/min(pi))");
    synthesize->add_option("--dt", raw.dt, "step size (default horizon/2000)");
    add_common_flags(synthesize, raw);

    CLI::App* pendulum = app.add_subcommand(
        "pendulum", "silver-ratio inertia recommendation for a balancing body");
    pendulum->add_option("--inertia", raw.inertia, "principal inertias I1,I2")
        ->delimiter(',');
    pendulum->add_option("--mass", raw.mass, "body mass in kg");
    pendulum->add_option("--arm", raw.arm, "force lever arm l in m");
    pendulum->add_option("--g", raw.g0, "gravity (default 9.81)");
    add_common_flags(pendulum, raw);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help / --version
        std::cerr << "{\"schema\":\"silverreach/1\",\"error\":{\"code\":"
                  << "\"invalid_argument\",\"message\":\"" << e.what() << "\"}}\n";
        return 2;
    }

    try {
        RunConfig config;
        const std::map<const CLI::App*, Command> commands = {
            {analyze, Command::Analyze},     {gramian, Command::Gramian},
            {optimize, Command::Optimize},   {sweep, Command::Sweep},
            {synthesize, Command::Synthesize}, {pendulum, Command::Pendulum},
        };
        config.command = commands.at(app.get_subcommands().front());

        if (!raw.format.empty()) config.format = parse_format(raw.format);
        if (!raw.out.empty()) config.output_path = raw.out;
        config.pi = fixed<2>(raw.pi, "--pi");
        config.v = fixed<2>(raw.v, "--v");
        config.alpha = fixed<2>(raw.alpha, "--alpha");
        config.beta = fixed<2>(raw.beta, "--beta");
        config.inertia = fixed<2>(raw.inertia, "--inertia");
        config.target = fixed<4>(raw.target, "--target");
        if (!std::isnan(raw.horizon)) config.horizon = raw.horizon;
        if (!std::isnan(raw.dt)) config.dt = raw.dt;
        if (!std::isnan(raw.mass)) config.mass = raw.mass;
        if (!std::isnan(raw.arm)) config.arm = raw.arm;
        config.g0 = raw.g0;
        if (raw.n != 0) config.n = raw.n;

        return silverreach::cli::run(config, std::cout, std::cerr);
    } catch (const silverreach::Error& e) {
        std::cerr << "{\"schema\":\"silverreach/1\",\"error\":{\"code\":\""
                  << silverreach::to_string(e.code()) << "\",\"message\":\"" << e.what()
                  << "\"}}\n";
        return 2;
    }
}
