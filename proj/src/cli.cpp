#include "silverreach/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <initializer_list>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "silverreach/pendulum.hpp"
#include "silverreach/reachability.hpp"
#include "silverreach/synthesis.hpp"

namespace silverreach::cli {

namespace {

constexpr std::string_view kSchema = "silverreach/1";

// Deterministic float rendering: JSON uses up to 17 significant digits (round
// trips any double), CSV the shortest round-trip form from std::to_chars.
std::string json_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string csv_double(double v) {
    char buf[32];
    const auto result = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, result.ptr);
}

class JsonWriter {
public:
    explicit JsonWriter(std::ostream& os) : os_(os) {}

    void begin_object() {
        separator();
        os_ << '{';
        first_.push_back(true);
    }
    void end_object() {
        os_ << '}';
        first_.pop_back();
    }
    void begin_array() {
        separator();
        os_ << '[';
        first_.push_back(true);
    }
    void end_array() {
        os_ << ']';
        first_.pop_back();
    }
    void key(std::string_view k) {
        if (!first_.back()) os_ << ',';
        first_.back() = false;
        string_literal(k);
        os_ << ':';
        after_key_ = true;
    }
    void number(double v) {
        separator();
        if (std::isfinite(v)) {
            os_ << json_double(v);
        } else {
            os_ << "null";
        }
    }
    void number(long long v) {
        separator();
        os_ << v;
    }
    void string(std::string_view s) {
        separator();
        string_literal(s);
    }
    void boolean(bool b) {
        separator();
        os_ << (b ? "true" : "false");
    }
    void null() {
        separator();
        os_ << "null";
    }

private:
    void separator() {
        if (after_key_) {
            after_key_ = false;
            return;
        }
        if (!first_.empty()) {
            if (!first_.back()) os_ << ',';
            first_.back() = false;
        }
    }

    void string_literal(std::string_view s) {
        os_ << '"';
        for (const char c : s) {
            switch (c) {
                case '"': os_ << "\\\""; break;
                case '\\': os_ << "\\\\"; break;
                case '\n': os_ << "\\n"; break;
                case '\t': os_ << "\\t"; break;
                case '\r': os_ << "\\r"; break;
                default:
                    if (static_cast<unsigned char>(c) < 0x20) {
                        char buf[8];
                        std::snprintf(buf, sizeof buf, "\\u%04x", c);
                        os_ << buf;
                    } else {
                        os_ << c;
                    }
            }
        }
        os_ << '"';
    }

    std::ostream& os_;
    std::vector<bool> first_;
    bool after_key_ = false;
};

Format default_format(Command command) {
    switch (command) {
        case Command::Sweep:
        case Command::Synthesize: return Format::Csv;
        default: return Format::Json;
    }
}

void require_format(Format format, std::initializer_list<Format> allowed,
                    const char* command) {
    for (const Format f : allowed) {
        if (f == format) return;
    }
    throw Error(ErrorCode::InvalidArgument,
                std::string("unsupported output format for ") + command);
}

template <std::size_t N>
std::array<double, N> need(const std::optional<std::array<double, N>>& value,
                           const char* flag) {
    if (!value) {
        throw Error(ErrorCode::InvalidArgument, std::string("missing required option ") + flag);
    }
    return *value;
}

double need(const std::optional<double>& value, const char* flag) {
    if (!value) {
        throw Error(ErrorCode::InvalidArgument, std::string("missing required option ") + flag);
    }
    return *value;
}

const char* stability_name(StabilityClass c) {
    switch (c) {
        case StabilityClass::BothStable: return "both_stable";
        case StabilityClass::BothUnstable: return "both_unstable";
        case StabilityClass::Mixed: return "mixed";
    }
    return "unknown";
}

void text_line(std::ostream& os, const char* name, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    os << name << ": " << buf << '\n';
}

// ---- analyze -------------------------------------------------------------

void run_analyze(const RunConfig& config, std::ostream& os, Format format) {
    const auto pi = need(config.pi, "--pi");
    const auto v = config.v.value_or(std::array<double, 2>{1.0, 1.0});
    const CoupledSystem sys(pi[0], pi[1], v[0], v[1]);
    const VolumeReport vol = volume_measures(sys);
    const bool degenerate = sys.pi1 == sys.pi2;

    if (format == Format::Json) {
        JsonWriter w(os);
        w.begin_object();
        w.key("schema");
        w.string(kSchema);
        w.key("command");
        w.string("analyze");
        w.key("system");
        w.begin_object();
        w.key("pi1");
        w.number(sys.pi1);
        w.key("pi2");
        w.number(sys.pi2);
        w.key("v1");
        w.number(sys.v1);
        w.key("v2");
        w.number(sys.v2);
        w.end_object();
        w.key("epsilon");
        w.number(vol.epsilon);
        w.key("objective");
        w.number(vol.objective);
        w.key("p");
        w.begin_object();
        w.key("w11");
        w.number(vol.p.w11);
        w.key("w12");
        w.number(vol.p.w12);
        w.key("w22");
        w.number(vol.p.w22);
        w.end_object();
        w.key("volume_measure");
        w.number(vol.volume_measure);
        w.key("geometric_volume");
        w.number(vol.geometric_volume);
        w.key("degenerate");
        w.boolean(degenerate);
        w.end_object();
        os << '\n';
    } else {
        os << "coupled system analysis\n";
        text_line(os, "pi1", sys.pi1);
        text_line(os, "pi2", sys.pi2);
        text_line(os, "v1", sys.v1);
        text_line(os, "v2", sys.v2);
        text_line(os, "epsilon", vol.epsilon);
        text_line(os, "objective", vol.objective);
        text_line(os, "p.w11", vol.p.w11);
        text_line(os, "p.w12", vol.p.w12);
        text_line(os, "p.w22", vol.p.w22);
        text_line(os, "volume_measure", vol.volume_measure);
        text_line(os, "geometric_volume", vol.geometric_volume);
        os << "degenerate: " << (degenerate ? "true" : "false") << '\n';
    }
}

// ---- gramian ---------------------------------------------------------

void run_gramian(const RunConfig& config, std::ostream& os, Format format) {
    const auto alpha = need(config.alpha, "--alpha");
    const auto beta = need(config.beta, "--beta");
    const FirstOrderPair sys(alpha[0], alpha[1], beta[0], beta[1]);
    const StabilityClass stability = classify(sys);
    const SetDescription set = unit_energy_set(sys);
    const bool mixed = stability == StabilityClass::Mixed;
    const double area = mixed ? set.sqrt_det() : area_measure(sys);
    const double pi = std::numbers::pi;
    const bool degenerate = !mixed && std::abs(sys.alpha1) == std::abs(sys.alpha2);

    if (format == Format::Json) {
        JsonWriter w(os);
        w.begin_object();
        w.key("schema");
        w.string(kSchema);
        w.key("command");
        w.string("gramian");
        w.key("system");
        w.begin_object();
        w.key("alpha1");
        w.number(sys.alpha1);
        w.key("alpha2");
        w.number(sys.alpha2);
        w.key("beta1");
        w.number(sys.beta1);
        w.key("beta2");
        w.number(sys.beta2);
        w.end_object();
        w.key("stability");
        w.string(stability_name(stability));
        if (mixed) {
            w.key("q");
            w.begin_object();
            w.key("q11");
            w.number(set.form(0, 0));
            w.key("q22");
            w.number(set.form(1, 1));
            w.end_object();
        } else {
            const Gramian2 gram = gramian_closed_form(sys);
            w.key("w");
            w.begin_object();
            w.key("w11");
            w.number(gram.w11);
            w.key("w12");
            w.number(gram.w12);
            w.key("w22");
            w.number(gram.w22);
            w.end_object();
        }
        w.key("area_measure");
        w.number(area);
        w.key("geometric_area");
        w.number(pi * area);
        w.key("degenerate");
        w.boolean(degenerate);
        w.end_object();
        os << '\n';
    } else {
        os << "first-order pair reachability\n";
        text_line(os, "alpha1", sys.alpha1);
        text_line(os, "alpha2", sys.alpha2);
        text_line(os, "beta1", sys.beta1);
        text_line(os, "beta2", sys.beta2);
        os << "stability: " << stability_name(stability) << '\n';
        if (mixed) {
            text_line(os, "q11", set.form(0, 0));
            text_line(os, "q22", set.form(1, 1));
        } else {
            const Gramian2 gram = gramian_closed_form(sys);
            text_line(os, "w11", gram.w11);
            text_line(os, "w12", gram.w12);
            text_line(os, "w22", gram.w22);
        }
        text_line(os, "area_measure", area);
        text_line(os, "geometric_area", pi * area);
        os << "degenerate: " << (degenerate ? "true" : "false") << '\n';
    }
}

// ---- optimize --------------------------------------------------------

void run_optimize(std::ostream& os, Format format) {
    const OptimalRatio opt = optimal_ratio();
    const double inertia_ratio = optimal_inertia_ratio();

    if (format == Format::Json) {
        JsonWriter w(os);
        w.begin_object();
        w.key("schema");
        w.string(kSchema);
        w.key("command");
        w.string("optimize");
        w.key("epsilon_star");
        w.number(opt.epsilon_star);
        w.key("epsilon_star_search");
        w.number(opt.epsilon_star_search);
        w.key("delta_s");
        w.number(opt.delta_s);
        w.key("inertia_ratio");
        w.number(inertia_ratio);
        w.end_object();
        os << '\n';
    } else {
        os << "silver-ratio optimum\n";
        text_line(os, "epsilon_star", opt.epsilon_star);
        text_line(os, "epsilon_star_search", opt.epsilon_star_search);
        text_line(os, "delta_s", opt.delta_s);
        text_line(os, "inertia_ratio", inertia_ratio);
    }
}

// ---- sweep -----------------------------------------------------------

void run_sweep(const RunConfig& config, std::ostream& os, Format format) {
    const long long n = config.n.value_or(0);
    if (n < 2 || n > 10'000'000) {
        throw Error(ErrorCode::InvalidArgument, "--n must lie in [2, 1e7]");
    }
    const std::vector<SweepSample> samples = sweep_objective(static_cast<std::size_t>(n));

    if (format == Format::Csv) {
        os << "epsilon,f\n";
        std::string line;
        for (const SweepSample& s : samples) {
            line.clear();
            line += csv_double(s.epsilon);
            line.push_back(',');
            line += csv_double(s.objective);
            line.push_back('\n');
            os << line;
        }
    } else {
        JsonWriter w(os);
        w.begin_object();
        w.key("schema");
        w.string(kSchema);
        w.key("command");
        w.string("sweep");
        w.key("n");
        w.number(n);
        w.key("samples");
        w.begin_array();
        for (const SweepSample& s : samples) {
            w.begin_array();
            w.number(s.epsilon);
            w.number(s.objective);
            w.end_array();
        }
        w.end_array();
        w.end_object();
        os << '\n';
    }
}

// ---- synthesize ------------------------------------------------------

void run_synthesize(const RunConfig& config, std::ostream& os, Format format) {
    const auto pi = need(config.pi, "--pi");
    const auto v = config.v.value_or(std::array<double, 2>{1.0, 1.0});
    const auto target_arr = need(config.target, "--target");
    const CoupledSystem sys(pi[0], pi[1], v[0], v[1]);
    const State4 target{target_arr[0], target_arr[1], target_arr[2], target_arr[3]};
    const double horizon = config.horizon.value_or(8.0 / std::min(sys.pi1, sys.pi2));
    const double dt = config.dt.value_or(horizon / 2000.0);

    const SynthesisProblem problem(sys, target, horizon, dt);
    const Trajectory traj = synthesize_min_energy(problem);

    if (format == Format::Csv) {
        write_csv(os, traj);
    } else {
        const std::size_t mid = traj.times.size() / 2;
        const double target_error = (traj.states[mid].vec() - target.vec()).norm();
        const double endpoint_error = traj.states.back().vec().norm();
        JsonWriter w(os);
        w.begin_object();
        w.key("schema");
        w.string(kSchema);
        w.key("command");
        w.string("synthesize");
        w.key("system");
        w.begin_object();
        w.key("pi1");
        w.number(sys.pi1);
        w.key("pi2");
        w.number(sys.pi2);
        w.key("v1");
        w.number(sys.v1);
        w.key("v2");
        w.number(sys.v2);
        w.end_object();
        w.key("target");
        w.begin_array();
        w.number(target.x1);
        w.number(target.dx1);
        w.number(target.x2);
        w.number(target.dx2);
        w.end_array();
        w.key("horizon");
        w.number(horizon);
        w.key("dt");
        w.number(dt);
        w.key("samples");
        w.number(static_cast<long long>(traj.times.size()));
        w.key("energy");
        w.number(traj.energy);
        w.key("target_error");
        w.number(target_error);
        w.key("endpoint_error");
        w.number(endpoint_error);
        w.end_object();
        os << '\n';
    }
}

// ---- pendulum --------------------------------------------------------

void write_option_json(JsonWriter& w, const DesignOption& option) {
    w.begin_object();
    w.key("i1");
    w.number(option.i1);
    w.key("i2");
    w.number(option.i2);
    w.key("volume_measure");
    w.number(option.volume_measure);
    w.key("gain_defined");
    w.boolean(option.gain_defined);
    w.key("gain_factor");
    if (option.gain_defined) {
        w.number(option.gain_factor);
    } else {
        w.null();
    }
    w.end_object();
}

void run_pendulum(const RunConfig& config, std::ostream& os, Format format) {
    const auto inertia = need(config.inertia, "--inertia");
    const double mass = need(config.mass, "--mass");
    const double arm = need(config.arm, "--arm");
    const PendulumParams params(inertia[0], inertia[1], mass, arm, config.g0);
    const DesignReport report = recommend(params);

    if (format == Format::Json) {
        JsonWriter w(os);
        w.begin_object();
        w.key("schema");
        w.string(kSchema);
        w.key("command");
        w.string("pendulum");
        w.key("params");
        w.begin_object();
        w.key("i1");
        w.number(params.i1);
        w.key("i2");
        w.number(params.i2);
        w.key("mass");
        w.number(params.mass);
        w.key("arm");
        w.number(params.arm);
        w.key("g0");
        w.number(params.g0);
        w.end_object();
        w.key("pi1");
        w.number(report.pi1);
        w.key("pi2");
        w.number(report.pi2);
        w.key("epsilon");
        w.number(report.epsilon);
        w.key("objective");
        w.number(report.objective);
        w.key("volume_measure");
        w.number(report.volume_measure);
        w.key("degenerate");
        w.boolean(report.degenerate);
        w.key("optimal_inertia_ratio");
        w.number(optimal_inertia_ratio());
        w.key("adjust_i1");
        write_option_json(w, report.adjust_i1);
        w.key("adjust_i2");
        write_option_json(w, report.adjust_i2);
        w.end_object();
        os << '\n';
    } else {
        os << "pendulum design\n";
        text_line(os, "pi1", report.pi1);
        text_line(os, "pi2", report.pi2);
        text_line(os, "epsilon", report.epsilon);
        text_line(os, "objective", report.objective);
        text_line(os, "volume_measure", report.volume_measure);
        os << "degenerate: " << (report.degenerate ? "true" : "false") << '\n';
        text_line(os, "optimal_inertia_ratio", optimal_inertia_ratio());
        text_line(os, "adjust_i1.i1", report.adjust_i1.i1);
        if (report.adjust_i1.gain_defined) {
            text_line(os, "adjust_i1.gain_factor", report.adjust_i1.gain_factor);
        } else {
            os << "adjust_i1.gain_factor: undefined\n";
        }
        text_line(os, "adjust_i2.i2", report.adjust_i2.i2);
        if (report.adjust_i2.gain_defined) {
            text_line(os, "adjust_i2.gain_factor", report.adjust_i2.gain_factor);
        } else {
            os << "adjust_i2.gain_factor: undefined\n";
        }
    }
}

void write_error(std::ostream& os, ErrorCode code, std::string_view message) {
    JsonWriter w(os);
    w.begin_object();
    w.key("schema");
    w.string(kSchema);
    w.key("error");
    w.begin_object();
    w.key("code");
    w.string(to_string(code));
    w.key("message");
    w.string(message);
    w.end_object();
    w.end_object();
    os << '\n';
}

}  // namespace

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
    try {
        std::ofstream file;
        std::ostream* sink = &out;
        if (config.output_path) {
            file.open(*config.output_path, std::ios::binary);
            if (!file) {
                throw Error(ErrorCode::InvalidArgument,
                            "cannot open output file: " + *config.output_path);
            }
            sink = &file;
        }
        const Format format = config.format.value_or(default_format(config.command));

        switch (config.command) {
            case Command::Analyze:
                require_format(format, {Format::Json, Format::Text}, "analyze");
                run_analyze(config, *sink, format);
                break;
            case Command::Gramian:
                require_format(format, {Format::Json, Format::Text}, "gramian");
                run_gramian(config, *sink, format);
                break;
            case Command::Optimize:
                require_format(format, {Format::Json, Format::Text}, "optimize");
                run_optimize(*sink, format);
                break;
            case Command::Sweep:
                require_format(format, {Format::Csv, Format::Json}, "sweep");
                run_sweep(config, *sink, format);
                break;
            case Command::Synthesize:
                require_format(format, {Format::Csv, Format::Json}, "synthesize");
                run_synthesize(config, *sink, format);
                break;
            case Command::Pendulum:
                require_format(format, {Format::Json, Format::Text}, "pendulum");
                run_pendulum(config, *sink, format);
                break;
        }
        return 0;
    } catch (const Error& e) {
        write_error(err, e.code(), e.what());
        return 2;
    }
}

}  // namespace silverreach::cli
