#include "silverreach/pendulum.hpp"

#include <cmath>

namespace silverreach {

namespace {

void require(bool ok, const char* message) {
    if (!ok) throw Error(ErrorCode::InvalidArgument, message);
}

}  // namespace

PendulumParams::PendulumParams(double i1, double i2, double mass, double arm, double g0)
    : i1(i1), i2(i2), mass(mass), arm(arm), g0(g0) {
    require(std::isfinite(i1) && std::isfinite(i2) && std::isfinite(mass) &&
                std::isfinite(arm) && std::isfinite(g0),
            "pendulum parameters must be finite");
    require(i1 > 0.0 && i2 > 0.0, "inertias must be positive");
    require(mass > 0.0 && arm > 0.0 && g0 > 0.0, "mass, arm and g0 must be positive");
}

CoupledSystem linearize(const PendulumParams& params) {
    const double k = params.arm * params.mass * params.g0;
    return CoupledSystem(std::sqrt(k / params.i1), std::sqrt(k / params.i2), 1.0, -1.0);
}

double optimal_inertia_ratio() {
    const double delta_s = 1.0 + std::sqrt(2.0);
    return delta_s * delta_s;  // 3 + 2√2
}

DesignReport recommend(const PendulumParams& params) {
    const CoupledSystem current = linearize(params);
    const VolumeReport vol = volume_measures(current);

    DesignReport report;
    report.pi1 = current.pi1;
    report.pi2 = current.pi2;
    report.epsilon = vol.epsilon;
    report.objective = vol.objective;
    report.volume_measure = vol.volume_measure;
    report.degenerate = params.i1 == params.i2;

    // Keep the caller's large/small axis roles; axis 1 plays the large-inertia
    // role at exact equality.
    const double ratio = optimal_inertia_ratio();
    const bool axis1_large = params.i1 >= params.i2;
    const double i1_opt = axis1_large ? ratio * params.i2 : params.i2 / ratio;
    const double i2_opt = axis1_large ? params.i1 / ratio : ratio * params.i1;

    auto evaluate = [&](double i1, double i2) {
        PendulumParams tuned(i1, i2, params.mass, params.arm, params.g0);
        const VolumeReport v = volume_measures(linearize(tuned));
        DesignOption option;
        option.i1 = i1;
        option.i2 = i2;
        option.volume_measure = v.volume_measure;
        option.gain_defined = vol.volume_measure > 0.0;
        option.gain_factor =
            option.gain_defined ? v.volume_measure / vol.volume_measure : 0.0;
        return option;
    };

    report.adjust_i1 = evaluate(i1_opt, params.i2);
    report.adjust_i2 = evaluate(params.i1, i2_opt);
    return report;
}

}  // namespace silverreach
