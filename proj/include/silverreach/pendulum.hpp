#pragma once

#include "silverreach/reachability.hpp"
#include "silverreach/systems.hpp"

namespace silverreach {

/// Rigid-body inverted pendulum balanced about a principal axis and actuated
/// by a single force at lever arm `arm` from the center of gravity.
struct PendulumParams {
    double i1;    ///< principal inertia about axis 1 [kg·m²], > 0
    double i2;    ///< principal inertia about axis 2 [kg·m²], > 0
    double mass;  ///< body mass [kg], > 0
    double arm;   ///< force lever arm l [m], > 0
    double g0;    ///< gravity [m/s²], > 0

    PendulumParams(double i1, double i2, double mass, double arm, double g0 = 9.81);
};

/// Linearized upright dynamics: πᵢ = √(l·m·g₀/Iᵢ) with input gains
/// v₁ = +1, v₂ = −1 (the force enters axis 1 positively, axis 2 negatively).
CoupledSystem linearize(const PendulumParams& params);

/// Inertia ratio giving the silver time-constant ratio: since πᵢ² ∝ 1/Iᵢ,
/// π₂/π₁ = 1+√2 corresponds to I₁/I₂ = (1+√2)² = 3+2√2.
double optimal_inertia_ratio();

/// One way to reach the silver ratio: change a single inertia, keep the other.
struct DesignOption {
    double i1;
    double i2;
    double volume_measure;
    double gain_factor;  ///< volume_measure / current measure; valid iff gain_defined
    bool gain_defined;   ///< false when the current design has zero volume
};

struct DesignReport {
    double pi1;
    double pi2;
    double epsilon;
    double objective;
    double volume_measure;
    bool degenerate;         ///< I₁ = I₂: zero current volume
    DesignOption adjust_i1;  ///< retune I₁, holding I₂
    DesignOption adjust_i2;  ///< retune I₂, holding I₁
};

/// Evaluates the current design and the two single-inertia retunes that attain
/// the silver ratio.  The larger/smaller axis roles are kept as the caller has
/// them (axis 1 is treated as the large-inertia axis when I₁ = I₂).
DesignReport recommend(const PendulumParams& params);

}  // namespace silverreach
