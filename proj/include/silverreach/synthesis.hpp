#pragma once

#include <iosfwd>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "silverreach/decomposition.hpp"

namespace silverreach {

/// Exact one-step propagation of the plant under a zero-order hold of
/// length dt: z⁺ = a z + b u.  Per subsystem the 2×2 block is
/// [[cosh(π dt), sinh(π dt)/π], [π sinh(π dt), cosh(π dt)]].
struct ZohStep {
    Eigen::Matrix4d a;
    Eigen::Vector4d b;
    double dt;
};

ZohStep discretize(const CoupledSystem& sys, double dt);

/// Sampled input/state history.  `inputs[k]` is the hold value on
/// [times[k], times[k+1]); the final entry is 0.  `energy` is the hold-
/// convention sum Σ uₖ² dt, matching the exact discretization.
struct Trajectory {
    std::vector<double> times;
    std::vector<double> inputs;
    std::vector<State4> states;
    double energy = 0.0;
};

/// Drive the plant from rest at t = −T through `target` at t = 0 and back to
/// rest at t = +T with the least input energy.
struct SynthesisProblem {
    CoupledSystem system;
    State4 target;
    double horizon;  ///< T [s]; must be > 0
    double dt;       ///< step [s]; must satisfy 0 < dt ≤ horizon/50

    SynthesisProblem(CoupledSystem system, State4 target, double horizon, double dt);
};

/// Minimum-energy two-sided synthesis.  The boundary constraints are solved as
/// a minimum-norm least-squares problem over the hold inputs, assembled in
/// modal coordinates so every constraint row decays in its stable time
/// direction.  The returned state sequence is built the same way (backward
/// recursion for unstable modes), so both endpoints are met to solver
/// precision.  Throws InfeasibleDiscretization when the constraint map cannot
/// represent the target (e.g. π₁ = π₂ with a target outside the degenerate
/// range) and HorizonTooShort when endpoint residuals exceed tolerance.
Trajectory synthesize_min_energy(const SynthesisProblem& problem);

/// Same two-sided solve for a first-order pair in its own coordinates.
/// Covers all stability classes; for a mixed pair the energy converges to the
/// decoupled quadratic form (2|α₁|/β₁²)ξ₁² + (2|α₂|/β₂²)ξ₂².
struct PairTrajectory {
    std::vector<double> times;
    std::vector<double> inputs;
    std::vector<Eigen::Vector2d> states;
    double energy = 0.0;
};

PairTrajectory synthesize_pair_min_energy(const FirstOrderPair& sys,
                                          const Eigen::Vector2d& target,
                                          double horizon, double dt);

/// Forward simulation with the exact ZOH stepper.  `u[k]` holds on
/// [t_start + k·dt, t_start + (k+1)·dt).  Each step is exact, but forward
/// propagation amplifies rounding noise at the unstable rate e^{πt}; replaying
/// a synthesized input reproduces the synthesized states only while
/// e^{2π·span}·eps stays below the wanted agreement.
Trajectory simulate(const CoupledSystem& sys, std::span<const double> u,
                    const State4& z0, double dt, double t_start = 0.0);

/// Trapezoidal estimate of ∫ u² dt over the trajectory samples.
double energy_of(const Trajectory& traj);

/// CSV export with header t,u,x1,dx1,x2,dx2 (shortest round-trip floats).
void write_csv(std::ostream& os, const Trajectory& traj);

}  // namespace silverreach
