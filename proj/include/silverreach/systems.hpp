#pragma once

#include <Eigen/Core>

#include "silverreach/errors.hpp"

namespace silverreach {

/// Two unstable second-order plants sharing one control input:
///   ẍ₁ = π₁² x₁ + v₁ π₁² u,   ẍ₂ = π₂² x₂ + v₂ π₂² u.
struct CoupledSystem {
    double pi1;  ///< time constant of plant 1 [1/s], > 0
    double pi2;  ///< time constant of plant 2 [1/s], > 0
    double v1;   ///< input gain of plant 1, nonzero
    double v2;   ///< input gain of plant 2, nonzero

    CoupledSystem(double pi1, double pi2, double v1, double v2);
};

/// Full plant state in the fixed ordering (x₁, ẋ₁, x₂, ẋ₂).
struct State4 {
    double x1 = 0.0;
    double dx1 = 0.0;
    double x2 = 0.0;
    double dx2 = 0.0;

    Eigen::Vector4d vec() const { return {x1, dx1, x2, dx2}; }
    static State4 from_vec(const Eigen::Vector4d& v) { return {v[0], v[1], v[2], v[3]}; }
};

/// Auxiliary pair of first-order systems driven by a common input:
///   ξ̇ᵢ = −αᵢ ξᵢ + βᵢ u.
/// With this sign convention αᵢ > 0 means the mode is stable.
struct FirstOrderPair {
    double alpha1;  ///< pole magnitude of mode 1 [1/s], nonzero
    double alpha2;  ///< pole magnitude of mode 2 [1/s], nonzero
    double beta1;   ///< input gain of mode 1, nonzero
    double beta2;   ///< input gain of mode 2, nonzero

    FirstOrderPair(double alpha1, double alpha2, double beta1, double beta2);
};

enum class StabilityClass { BothStable, BothUnstable, Mixed };

/// Sign-based classification: BothStable iff α₁>0 ∧ α₂>0, BothUnstable iff
/// α₁<0 ∧ α₂<0, Mixed otherwise.
StabilityClass classify(const FirstOrderPair& sys);

struct ModalPairs {
    FirstOrderPair unstable;  ///< α = (−π₁, −π₂), β = (+b₁, +b₂)
    FirstOrderPair stable;    ///< α = (π₁, π₂),  β = (−b₁, −b₂)
};

/// Splits the plant into its unstable and stable first-order pairs.  The modal
/// input gains have magnitude bᵢ = vᵢ πᵢ √(1+πᵢ²)/2; the stable component
/// keeps the negative sign of the modal input column.  Set-level quantities
/// downstream depend on β only through β², β₁β₂ and |β₁β₂|, so the sign
/// convention does not affect any reported measure.
ModalPairs modal_pairs(const CoupledSystem& sys);

}  // namespace silverreach
