#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "silverreach/decomposition.hpp"
#include "silverreach/gramian.hpp"

namespace silverreach {

struct VolumeReport {
    Gramian2 p;               ///< modal-pair Gramian P
    double volume_measure;    ///< (π₁π₂/4 · (π₁−π₂)/(π₁+π₂))² · v₁²v₂²
    double geometric_volume;  ///< true 4D volume: (π²/2) · √det of the shape matrix
    double epsilon;           ///< min(π₁,π₂)/max(π₁,π₂) ∈ (0, 1]
    double objective;         ///< ε(1−ε)/(1+ε)
};

/// Gramian shared by the stable and the unstable modal pair:
///   P = (1/4) [[π₁(1+π₁²)/2, π₁π₂√(1+π₁²)√(1+π₂²)/(π₁+π₂)], [·, π₂(1+π₂²)/2]],
/// entries scaled by vᵢvⱼ.
Gramian2 p_matrix(const CoupledSystem& sys);

/// The 4D unit-energy reachable set in physical coordinates, with shape matrix
/// Q = T Πᵀ diag(P, P) Π Tᵀ.  Throws DegenerateSystem when π₁ = π₂.
SetDescription reachable_set(const CoupledSystem& sys);

/// Volume measures and the ratio objective for one plant.  Never throws; the
/// degenerate π₁ = π₂ case reports zero volume.
VolumeReport volume_measures(const CoupledSystem& sys);

/// f(ε) = ε(1−ε)/(1+ε), concave on the domain (0, 1].  Throws DomainError
/// outside the domain.
double ratio_objective(double epsilon);

struct OptimalRatio {
    double epsilon_star;         ///< analytic root of ε² + 2ε − 1 = 0: √2 − 1
    double delta_s;              ///< silver ratio 1 + √2 = 1/ε*
    double epsilon_star_search;  ///< golden-section maximizer of ratio_objective
};

/// The time-constant ratio maximizing the reachable volume, computed two ways:
/// analytically and by golden-section search over (1e−9, 1].
OptimalRatio optimal_ratio();

struct SweepSample {
    double epsilon;
    double objective;
};

/// n uniformly spaced samples of the objective at ε = k/n, k = 1..n.
std::vector<SweepSample> sweep_objective(std::size_t n);

/// Golden-section maximizer for a unimodal function on [lo, hi].
double golden_section_maximize(const std::function<double(double)>& f, double lo,
                               double hi, double tol = 1e-12, int max_iter = 200);

}  // namespace silverreach
