#pragma once

#include <Eigen/Core>

#include "silverreach/systems.hpp"

namespace silverreach {

/// Symmetric 2×2 reachability Gramian.
struct Gramian2 {
    double w11 = 0.0;
    double w12 = 0.0;
    double w22 = 0.0;

    Eigen::Matrix2d matrix() const;
    /// Determinant with FMA compensation; exact to ~1 ulp of the stored
    /// entries even when w11·w22 and w12² nearly cancel.
    double det() const;
};

enum class SetKind { Ellipse2, AxisAlignedEllipse2, Ellipsoid4 };
enum class Frame { Modal, Physical };

/// Ellipsoidal set {x : xᵀ Q⁻¹ x ≤ 1} described by its shape matrix Q.
struct SetDescription {
    SetKind kind;
    Frame frame;
    Eigen::MatrixXd form;  // Q, symmetric, 2×2 or 4×4

    /// xᵀ Q⁻¹ x; ≤ 1 inside the set, 1 on the boundary.
    double membership(const Eigen::VectorXd& x) const;
    /// √det Q, the coordinate-volume measure of the set (no unit-ball factor).
    double sqrt_det() const;
};

/// Infinite-horizon reachability Gramian in closed form:
///   W = [[β₁²/(2α₁), β₁β₂/(α₁+α₂)], [·, β₂²/(2α₂)]],
/// with |αᵢ| substituted when both modes are unstable (running the dynamics
/// backwards in time yields the same set).  Throws MixedClass for mixed pairs.
Gramian2 gramian_closed_form(const FirstOrderPair& sys);

/// Independent numerical route: integrates ∫₀ᵀ e^{−At} BBᵀ e^{−Aᵀt} dt by
/// composite Gauss–Legendre panels, doubling the panel count until successive
/// estimates agree within rtol/10 on every entry.  The horizon T is chosen so
/// the neglected tail is below rtol/100 relative.  rtol must lie in (0, 1e−4].
Gramian2 gramian_quadrature(const FirstOrderPair& sys, double rtol);

/// √det(W) = |β₁β₂|/(2√(α₁α₂)) · |α₁−α₂|/(α₁+α₂)  (|αᵢ| when both unstable).
/// This is the coordinate-area of the unit-energy ellipse; the geometric area
/// carries an extra factor π.  Returns 0 when α₁ = α₂ (the ellipse collapses).
double area_measure(const FirstOrderPair& sys);

/// Mixed stable/unstable pair: the unit-energy set decouples into the
/// axis-aligned ellipse with Q = diag(β₁²/(2|α₁|), β₂²/(2|α₂|)).
/// Throws NotMixed when both poles share a sign.
SetDescription mixed_set(const FirstOrderPair& sys);

/// Unit-energy reachable set for any stability class: the Gramian ellipse for
/// same-sign pairs, the decoupled axis-aligned ellipse for mixed pairs.
SetDescription unit_energy_set(const FirstOrderPair& sys);

/// Minimum input energy to reach `target`: targetᵀ W⁻¹ target.  When α₁ = α₂
/// the Gramian is singular; targets in range(W) are priced by the
/// pseudo-inverse (rank cut at 1e−10·‖W‖), anything else throws
/// SingularGramian.
double min_energy_to_reach(const FirstOrderPair& sys, const Eigen::Vector2d& target);

}  // namespace silverreach
