#pragma once

#include <array>

#include <Eigen/Core>

#include "silverreach/systems.hpp"

namespace silverreach {

/// Similarity transform revealing the stable/unstable modes of each plant:
///   Tᵢ = (1/√(1+πᵢ²)) [[1, 1], [πᵢ, −πᵢ]],   zᵢ = Tᵢ ẑᵢ,
/// so that Tᵢ⁻¹ Aᵢ Tᵢ = diag(πᵢ, −πᵢ).  `perm` groups the stacked modal
/// state ẑ = (u₁, s₁, u₂, s₂) into η = (u₁, u₂, s₁, s₂), unstable
/// coordinates first: η[j] = ẑ[perm[j]].
struct ModalTransform {
    Eigen::Matrix2d t1;
    Eigen::Matrix2d t2;
    std::array<int, 4> perm;

    /// diag(T₁, T₂)
    Eigen::Matrix4d block_transform() const;
    /// Π with η = Π ẑ; |det Π| = 1
    Eigen::Matrix4d permutation_matrix() const;
};

ModalTransform build_transform(const CoupledSystem& sys);

/// η = Π · diag(T₁, T₂)⁻¹ · z
Eigen::Vector4d to_modal(const ModalTransform& tf, const State4& z);

/// Inverse of to_modal.
State4 from_modal(const ModalTransform& tf, const Eigen::Vector4d& eta);

}  // namespace silverreach
