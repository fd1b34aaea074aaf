#include "silverreach/decomposition.hpp"

#include <cmath>

#include <Eigen/Dense>

namespace silverreach {

namespace {

Eigen::Matrix2d mode_transform(double pi) {
    const double s = 1.0 / std::sqrt(1.0 + pi * pi);
    Eigen::Matrix2d t;
    t << s, s, pi * s, -pi * s;
    return t;
}

}  // namespace

Eigen::Matrix4d ModalTransform::block_transform() const {
    Eigen::Matrix4d t = Eigen::Matrix4d::Zero();
    t.topLeftCorner<2, 2>() = t1;
    t.bottomRightCorner<2, 2>() = t2;
    return t;
}

Eigen::Matrix4d ModalTransform::permutation_matrix() const {
    Eigen::Matrix4d p = Eigen::Matrix4d::Zero();
    for (int j = 0; j < 4; ++j) p(j, perm[j]) = 1.0;
    return p;
}

ModalTransform build_transform(const CoupledSystem& sys) {
    return ModalTransform{mode_transform(sys.pi1), mode_transform(sys.pi2), {0, 2, 1, 3}};
}

Eigen::Vector4d to_modal(const ModalTransform& tf, const State4& z) {
    const Eigen::Vector4d zv = z.vec();
    Eigen::Vector4d stacked;
    stacked.head<2>() = tf.t1.inverse() * zv.head<2>();
    stacked.tail<2>() = tf.t2.inverse() * zv.tail<2>();
    Eigen::Vector4d eta;
    for (int j = 0; j < 4; ++j) eta[j] = stacked[tf.perm[j]];
    return eta;
}

State4 from_modal(const ModalTransform& tf, const Eigen::Vector4d& eta) {
    Eigen::Vector4d stacked;
    for (int j = 0; j < 4; ++j) stacked[tf.perm[j]] = eta[j];
    Eigen::Vector4d zv;
    zv.head<2>() = tf.t1 * stacked.head<2>();
    zv.tail<2>() = tf.t2 * stacked.tail<2>();
    return State4::from_vec(zv);
}

}  // namespace silverreach
