#include <cmath>
#include <random>

#include <doctest.h>
#include <Eigen/Dense>

#include "silverreach/decomposition.hpp"

using namespace silverreach;

namespace {

Eigen::Matrix2d drift(double pi) {
    Eigen::Matrix2d a;
    a << 0.0, 1.0, pi * pi, 0.0;
    return a;
}

}  // namespace

TEST_CASE("transform matches the closed form at pi = 1") {
    const ModalTransform tf = build_transform(CoupledSystem(1, 2, 1, 1));
    const double s = 1.0 / std::sqrt(2.0);
    CHECK(tf.t1(0, 0) == doctest::Approx(s).epsilon(1e-15));
    CHECK(tf.t1(0, 1) == doctest::Approx(s).epsilon(1e-15));
    CHECK(tf.t1(1, 0) == doctest::Approx(s).epsilon(1e-15));
    CHECK(tf.t1(1, 1) == doctest::Approx(-s).epsilon(1e-15));
}

TEST_CASE("transform diagonalizes the drift: pi = 2 example") {
    const ModalTransform tf = build_transform(CoupledSystem(2, 3, 1, 1));
    // independent route: Eigen inverse, not the library decomposition
    const Eigen::Matrix2d d = tf.t1.inverse() * drift(2.0) * tf.t1;
    CHECK(d(0, 0) == doctest::Approx(2.0).epsilon(1e-13));
    CHECK(d(1, 1) == doctest::Approx(-2.0).epsilon(1e-13));
    CHECK(std::abs(d(0, 1)) < 1e-12);
    CHECK(std::abs(d(1, 0)) < 1e-12);
}

TEST_CASE("transform determinant is -2pi/(1+pi^2)") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> pi_dist(1e-2, 10.0);
    for (int trial = 0; trial < 100; ++trial) {
        const double pi = pi_dist(rng);
        const ModalTransform tf = build_transform(CoupledSystem(pi, 1.0, 1, 1));
        CHECK(tf.t1.determinant() ==
              doctest::Approx(-2.0 * pi / (1.0 + pi * pi)).epsilon(1e-13));
    }
}

TEST_CASE("eigen-decoupling and the modal input column on random systems") {
    std::mt19937 rng(99);
    std::uniform_real_distribution<double> pi_dist(1e-2, 10.0);
    for (int trial = 0; trial < 100; ++trial) {
        const double pi1 = pi_dist(rng), pi2 = pi_dist(rng);
        const ModalTransform tf = build_transform(CoupledSystem(pi1, pi2, 1, 1));

        for (auto [t, pi] : {std::pair{tf.t1, pi1}, std::pair{tf.t2, pi2}}) {
            const Eigen::Matrix2d d = t.inverse() * drift(pi) * t;
            CHECK(d(0, 0) == doctest::Approx(pi).epsilon(1e-12));
            CHECK(d(1, 1) == doctest::Approx(-pi).epsilon(1e-12));
            CHECK(std::abs(d(0, 1)) < 1e-12 * (1.0 + pi * pi));
            CHECK(std::abs(d(1, 0)) < 1e-12 * (1.0 + pi * pi));

            // modal input column: (sqrt(1+pi^2)/2) * (pi, -pi)
            const Eigen::Vector2d b(0.0, pi * pi);
            const Eigen::Vector2d modal = t.inverse() * b;
            const double scale = std::sqrt(1.0 + pi * pi) / 2.0;
            CHECK(modal[0] == doctest::Approx(scale * pi).epsilon(1e-12));
            CHECK(modal[1] == doctest::Approx(-scale * pi).epsilon(1e-12));
        }
    }
}

TEST_CASE("permutation matrix is a true permutation") {
    const ModalTransform tf = build_transform(CoupledSystem(1, 2, 1, 1));
    const Eigen::Matrix4d p = tf.permutation_matrix();
    CHECK(std::abs(std::abs(p.determinant()) - 1.0) < 1e-15);
    CHECK((p * p.transpose() - Eigen::Matrix4d::Identity()).norm() < 1e-15);
}

TEST_CASE("to_modal groups unstable coordinates first") {
    const ModalTransform tf = build_transform(CoupledSystem(1, 2, 1, 1));

    CHECK(to_modal(tf, State4{}).norm() == 0.0);

    // z = (1,1,0,0): t1^{-1} (1,1) = (sqrt(2), 0), subsystem 2 untouched
    const Eigen::Vector4d eta = to_modal(tf, State4{1, 1, 0, 0});
    CHECK(eta[0] == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
    CHECK(std::abs(eta[1]) < 1e-14);
    CHECK(std::abs(eta[2]) < 1e-14);
    CHECK(std::abs(eta[3]) < 1e-14);
}

TEST_CASE("from_modal matches the dense matrix route") {
    const ModalTransform tf = build_transform(CoupledSystem(1.3, 0.4, 1, 1));
    const Eigen::Matrix4d dense = tf.block_transform() * tf.permutation_matrix().transpose();
    for (int j = 0; j < 4; ++j) {
        const Eigen::Vector4d eta = Eigen::Vector4d::Unit(j);
        const Eigen::Vector4d z = from_modal(tf, eta).vec();
        CHECK((z - dense.col(j)).norm() < 1e-15);
    }
}

TEST_CASE("modal round-trip is the identity") {
    std::mt19937 rng(42);
    std::uniform_real_distribution<double> pi_dist(1e-2, 10.0);
    std::normal_distribution<double> state_dist(0.0, 3.0);
    for (int trial = 0; trial < 100; ++trial) {
        const CoupledSystem sys(pi_dist(rng), pi_dist(rng), 1, 1);
        const ModalTransform tf = build_transform(sys);
        const State4 z{state_dist(rng), state_dist(rng), state_dist(rng), state_dist(rng)};
        const State4 back = from_modal(tf, to_modal(tf, z));
        CHECK((back.vec() - z.vec()).norm() < 1e-12 * (1.0 + z.vec().norm()));
        CHECK(from_modal(tf, Eigen::Vector4d::Zero()).vec().norm() == 0.0);
    }
}
