#include <cmath>
#include <numbers>
#include <random>

#include <doctest.h>
#include <Eigen/Dense>

#include "silverreach/reachability.hpp"

using namespace silverreach;

TEST_CASE("P matrix: frozen values and the modal-pair identity") {
    const CoupledSystem sys(1, 2, 1, 1);
    const Gramian2 p = p_matrix(sys);
    CHECK(p.w11 == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(p.w12 == doctest::Approx(std::sqrt(10.0) / 6.0).epsilon(1e-15));
    CHECK(p.w22 == doctest::Approx(1.25).epsilon(1e-15));

    // second route: Gramian of the stable modal pair
    const Gramian2 via_pair = gramian_closed_form(modal_pairs(sys).stable);
    CHECK(p.w11 == doctest::Approx(via_pair.w11).epsilon(1e-14));
    CHECK(p.w12 == doctest::Approx(via_pair.w12).epsilon(1e-14));
    CHECK(p.w22 == doctest::Approx(via_pair.w22).epsilon(1e-14));

    CHECK(std::abs(p_matrix(CoupledSystem(1, 1, 1, 1)).det()) < 1e-15);

    // gains scale entries by v_i v_j
    const Gramian2 scaled = p_matrix(CoupledSystem(1, 2, 2, 3));
    CHECK(scaled.w11 == doctest::Approx(4.0 * p.w11).epsilon(1e-14));
    CHECK(scaled.w12 == doctest::Approx(6.0 * p.w12).epsilon(1e-14));
    CHECK(scaled.w22 == doctest::Approx(9.0 * p.w22).epsilon(1e-14));
}

TEST_CASE("P matrix equals the stable-pair Gramian on random systems") {
    std::mt19937 rng(1123);
    std::uniform_real_distribution<double> pi_dist(0.05, 10.0);
    std::uniform_real_distribution<double> v_dist(0.2, 4.0);
    for (int trial = 0; trial < 100; ++trial) {
        const CoupledSystem sys(pi_dist(rng), pi_dist(rng), v_dist(rng), -v_dist(rng));
        const Gramian2 p = p_matrix(sys);
        const Gramian2 via_pair = gramian_closed_form(modal_pairs(sys).stable);
        CHECK(p.w11 == doctest::Approx(via_pair.w11).epsilon(1e-12));
        CHECK(p.w12 == doctest::Approx(via_pair.w12).epsilon(1e-12));
        CHECK(p.w22 == doctest::Approx(via_pair.w22).epsilon(1e-12));
    }
}

TEST_CASE("reachable set: membership, boundary, and degeneracy") {
    const CoupledSystem sys(1, 2, 1, 1);
    const SetDescription set = reachable_set(sys);
    CHECK(set.kind == SetKind::Ellipsoid4);
    CHECK(set.frame == Frame::Physical);

    CHECK(set.membership(Eigen::Vector4d::Zero()) == doctest::Approx(0.0));

    // boundary point built from P's eigenvectors: unstable block on the
    // P-ellipse boundary, stable block zero
    const ModalTransform tf = build_transform(sys);
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(p_matrix(sys).matrix());
    for (int i = 0; i < 2; ++i) {
        const Eigen::Vector2d c = std::sqrt(es.eigenvalues()[i]) * es.eigenvectors().col(i);
        Eigen::Vector4d eta = Eigen::Vector4d::Zero();
        eta[0] = c[0];
        eta[1] = c[1];
        const State4 z = from_modal(tf, eta);
        CHECK(set.membership(z.vec()) == doctest::Approx(1.0).epsilon(1e-10));
    }

    CHECK_THROWS_AS(reachable_set(CoupledSystem(1, 1, 1, 1)), Error);
    try {
        reachable_set(CoupledSystem(1, 1, 1, 1));
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::DegenerateSystem);
    }
}

TEST_CASE("reachable set membership matches the dense pullback") {
    const CoupledSystem sys(0.7, 2.4, 1.5, -0.5);
    const SetDescription set = reachable_set(sys);
    const ModalTransform tf = build_transform(sys);

    // independent route: M = T^{-T} Pi' diag(P^{-1}, P^{-1}) Pi T^{-1}
    const Eigen::Matrix2d pinv = p_matrix(sys).matrix().inverse();
    Eigen::Matrix4d grouped = Eigen::Matrix4d::Zero();
    grouped.topLeftCorner<2, 2>() = pinv;
    grouped.bottomRightCorner<2, 2>() = pinv;
    const Eigen::Matrix4d perm = tf.permutation_matrix();
    const Eigen::Matrix4d tinv = tf.block_transform().inverse();
    const Eigen::Matrix4d m = tinv.transpose() * perm.transpose() * grouped * perm * tinv;

    std::mt19937 rng(5);
    std::normal_distribution<double> dist(0.0, 1.0);
    for (int trial = 0; trial < 50; ++trial) {
        const Eigen::Vector4d z(dist(rng), dist(rng), dist(rng), dist(rng));
        CHECK(set.membership(z) == doctest::Approx(z.dot(m * z)).epsilon(1e-9));
    }
}

TEST_CASE("volume measures: frozen silver-point value and degenerate zero") {
    const VolumeReport at_silver = volume_measures(CoupledSystem(1, 1 + std::sqrt(2.0), 1, 1));
    CHECK(at_silver.volume_measure == doctest::Approx(0.0625).epsilon(1e-12));

    CHECK(volume_measures(CoupledSystem(1, 1, 1, 1)).volume_measure == 0.0);
    CHECK(volume_measures(CoupledSystem(1, 1, 1, 1)).epsilon == 1.0);
}

TEST_CASE("volume measure scales as k^4 and as v1^2 v2^2") {
    std::mt19937 rng(8);
    std::uniform_real_distribution<double> pi_dist(0.05, 10.0);
    for (const double k : {0.1, 2.0, 7.0}) {
        for (int trial = 0; trial < 20; ++trial) {
            const double pi1 = pi_dist(rng), pi2 = pi_dist(rng);
            const double base = volume_measures(CoupledSystem(pi1, pi2, 1, 1)).volume_measure;
            const double scaled =
                volume_measures(CoupledSystem(k * pi1, k * pi2, 1, 1)).volume_measure;
            CHECK(scaled == doctest::Approx(std::pow(k, 4) * base).epsilon(1e-10));
        }
    }

    const double base = volume_measures(CoupledSystem(1, 2, 1, 1)).volume_measure;
    const double gained = volume_measures(CoupledSystem(1, 2, 3, -2)).volume_measure;
    CHECK(gained == doctest::Approx(36.0 * base).epsilon(1e-12));
}

TEST_CASE("volume identity: det(P) det(T1) det(T2) equals the closed form") {
    std::mt19937 rng(13);
    std::uniform_real_distribution<double> pi_dist(1e-3, 10.0);
    for (int trial = 0; trial < 100; ++trial) {
        const double pi1 = pi_dist(rng), pi2 = pi_dist(rng);
        if (std::abs(pi1 - pi2) < 1e-3) continue;
        const CoupledSystem sys(pi1, pi2, 1, 1);
        const ModalTransform tf = build_transform(sys);
        const double lhs =
            p_matrix(sys).det() * tf.t1.determinant() * tf.t2.determinant();
        CHECK(lhs == doctest::Approx(volume_measures(sys).volume_measure).epsilon(1e-10));
    }
}

TEST_CASE("volume report is symmetric under swapping the subsystems") {
    const VolumeReport a = volume_measures(CoupledSystem(0.8, 3.1, 2.0, -1.2));
    const VolumeReport b = volume_measures(CoupledSystem(3.1, 0.8, -1.2, 2.0));
    CHECK(a.volume_measure == doctest::Approx(b.volume_measure).epsilon(1e-13));
    CHECK(a.geometric_volume == doctest::Approx(b.geometric_volume).epsilon(1e-13));
    CHECK(a.epsilon == doctest::Approx(b.epsilon).epsilon(1e-15));
}

TEST_CASE("geometric volume matches the shape-matrix determinant route") {
    const CoupledSystem sys(0.9, 2.2, 1.0, 1.0);
    const double expected =
        0.5 * std::numbers::pi * std::numbers::pi * reachable_set(sys).sqrt_det();
    CHECK(volume_measures(sys).geometric_volume == doctest::Approx(expected).epsilon(1e-11));
}

TEST_CASE("ratio objective: values and domain") {
    CHECK(ratio_objective(1.0) == 0.0);
    CHECK(ratio_objective(0.5) == doctest::Approx(1.0 / 6.0).epsilon(1e-15));
    // f(sqrt(2)-1) = (sqrt(2)-1)^2 = 3 - 2 sqrt(2)
    CHECK(ratio_objective(std::sqrt(2.0) - 1.0) ==
          doctest::Approx(3.0 - 2.0 * std::sqrt(2.0)).epsilon(1e-15));

    CHECK_THROWS_AS(ratio_objective(0.0), Error);
    CHECK_THROWS_AS(ratio_objective(-0.2), Error);
    CHECK_THROWS_AS(ratio_objective(1.0 + 1e-9), Error);
    try {
        ratio_objective(0.0);
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::DomainError);
    }
}

TEST_CASE("objective is concave on (0, 1]") {
    std::mt19937 rng(21);
    std::uniform_real_distribution<double> dist(1e-6, 1.0);
    for (int trial = 0; trial < 1000; ++trial) {
        const double a = dist(rng), b = dist(rng);
        const double mid = ratio_objective(0.5 * (a + b));
        CHECK(mid >= 0.5 * (ratio_objective(a) + ratio_objective(b)) - 1e-12);
    }
}

TEST_CASE("optimal ratio: analytic root, search agreement, reciprocity") {
    const OptimalRatio opt = optimal_ratio();
    CHECK(opt.epsilon_star == doctest::Approx(0.41421356237309515).epsilon(1e-15));
    CHECK(opt.delta_s == doctest::Approx(2.414213562373095).epsilon(1e-15));
    CHECK(std::abs(opt.epsilon_star_search - opt.epsilon_star) < 1e-10);
    CHECK(opt.epsilon_star * opt.delta_s == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("objective sweep: grid layout and extremes") {
    const auto five = sweep_objective(5);
    REQUIRE(five.size() == 5);
    for (std::size_t k = 0; k < 5; ++k) {
        CHECK(five[k].epsilon == doctest::Approx(0.2 * (k + 1)).epsilon(1e-15));
    }
    CHECK(five.back().objective == 0.0);

    const auto fine = sweep_objective(100000);
    double best = -1.0, best_eps = 0.0;
    for (const auto& s : fine) {
        CHECK(s.objective >= 0.0);
        CHECK(s.objective <= 0.1716);
        if (s.objective > best) {
            best = s.objective;
            best_eps = s.epsilon;
        }
    }
    // grid argmax lands within 2/n of the true maximizer
    CHECK(std::abs(best_eps - (std::sqrt(2.0) - 1.0)) < 2.0 / 100000);

    // unimodal: increasing before the peak, decreasing after
    bool rising = true;
    for (std::size_t k = 1; k < fine.size(); ++k) {
        if (fine[k].objective < fine[k - 1].objective) rising = false;
        if (!rising) CHECK(fine[k].objective <= fine[k - 1].objective + 1e-15);
    }

    CHECK_THROWS_AS(sweep_objective(1), Error);
}

TEST_CASE("volume argmax over pi1 sits at pi2/delta_s for any gains") {
    const double pi2 = 3.0;
    for (const auto [v1, v2] : {std::pair{1.0, 1.0}, std::pair{2.0, -3.0}}) {
        auto objective = [&](double pi1) {
            return volume_measures(CoupledSystem(pi1, pi2, v1, v2)).volume_measure;
        };
        const double argmax = golden_section_maximize(objective, 1e-6, pi2 - 1e-9, 1e-12, 300);
        CHECK(argmax == doctest::Approx(pi2 / (1.0 + std::sqrt(2.0))).epsilon(1e-7));
    }
}
