#include "silverreach/reachability.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/Dense>

namespace silverreach {

Gramian2 p_matrix(const CoupledSystem& sys) {
    const double q1 = 1.0 + sys.pi1 * sys.pi1;
    const double q2 = 1.0 + sys.pi2 * sys.pi2;
    return Gramian2{
        sys.v1 * sys.v1 * sys.pi1 * q1 / 8.0,
        sys.v1 * sys.v2 * sys.pi1 * sys.pi2 * std::sqrt(q1 * q2) / (4.0 * (sys.pi1 + sys.pi2)),
        sys.v2 * sys.v2 * sys.pi2 * q2 / 8.0,
    };
}

SetDescription reachable_set(const CoupledSystem& sys) {
    if (sys.pi1 == sys.pi2) {
        throw Error(ErrorCode::DegenerateSystem,
                    "equal time constants: the reachable set loses full dimension");
    }
    const ModalTransform tf = build_transform(sys);
    const Eigen::Matrix2d p = p_matrix(sys).matrix();

    // Shape matrix in grouped modal coordinates is diag(P, P); pull it back to
    // physical coordinates: Q = T Πᵀ diag(P, P) Π Tᵀ.
    Eigen::Matrix4d grouped = Eigen::Matrix4d::Zero();
    grouped.topLeftCorner<2, 2>() = p;
    grouped.bottomRightCorner<2, 2>() = p;
    const Eigen::Matrix4d perm = tf.permutation_matrix();
    const Eigen::Matrix4d t4 = tf.block_transform();
    Eigen::MatrixXd q = t4 * perm.transpose() * grouped * perm * t4.transpose();
    return SetDescription{SetKind::Ellipsoid4, Frame::Physical, std::move(q)};
}

VolumeReport volume_measures(const CoupledSystem& sys) {
    VolumeReport report;
    report.p = p_matrix(sys);

    const double core = sys.pi1 * sys.pi2 / 4.0 * (sys.pi1 - sys.pi2) / (sys.pi1 + sys.pi2);
    report.volume_measure = core * core * sys.v1 * sys.v1 * sys.v2 * sys.v2;

    const ModalTransform tf = build_transform(sys);
    const double det_t = tf.t1.determinant() * tf.t2.determinant();
    const double half_pi_sq = 0.5 * std::numbers::pi * std::numbers::pi;
    report.geometric_volume = half_pi_sq * std::max(0.0, report.p.det()) * std::abs(det_t);

    report.epsilon = std::min(sys.pi1, sys.pi2) / std::max(sys.pi1, sys.pi2);
    report.objective = ratio_objective(report.epsilon);
    return report;
}

double ratio_objective(double epsilon) {
    if (!(epsilon > 0.0) || epsilon > 1.0) {
        throw Error(ErrorCode::DomainError, "epsilon must lie in (0, 1]");
    }
    return epsilon * (1.0 - epsilon) / (1.0 + epsilon);
}

double golden_section_maximize(const std::function<double(double)>& f, double lo,
                               double hi, double tol, int max_iter) {
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo, b = hi;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = f(c), fd = f(d);
    for (int i = 0; i < max_iter && (b - a) > tol; ++i) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    double x = 0.5 * (a + b);

    // Near a smooth maximum the section comparisons drown in rounding noise
    // once the bracket is below sqrt(eps)·scale, so the plain midpoint stalls
    // around 1e-9·(hi-lo).  One parabolic vertex fit at a spacing where the
    // function differences are still well resolved recovers the lost digits.
    const double h = 1e-6 * (hi - lo);
    if (x - h > lo && x + h < hi) {
        const double f_lo = f(x - h), f_mid = f(x), f_hi = f(x + h);
        const double curvature = f_lo - 2.0 * f_mid + f_hi;
        if (curvature < 0.0) {
            const double shift = 0.5 * h * (f_lo - f_hi) / curvature;
            if (std::abs(shift) <= 10.0 * h) x += shift;
        }
    }
    return std::min(hi, std::max(lo, x));
}

OptimalRatio optimal_ratio() {
    const double analytic = std::sqrt(2.0) - 1.0;
    const double search =
        golden_section_maximize([](double e) { return ratio_objective(e); }, 1e-9, 1.0);
    return OptimalRatio{analytic, 1.0 + std::sqrt(2.0), search};
}

std::vector<SweepSample> sweep_objective(std::size_t n) {
    if (n < 2) throw Error(ErrorCode::InvalidArgument, "sweep needs at least 2 samples");
    std::vector<SweepSample> samples;
    samples.reserve(n);
    for (std::size_t k = 1; k <= n; ++k) {
        const double epsilon = static_cast<double>(k) / static_cast<double>(n);
        samples.push_back({epsilon, ratio_objective(epsilon)});
    }
    return samples;
}

}  // namespace silverreach
