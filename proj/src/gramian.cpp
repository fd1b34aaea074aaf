#include "silverreach/gramian.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include <Eigen/Dense>

namespace silverreach {

namespace {

constexpr double kHorizonCap = 1e6;      // [s] before declaring non-convergence
constexpr int kMaxPanelDoublings = 20;   // composite quadrature refinement cap

// 8-point Gauss–Legendre nodes/weights on [-1, 1].
constexpr std::array<double, 4> kGlNodes = {
    0.1834346424956498, 0.5255324099163290, 0.7966664774136267, 0.9602898564975363};
constexpr std::array<double, 4> kGlWeights = {
    0.3626837833783620, 0.3137066458778873, 0.2223810344533745, 0.1012285362903763};

void require_same_sign(const FirstOrderPair& sys) {
    if (classify(sys) == StabilityClass::Mixed) {
        throw Error(ErrorCode::MixedClass,
                    "pair has one stable and one unstable mode; use mixed_set");
    }
}

}  // namespace

Eigen::Matrix2d Gramian2::matrix() const {
    Eigen::Matrix2d w;
    w << w11, w12, w12, w22;
    return w;
}

double Gramian2::det() const {
    const double p = w12 * w12;
    const double rounding = std::fma(w12, w12, -p);
    return std::fma(w11, w22, -p) - rounding;
}

double SetDescription::membership(const Eigen::VectorXd& x) const {
    const Eigen::VectorXd y = form.ldlt().solve(x);
    return x.dot(y);
}

double SetDescription::sqrt_det() const {
    return std::sqrt(std::max(0.0, form.determinant()));
}

Gramian2 gramian_closed_form(const FirstOrderPair& sys) {
    require_same_sign(sys);
    const double a1 = std::abs(sys.alpha1);
    const double a2 = std::abs(sys.alpha2);
    return Gramian2{
        sys.beta1 * sys.beta1 / (2.0 * a1),
        sys.beta1 * sys.beta2 / (a1 + a2),
        sys.beta2 * sys.beta2 / (2.0 * a2),
    };
}

Gramian2 gramian_quadrature(const FirstOrderPair& sys, double rtol) {
    require_same_sign(sys);
    if (!(rtol > 0.0) || rtol > 1e-4) {
        throw Error(ErrorCode::InvalidArgument, "rtol must lie in (0, 1e-4]");
    }
    const double a1 = std::abs(sys.alpha1);
    const double a2 = std::abs(sys.alpha2);
    const double a_min = std::min(a1, a2);

    // Truncation horizon: the tail of every entry is bounded by
    // exp(-2 a_min T) relative, kept two orders below rtol.
    const double horizon = std::log(100.0 / rtol) / (2.0 * a_min);
    if (horizon > kHorizonCap) {
        throw Error(ErrorCode::NonConvergence, "quadrature horizon exceeds cap");
    }

    const double r11 = 2.0 * a1, r12 = a1 + a2, r22 = 2.0 * a2;
    const double c11 = sys.beta1 * sys.beta1;
    const double c12 = sys.beta1 * sys.beta2;
    const double c22 = sys.beta2 * sys.beta2;

    auto composite = [&](int panels) {
        double s11 = 0.0, s12 = 0.0, s22 = 0.0;
        const double h = horizon / panels;
        for (int p = 0; p < panels; ++p) {
            const double mid = (p + 0.5) * h;
            for (std::size_t i = 0; i < kGlNodes.size(); ++i) {
                for (const double sign : {-1.0, 1.0}) {
                    const double t = mid + sign * 0.5 * h * kGlNodes[i];
                    const double w = 0.5 * h * kGlWeights[i];
                    s11 += w * c11 * std::exp(-r11 * t);
                    s12 += w * c12 * std::exp(-r12 * t);
                    s22 += w * c22 * std::exp(-r22 * t);
                }
            }
        }
        return Gramian2{s11, s12, s22};
    };

    Gramian2 prev = composite(2);
    int panels = 2;
    for (int pass = 0; pass < kMaxPanelDoublings; ++pass) {
        panels *= 2;
        const Gramian2 next = composite(panels);
        const double diff = std::max(
            {std::abs(next.w11 - prev.w11) / std::max(std::abs(next.w11), 1e-300),
             std::abs(next.w12 - prev.w12) / std::max(std::abs(next.w12), 1e-300),
             std::abs(next.w22 - prev.w22) / std::max(std::abs(next.w22), 1e-300)});
        if (diff < rtol / 10.0) return next;
        prev = next;
    }
    throw Error(ErrorCode::NonConvergence, "quadrature did not settle within the panel cap");
}

double area_measure(const FirstOrderPair& sys) {
    require_same_sign(sys);
    const double a1 = std::abs(sys.alpha1);
    const double a2 = std::abs(sys.alpha2);
    if (a1 == a2) return 0.0;  // ellipse collapses to a segment
    return std::abs(sys.beta1 * sys.beta2) / (2.0 * std::sqrt(a1 * a2)) *
           std::abs(a1 - a2) / (a1 + a2);
}

SetDescription mixed_set(const FirstOrderPair& sys) {
    if (classify(sys) != StabilityClass::Mixed) {
        throw Error(ErrorCode::NotMixed, "both modes share a sign; use the Gramian ellipse");
    }
    Eigen::MatrixXd q = Eigen::MatrixXd::Zero(2, 2);
    q(0, 0) = sys.beta1 * sys.beta1 / (2.0 * std::abs(sys.alpha1));
    q(1, 1) = sys.beta2 * sys.beta2 / (2.0 * std::abs(sys.alpha2));
    return SetDescription{SetKind::AxisAlignedEllipse2, Frame::Modal, std::move(q)};
}

SetDescription unit_energy_set(const FirstOrderPair& sys) {
    if (classify(sys) == StabilityClass::Mixed) return mixed_set(sys);
    return SetDescription{SetKind::Ellipse2, Frame::Modal, gramian_closed_form(sys).matrix()};
}

double min_energy_to_reach(const FirstOrderPair& sys, const Eigen::Vector2d& target) {
    const Eigen::Matrix2d w = gramian_closed_form(sys).matrix();
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(w);
    const double rank_tol = 1e-10 * es.eigenvalues().cwiseAbs().maxCoeff();
    double energy = 0.0;
    for (int i = 0; i < 2; ++i) {
        const double lambda = es.eigenvalues()[i];
        const double coeff = es.eigenvectors().col(i).dot(target);
        if (lambda > rank_tol) {
            energy += coeff * coeff / lambda;
        } else if (std::abs(coeff) > 1e-10 * (1.0 + target.norm())) {
            throw Error(ErrorCode::SingularGramian,
                        "target lies outside the range of the singular Gramian");
        }
    }
    return energy;
}

}  // namespace silverreach
