#include "silverreach/synthesis.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <ostream>
#include <string>

#include <Eigen/Dense>

namespace silverreach {

namespace {

void require(bool ok, const char* message) {
    if (!ok) throw Error(ErrorCode::InvalidArgument, message);
}

struct Mode {
    double lambda;  // continuous pole: η̇ = λ η + gain·u
    double gain;
};

struct TwoSidedSolution {
    Eigen::VectorXd inputs;  // 2·n_side hold values on [−T, T)
    Eigen::MatrixXd modal;   // n_modes × (2·n_side + 1) state samples
    double energy = 0.0;
};

// Minimum-norm two-point solve in modal coordinates.  Each mode contributes a
// "reach" row (value cₘ at t = 0, starting from rest at −T) and a "kill" row
// (rest again at +T).  Rows are scaled so their coefficients decay in the
// mode's stable time direction; scaling a row together with its right-hand
// side leaves the solution set unchanged but keeps the normal equations well
// conditioned under the e^{±λT} dynamic range.
TwoSidedSolution solve_two_sided(const std::vector<Mode>& modes,
                                 const Eigen::VectorXd& targets, int n_side,
                                 double dt) {
    const int n_modes = static_cast<int>(modes.size());
    const int n_inputs = 2 * n_side;
    const int k0 = n_side;  // sample index of t = 0

    Eigen::MatrixXd g = Eigen::MatrixXd::Zero(2 * n_modes, n_inputs);
    Eigen::VectorXd rhs(2 * n_modes);

    for (int m = 0; m < n_modes; ++m) {
        const double a = std::exp(modes[m].lambda * dt);
        const double gd = modes[m].gain * (a - 1.0) / modes[m].lambda;
        const double c = targets[m];
        const int reach = 2 * m;
        const int kill = 2 * m + 1;
        if (a > 1.0) {
            // reach row scaled by a^{1−k0}: coefficients gd·a^{−k}
            double w = gd;
            for (int k = 0; k < k0; ++k) {
                g(reach, k) = w;
                w /= a;
            }
            rhs[reach] = c * std::pow(a, 1 - k0);
            // kill row scaled by a^{k0−N}: coefficients gd·a^{k0−1−k}
            w = gd / a;
            for (int k = k0; k < n_inputs; ++k) {
                g(kill, k) = w;
                w /= a;
            }
            rhs[kill] = -c;
        } else {
            // reach row: coefficients gd·a^{k0−1−k}, largest near t = 0⁻
            double w = gd;
            for (int k = k0 - 1; k >= 0; --k) {
                g(reach, k) = w;
                w *= a;
            }
            rhs[reach] = c;
            // kill row: coefficients gd·a^{N−1−k}, largest near t = T⁻
            w = gd;
            for (int k = n_inputs - 1; k >= k0; --k) {
                g(kill, k) = w;
                w *= a;
            }
            rhs[kill] = -c * std::pow(a, n_side);
        }
    }

    const Eigen::MatrixXd gram = g * g.transpose();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(gram);
    const Eigen::VectorXd evals = es.eigenvalues();
    const Eigen::MatrixXd evecs = es.eigenvectors();
    const double s_max = std::sqrt(std::max(0.0, evals.maxCoeff()));
    const double s_cut = 1e-10 * s_max;

    auto pinv_apply = [&](const Eigen::VectorXd& y) {
        Eigen::VectorXd out = Eigen::VectorXd::Zero(y.size());
        for (int i = 0; i < evals.size(); ++i) {
            if (std::sqrt(std::max(0.0, evals[i])) > s_cut) {
                out += (evecs.col(i).dot(y) / evals[i]) * evecs.col(i);
            }
        }
        return out;
    };

    // A right-hand side with weight on a dropped direction cannot be met.
    for (int i = 0; i < evals.size(); ++i) {
        if (std::sqrt(std::max(0.0, evals[i])) <= s_cut &&
            std::abs(evecs.col(i).dot(rhs)) > 1e-9 * (1.0 + rhs.norm())) {
            throw Error(ErrorCode::InfeasibleDiscretization,
                        "constraint map is rank deficient and cannot represent the target");
        }
    }

    Eigen::VectorXd u = g.transpose() * pinv_apply(rhs);
    for (int pass = 0; pass < 2; ++pass) {
        const Eigen::VectorXd residual = rhs - g * u;
        u += g.transpose() * pinv_apply(residual);
    }

    TwoSidedSolution sol;
    sol.inputs = u;
    sol.modal.resize(n_modes, n_inputs + 1);
    for (int m = 0; m < n_modes; ++m) {
        const double a = std::exp(modes[m].lambda * dt);
        const double gd = modes[m].gain * (a - 1.0) / modes[m].lambda;
        if (modes[m].lambda > 0.0) {
            // Backward recursion is the contracting direction for an unstable
            // mode; it pins the +T endpoint exactly.
            sol.modal(m, n_inputs) = 0.0;
            for (int k = n_inputs - 1; k >= 0; --k) {
                sol.modal(m, k) = (sol.modal(m, k + 1) - gd * u[k]) / a;
            }
        } else {
            sol.modal(m, 0) = 0.0;
            for (int k = 0; k < n_inputs; ++k) {
                sol.modal(m, k + 1) = a * sol.modal(m, k) + gd * u[k];
            }
        }
    }
    sol.energy = dt * u.squaredNorm();
    return sol;
}

void check_residuals(double err_mid, double err_start, double err_end, double target_norm) {
    if (err_mid > 1e-6 * (1.0 + target_norm) || err_start > 1e-6 || err_end > 1e-6) {
        throw Error(ErrorCode::HorizonTooShort,
                    "boundary residuals exceed tolerance after solve");
    }
}

void validate_grid(double horizon, double dt) {
    require(std::isfinite(horizon) && horizon > 0.0, "horizon must be positive");
    require(std::isfinite(dt) && dt > 0.0, "dt must be positive");
    require(dt <= horizon / 50.0, "dt must not exceed horizon/50");
}

void append_csv_double(std::string& out, double v) {
    char buf[32];
    const auto result = std::to_chars(buf, buf + sizeof buf, v);
    out.append(buf, result.ptr);
}

}  // namespace

ZohStep discretize(const CoupledSystem& sys, double dt) {
    require(std::isfinite(dt) && dt > 0.0, "dt must be positive");
    auto block = [dt](double pi, double v, Eigen::Matrix2d& a, Eigen::Vector2d& b) {
        const double c = std::cosh(pi * dt);
        const double s = std::sinh(pi * dt);
        a << c, s / pi, pi * s, c;
        b << v * (c - 1.0), v * pi * s;
    };
    ZohStep step;
    step.dt = dt;
    step.a.setZero();
    Eigen::Matrix2d a1, a2;
    Eigen::Vector2d b1, b2;
    block(sys.pi1, sys.v1, a1, b1);
    block(sys.pi2, sys.v2, a2, b2);
    step.a.topLeftCorner<2, 2>() = a1;
    step.a.bottomRightCorner<2, 2>() = a2;
    step.b.head<2>() = b1;
    step.b.tail<2>() = b2;
    return step;
}

SynthesisProblem::SynthesisProblem(CoupledSystem system, State4 target, double horizon,
                                   double dt)
    : system(system), target(target), horizon(horizon), dt(dt) {
    validate_grid(horizon, dt);
    require(target.vec().allFinite(), "target state must be finite");
}

Trajectory synthesize_min_energy(const SynthesisProblem& problem) {
    const CoupledSystem& sys = problem.system;
    const ModalTransform tf = build_transform(sys);
    const ModalPairs pairs = modal_pairs(sys);
    const int n_side = static_cast<int>(std::llround(problem.horizon / problem.dt));
    const double dt = problem.dt;

    // Grouped modal order (u₁, u₂, s₁, s₂), matching to_modal.
    const std::vector<Mode> modes = {
        {sys.pi1, pairs.unstable.beta1},
        {sys.pi2, pairs.unstable.beta2},
        {-sys.pi1, pairs.stable.beta1},
        {-sys.pi2, pairs.stable.beta2},
    };
    const Eigen::Vector4d targets = to_modal(tf, problem.target);
    const TwoSidedSolution sol = solve_two_sided(modes, targets, n_side, dt);

    Trajectory traj;
    const int n_samples = 2 * n_side + 1;
    traj.times.resize(n_samples);
    traj.inputs.resize(n_samples);
    traj.states.resize(n_samples);
    for (int k = 0; k < n_samples; ++k) {
        traj.times[k] = (k - n_side) * dt;
        traj.inputs[k] = k < n_samples - 1 ? sol.inputs[k] : 0.0;
        traj.states[k] = from_modal(tf, Eigen::Vector4d(sol.modal.col(k)));
    }
    traj.energy = sol.energy;

    const double target_norm = problem.target.vec().norm();
    check_residuals((traj.states[n_side].vec() - problem.target.vec()).norm(),
                    traj.states.front().vec().norm(), traj.states.back().vec().norm(),
                    target_norm);
    return traj;
}

PairTrajectory synthesize_pair_min_energy(const FirstOrderPair& sys,
                                          const Eigen::Vector2d& target,
                                          double horizon, double dt) {
    validate_grid(horizon, dt);
    require(target.allFinite(), "target state must be finite");
    const int n_side = static_cast<int>(std::llround(horizon / dt));

    const std::vector<Mode> modes = {
        {-sys.alpha1, sys.beta1},
        {-sys.alpha2, sys.beta2},
    };
    const TwoSidedSolution sol = solve_two_sided(modes, target, n_side, dt);

    PairTrajectory traj;
    const int n_samples = 2 * n_side + 1;
    traj.times.resize(n_samples);
    traj.inputs.resize(n_samples);
    traj.states.resize(n_samples);
    for (int k = 0; k < n_samples; ++k) {
        traj.times[k] = (k - n_side) * dt;
        traj.inputs[k] = k < n_samples - 1 ? sol.inputs[k] : 0.0;
        traj.states[k] = sol.modal.col(k);
    }
    traj.energy = sol.energy;

    check_residuals((traj.states[n_side] - target).norm(), traj.states.front().norm(),
                    traj.states.back().norm(), target.norm());
    return traj;
}

Trajectory simulate(const CoupledSystem& sys, std::span<const double> u, const State4& z0,
                    double dt, double t_start) {
    const ZohStep step = discretize(sys, dt);
    const int n = static_cast<int>(u.size());

    Trajectory traj;
    traj.times.resize(n + 1);
    traj.inputs.resize(n + 1);
    traj.states.resize(n + 1);

    Eigen::Vector4d z = z0.vec();
    for (int k = 0; k < n; ++k) {
        traj.times[k] = t_start + k * dt;
        traj.inputs[k] = u[k];
        traj.states[k] = State4::from_vec(z);
        z = step.a * z + step.b * u[k];
        traj.energy += u[k] * u[k] * dt;
    }
    traj.times[n] = t_start + n * dt;
    traj.inputs[n] = 0.0;
    traj.states[n] = State4::from_vec(z);
    return traj;
}

double energy_of(const Trajectory& traj) {
    require(traj.times.size() == traj.inputs.size() &&
                traj.times.size() == traj.states.size(),
            "trajectory arrays must have equal length");
    double sum = 0.0;
    for (std::size_t k = 0; k + 1 < traj.times.size(); ++k) {
        const double dt = traj.times[k + 1] - traj.times[k];
        sum += 0.5 * (traj.inputs[k] * traj.inputs[k] +
                      traj.inputs[k + 1] * traj.inputs[k + 1]) * dt;
    }
    return sum;
}

void write_csv(std::ostream& os, const Trajectory& traj) {
    os << "t,u,x1,dx1,x2,dx2\n";
    std::string line;
    for (std::size_t k = 0; k < traj.times.size(); ++k) {
        line.clear();
        append_csv_double(line, traj.times[k]);
        line.push_back(',');
        append_csv_double(line, traj.inputs[k]);
        line.push_back(',');
        append_csv_double(line, traj.states[k].x1);
        line.push_back(',');
        append_csv_double(line, traj.states[k].dx1);
        line.push_back(',');
        append_csv_double(line, traj.states[k].x2);
        line.push_back(',');
        append_csv_double(line, traj.states[k].dx2);
        line.push_back('\n');
        os << line;
    }
}

}  // namespace silverreach
