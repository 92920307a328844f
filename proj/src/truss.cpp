#include "blochband/truss.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>

namespace blochband {

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;
}

TrussSpectrum truss_frequencies(const TrussResonator& r) {
    r.validate();
    const double s2 = std::sin(r.beta) * std::sin(r.beta);
    const double c2 = std::cos(r.beta) * std::cos(r.beta);
    const double inv_m = 1.0 / r.m1 + 1.0 / r.m2;
    const double mass_ratio = (r.m1 - r.m2) / (r.m1 + r.m2);

    double disc = r.gamma1 * r.gamma1 +
                  4.0 * mass_ratio * mass_ratio * r.gamma * s2 * (r.gamma1 + r.gamma * s2);
    disc = std::max(disc, 0.0); // analytically nonnegative; guard rounding
    const double root = std::sqrt(disc);

    const double common = inv_m / (8.0 * kPi * kPi);
    TrussSpectrum out;
    out.fA = std::sqrt(common * (r.gamma1 + 2.0 * r.gamma * s2 + root));
    out.fB = std::sqrt(std::max(common * (r.gamma1 + 2.0 * r.gamma * s2 - root), 0.0));
    out.fC = std::sqrt(r.gamma * c2 / (2.0 * r.m1 * kPi * kPi));
    out.fD = std::sqrt(r.gamma * c2 / (2.0 * r.m2 * kPi * kPi));
    out.f_star = std::min({out.fB, out.fC, out.fD});
    return out;
}

namespace {

// Accumulates k * (e e^T) for a bar of direction e into the 2x2 block of a
// single free end; the other end is fixed.
void add_grounded_bar(Eigen::Matrix4d& K, int block, double k, double ex, double ey) {
    const int i = 2 * block;
    K(i, i) += k * ex * ex;
    K(i, i + 1) += k * ex * ey;
    K(i + 1, i) += k * ey * ex;
    K(i + 1, i + 1) += k * ey * ey;
}

Eigen::Matrix4d truss_stiffness(const TrussResonator& r) {
    const double s = std::sin(r.beta);
    const double c = std::cos(r.beta);
    Eigen::Matrix4d K = Eigen::Matrix4d::Zero();
    // Two diagonals per mass, at +/-beta from the vertical.
    add_grounded_bar(K, 0, r.gamma, s, c);
    add_grounded_bar(K, 0, r.gamma, -s, c);
    add_grounded_bar(K, 1, r.gamma, s, c);
    add_grounded_bar(K, 1, r.gamma, -s, c);
    // Horizontal bar between the masses couples the two x-DOFs.
    K(0, 0) += r.gamma1;
    K(2, 2) += r.gamma1;
    K(0, 2) -= r.gamma1;
    K(2, 0) -= r.gamma1;
    return K;
}

} // namespace

std::array<double, 4> truss_matrix_oracle(const TrussResonator& r) {
    r.validate();
    const Eigen::Matrix4d K = truss_stiffness(r);
    Eigen::Matrix4d M = Eigen::Matrix4d::Zero();
    M.diagonal() << r.m1, r.m1, r.m2, r.m2;

    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::Matrix4d> es(K, M);
    std::array<double, 4> f{};
    for (int i = 0; i < 4; ++i)
        f[i] = std::sqrt(std::max(es.eigenvalues()(i), 0.0)) / (2.0 * kPi);
    std::sort(f.begin(), f.end());
    return f;
}

std::array<double, 2> truss_vertical_mode_impurity(const TrussResonator& r) {
    r.validate();
    const Eigen::Matrix4d K = truss_stiffness(r);
    Eigen::Matrix4d M = Eigen::Matrix4d::Zero();
    M.diagonal() << r.m1, r.m1, r.m2, r.m2;
    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::Matrix4d> es(K, M);

    const TrussSpectrum ref = truss_frequencies(r);
    std::array<double, 2> impurity{0.0, 0.0};
    const std::array<double, 2> targets{ref.fC, ref.fD};
    for (int t = 0; t < 2; ++t) {
        int best = 0;
        double best_err = std::numeric_limits<double>::max();
        for (int i = 0; i < 4; ++i) {
            const double f = std::sqrt(std::max(es.eigenvalues()(i), 0.0)) / (2.0 * kPi);
            const double err = std::abs(f - targets[t]);
            if (err < best_err) {
                best_err = err;
                best = i;
            }
        }
        const Eigen::Vector4d v = es.eigenvectors().col(best);
        const double horiz = std::hypot(v(0), v(2));
        const double vert = std::hypot(v(1), v(3));
        impurity[t] = horiz / std::max(vert, 1e-300);
    }
    return impurity;
}

double tune_gamma1(const TrussResonator& r, double f_target_hz, double rel_tol) {
    r.validate();
    if (!(f_target_hz > 0.0))
        throw ConfigError("tune_gamma1: target frequency must be positive");

    auto fa_of = [&](double g1) {
        TrussResonator probe = r;
        probe.gamma1 = g1;
        return truss_frequencies(probe).fA;
    };

    const double fa_floor = fa_of(0.0);
    if (f_target_hz < fa_floor * (1.0 - 1e-12))
        throw InfeasibleTargetError(
            "tune_gamma1: target below the gamma1 = 0 frequency; achievable fA >= " +
                std::to_string(fa_floor) + " Hz",
            fa_floor, std::numeric_limits<double>::infinity());

    // Bracket: fA is monotone increasing in gamma1.
    double lo = 0.0;
    double hi = std::max(r.gamma1, r.gamma) + 1.0;
    while (fa_of(hi) < f_target_hz) {
        hi *= 2.0;
        if (!std::isfinite(hi))
            throw SolverError("tune_gamma1: bracketing overflow");
    }

    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double f = fa_of(mid);
        if (std::abs(f - f_target_hz) <= rel_tol * f_target_hz && it > 4) return mid;
        if (f < f_target_hz)
            lo = mid;
        else
            hi = mid;
        if (hi - lo <= 1e-16 * std::max(1.0, hi)) break;
    }
    return 0.5 * (lo + hi);
}

} // namespace blochband
