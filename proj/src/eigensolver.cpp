#include "blochband/eigensolver.hpp"

#include <Eigen/SparseLU>
#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

namespace blochband {

namespace {

using cd = std::complex<double>;

double diag_scale(const Eigen::SparseMatrix<cd>& k, const Eigen::SparseMatrix<cd>& m) {
    double sk = 0.0, sm = 0.0;
    for (int i = 0; i < k.rows(); ++i) sk += std::abs(k.coeff(i, i).real());
    for (int i = 0; i < m.rows(); ++i) sm += std::abs(m.coeff(i, i).real());
    return sm > 0.0 ? sk / sm : 1.0;
}

template <typename Scalar>
Eigen::SparseMatrix<Scalar> to_scalar(const Eigen::SparseMatrix<cd>& a);

template <>
Eigen::SparseMatrix<cd> to_scalar<cd>(const Eigen::SparseMatrix<cd>& a) {
    return a;
}

template <>
Eigen::SparseMatrix<double> to_scalar<double>(const Eigen::SparseMatrix<cd>& a) {
    return a.real();
}

bool is_numerically_real(const Eigen::SparseMatrix<cd>& a) {
    for (int k = 0; k < a.outerSize(); ++k)
        for (Eigen::SparseMatrix<cd>::InnerIterator it(a, k); it; ++it)
            if (it.value().imag() != 0.0) return false;
    return true;
}

// Shift-invert subspace iteration with Rayleigh-Ritz acceleration. Handles
// eigenvalue multiplicity through the block; deterministic via the seeded
// starting block.
template <typename Scalar>
SpectralResult subspace_solve(const Eigen::SparseMatrix<cd>& kc,
                              const Eigen::SparseMatrix<cd>& mc, const SpectralRequest& req) {
    using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
    using SpMat = Eigen::SparseMatrix<Scalar>;

    const SpMat k = to_scalar<Scalar>(kc);
    const SpMat m = to_scalar<Scalar>(mc);
    const int n = static_cast<int>(k.rows());
    const int p = std::min(n, req.n_pairs + std::max(8, req.n_pairs));
    const double scale = diag_scale(kc, mc);
    const double slack = 1e-9 * scale + 1e-9 * std::abs(req.shift);

    // Factor just below the requested shift so eigenvalues sitting exactly at
    // the shift stay well separated from the pole.
    double sigma = req.shift - std::max(1e-8 * scale, 1e-6 * std::abs(req.shift));
    Eigen::SparseLU<SpMat> lu;
    bool factored = false;
    for (int attempt = 0; attempt < 4 && !factored; ++attempt) {
        SpMat s = k - Scalar(sigma) * m;
        s.makeCompressed();
        lu.compute(s);
        if (lu.info() == Eigen::Success) {
            factored = true;
        } else {
            sigma -= std::max(1e-6 * scale, 10.0 * std::abs(sigma));
        }
    }
    if (!factored)
        throw SolverError("eigensolver: shift factorization failed; matrix pair may be singular");

    std::mt19937 rng(req.seed);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    Mat x(n, p);
    for (int j = 0; j < p; ++j)
        for (int i = 0; i < n; ++i) x(i, j) = Scalar(dist(rng));

    Eigen::VectorXd ritz;
    Mat basis;
    Eigen::VectorXd residuals;
    std::vector<int> candidates;

    int it = 0;
    for (; it < req.max_iterations; ++it) {
        Mat y(n, p);
        const Mat mx = m * x;
        for (int j = 0; j < p; ++j) y.col(j) = lu.solve(mx.col(j));

        Mat a = y.adjoint() * (k * y);
        Mat b = y.adjoint() * (m * y);
        a = Scalar(0.5) * (a + Mat(a.adjoint()));
        b = Scalar(0.5) * (b + Mat(b.adjoint()));

        Eigen::GeneralizedSelfAdjointEigenSolver<Mat> rr(a, b);
        if (rr.info() != Eigen::Success)
            throw SolverError("eigensolver: Rayleigh-Ritz projection failed; "
                              "mass matrix may be indefinite");
        ritz = rr.eigenvalues();
        basis = y * rr.eigenvectors();
        x = basis;

        // Residuals of the pairs at or above the requested shift.
        candidates.clear();
        for (int j = 0; j < p; ++j)
            if (ritz(j) >= req.shift - slack) candidates.push_back(j);
        if (static_cast<int>(candidates.size()) < req.n_pairs) continue;

        residuals.resize(req.n_pairs);
        bool done = true;
        for (int idx = 0; idx < req.n_pairs; ++idx) {
            const int j = candidates[idx];
            const auto xj = basis.col(j);
            const auto kx = (k * xj).eval();
            const auto mxj = (m * xj).eval();
            const double denom =
                kx.norm() + std::abs(ritz(j)) * mxj.norm() + 1e-13 * scale * mxj.norm();
            residuals(idx) = (kx - Scalar(ritz(j)) * mxj).norm() / denom;
            if (residuals(idx) > req.tolerance) done = false;
        }
        if (done) break;
    }

    if (static_cast<int>(candidates.size()) < req.n_pairs)
        throw SolverError("eigensolver: subspace holds fewer pairs above the shift than "
                          "requested; enlarge n_pairs headroom or lower the shift");
    if (it >= req.max_iterations) {
        double worst = residuals.size() ? residuals.maxCoeff() : 1.0;
        throw SolverError("eigensolver: no convergence after " +
                          std::to_string(req.max_iterations) +
                          " iterations; worst residual " + std::to_string(worst));
    }

    SpectralResult out;
    out.values.resize(req.n_pairs);
    out.vectors.resize(n, req.n_pairs);
    out.residuals = residuals;
    out.iterations = it + 1;
    for (int idx = 0; idx < req.n_pairs; ++idx) {
        out.values(idx) = ritz(candidates[idx]);
        out.vectors.col(idx) = basis.col(candidates[idx]).template cast<cd>();
    }
    return out;
}

} // namespace

SpectralResult smallest_pairs_dense(const Eigen::MatrixXcd& k, const Eigen::MatrixXcd& m,
                                    int n_pairs, double shift) {
    const int n = static_cast<int>(k.rows());
    if (n_pairs < 1 || n_pairs > n)
        throw ConfigError("eigensolver: n_pairs out of range for dense solve");
    {
        Eigen::LLT<Eigen::MatrixXcd> llt(m);
        if (llt.info() != Eigen::Success)
            throw SolverError("eigensolver: mass matrix is not positive definite");
    }
    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXcd> es(k, m);
    if (es.info() != Eigen::Success)
        throw SolverError("eigensolver: dense decomposition failed");

    std::vector<int> picked;
    for (int i = 0; i < n && static_cast<int>(picked.size()) < n_pairs; ++i)
        if (es.eigenvalues()(i) >= shift - 1e-9 * (std::abs(shift) + 1.0)) picked.push_back(i);
    if (static_cast<int>(picked.size()) < n_pairs)
        throw SolverError("eigensolver: fewer eigenvalues above the shift than requested");

    SpectralResult out;
    out.values.resize(n_pairs);
    out.vectors.resize(n, n_pairs);
    out.residuals.resize(n_pairs);
    out.iterations = 1;
    const double scale = n > 0 ? k.diagonal().real().cwiseAbs().sum() /
                                     std::max(m.diagonal().real().cwiseAbs().sum(), 1e-300)
                               : 1.0;
    for (int idx = 0; idx < n_pairs; ++idx) {
        const int i = picked[idx];
        out.values(idx) = es.eigenvalues()(i);
        out.vectors.col(idx) = es.eigenvectors().col(i);
        const Eigen::VectorXcd kx = k * out.vectors.col(idx);
        const Eigen::VectorXcd mx = m * out.vectors.col(idx);
        const double denom =
            kx.norm() + std::abs(out.values(idx)) * mx.norm() + 1e-13 * scale * mx.norm();
        out.residuals(idx) = (kx - cd(out.values(idx), 0.0) * mx).norm() / denom;
    }
    return out;
}

SpectralResult smallest_pairs(const Eigen::SparseMatrix<cd>& k,
                              const Eigen::SparseMatrix<cd>& m, const SpectralRequest& req) {
    req.validate();
    const int n = static_cast<int>(k.rows());
    if (k.rows() != k.cols() || m.rows() != m.cols() || k.rows() != m.rows())
        throw ConfigError("eigensolver: K and M must be square with equal sizes");
    if (req.n_pairs >= n && req.path != SpectralRequest::Path::Dense)
        throw ConfigError("eigensolver: n_pairs must be smaller than the reduced dimension");

    const bool dense = req.path == SpectralRequest::Path::Dense ||
                       (req.path == SpectralRequest::Path::Auto && n <= 600);
    if (dense)
        return smallest_pairs_dense(Eigen::MatrixXcd(k), Eigen::MatrixXcd(m), req.n_pairs,
                                    req.shift);
    if (is_numerically_real(k) && is_numerically_real(m))
        return subspace_solve<double>(k, m, req);
    return subspace_solve<cd>(k, m, req);
}

} // namespace blochband
