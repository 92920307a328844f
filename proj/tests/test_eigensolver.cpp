#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>
#include <complex>
#include <random>

#include "blochband/eigensolver.hpp"

using namespace blochband;
using cd = std::complex<double>;
using SpMatC = Eigen::SparseMatrix<cd>;

namespace {

SpMatC to_sparse(const Eigen::MatrixXcd& a) {
    SpMatC s(a.rows(), a.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j)
            if (a(i, j) != cd(0.0, 0.0)) s.insert(i, j) = a(i, j);
    s.makeCompressed();
    return s;
}

Eigen::MatrixXcd random_hermitian(int n, unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    Eigen::MatrixXcd a(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a(i, j) = cd(dist(rng), dist(rng));
    return (a.adjoint() * a + Eigen::MatrixXcd::Identity(n, n)).eval();
}

} // namespace

TEST_CASE("identity pair returns unit eigenvalues") {
    const Eigen::MatrixXcd eye = Eigen::MatrixXcd::Identity(5, 5);
    SpectralRequest req;
    req.n_pairs = 4;
    const auto res = smallest_pairs(to_sparse(eye), to_sparse(eye), req);
    for (int i = 0; i < 4; ++i) CHECK(res.values(i) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("diagonal system, dense and sparse paths") {
    const int n = 50;
    Eigen::MatrixXcd k = Eigen::MatrixXcd::Zero(n, n);
    for (int i = 0; i < n; ++i) k(i, i) = cd(i + 1.0, 0.0);
    const Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(n, n);

    for (auto path : {SpectralRequest::Path::Dense, SpectralRequest::Path::Sparse}) {
        SpectralRequest req;
        req.n_pairs = 3;
        req.path = path;
        const auto res = smallest_pairs(to_sparse(k), to_sparse(m), req);
        CHECK(res.values(0) == doctest::Approx(1.0).epsilon(1e-9));
        CHECK(res.values(1) == doctest::Approx(2.0).epsilon(1e-9));
        CHECK(res.values(2) == doctest::Approx(3.0).epsilon(1e-9));
    }
}

TEST_CASE("sparse path matches the dense oracle on random Hermitian pairs") {
    const int n = 50;
    const Eigen::MatrixXcd k = random_hermitian(n, 7);
    Eigen::MatrixXcd m = random_hermitian(n, 13);
    m = (m + 10.0 * Eigen::MatrixXcd::Identity(n, n)).eval(); // safely SPD

    SpectralRequest sparse_req;
    sparse_req.n_pairs = 6;
    sparse_req.path = SpectralRequest::Path::Sparse;
    const auto it = smallest_pairs(to_sparse(k), to_sparse(m), sparse_req);
    const auto oracle = smallest_pairs_dense(k, m, 6);

    for (int i = 0; i < 6; ++i) {
        CHECK(std::abs(it.values(i) - oracle.values(i)) /
                  std::max(std::abs(oracle.values(i)), 1e-30) <
              1e-9);
        CHECK(it.residuals(i) < 1e-9);
    }

    // M-orthonormality of the iterative vectors.
    const Eigen::MatrixXcd gram = it.vectors.adjoint() * Eigen::MatrixXcd(m) * it.vectors;
    CHECK((gram - Eigen::MatrixXcd::Identity(6, 6)).norm() < 1e-8);
}

TEST_CASE("repeated eigenvalues are fully recovered") {
    const int n = 40;
    Eigen::MatrixXcd k = Eigen::MatrixXcd::Zero(n, n);
    for (int i = 0; i < n; ++i) k(i, i) = cd(i < 3 ? 2.0 : 5.0 + i, 0.0);
    SpectralRequest req;
    req.n_pairs = 3;
    req.path = SpectralRequest::Path::Sparse;
    const auto res =
        smallest_pairs(to_sparse(k), to_sparse(Eigen::MatrixXcd::Identity(n, n)), req);
    for (int i = 0; i < 3; ++i) CHECK(res.values(i) == doctest::Approx(2.0).epsilon(1e-9));
}

TEST_CASE("shift selects the pairs above it") {
    const int n = 30;
    Eigen::MatrixXcd k = Eigen::MatrixXcd::Zero(n, n);
    for (int i = 0; i < n; ++i) k(i, i) = cd(10.0 * (i + 1.0), 0.0);
    SpectralRequest req;
    req.n_pairs = 2;
    req.shift = 35.0;
    for (auto path : {SpectralRequest::Path::Dense, SpectralRequest::Path::Sparse}) {
        req.path = path;
        const auto res =
            smallest_pairs(to_sparse(k), to_sparse(Eigen::MatrixXcd::Identity(n, n)), req);
        CHECK(res.values(0) == doctest::Approx(40.0).epsilon(1e-9));
        CHECK(res.values(1) == doctest::Approx(50.0).epsilon(1e-9));
    }
}

TEST_CASE("determinism across repeated runs") {
    const int n = 80;
    const Eigen::MatrixXcd k = random_hermitian(n, 99);
    const Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(n, n);
    SpectralRequest req;
    req.n_pairs = 4;
    req.path = SpectralRequest::Path::Sparse;
    const auto a = smallest_pairs(to_sparse(k), to_sparse(m), req);
    const auto b = smallest_pairs(to_sparse(k), to_sparse(m), req);
    for (int i = 0; i < 4; ++i) CHECK(a.values(i) == b.values(i)); // bitwise
}

TEST_CASE("indefinite mass matrix is rejected") {
    Eigen::MatrixXcd k = Eigen::MatrixXcd::Identity(4, 4);
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(4, 4);
    m(2, 2) = cd(-1.0, 0.0);
    CHECK_THROWS_AS(smallest_pairs_dense(k, m, 2), SolverError);
}

TEST_CASE("request validation") {
    const Eigen::MatrixXcd eye = Eigen::MatrixXcd::Identity(4, 4);
    SpectralRequest req;
    req.n_pairs = 0;
    CHECK_THROWS_AS(smallest_pairs(to_sparse(eye), to_sparse(eye), req), ConfigError);
    req.n_pairs = 1;
    req.tolerance = 1.0;
    CHECK_THROWS_AS(smallest_pairs(to_sparse(eye), to_sparse(eye), req), ConfigError);
}

TEST_CASE("eigenvalues are real to roundoff") {
    // Complex Hermitian input with significant imaginary parts: the Rayleigh
    // quotients must still come out real (Hermitized projections).
    const int n = 25;
    const Eigen::MatrixXcd k = random_hermitian(n, 3);
    SpectralRequest req;
    req.n_pairs = 5;
    req.path = SpectralRequest::Path::Sparse;
    const auto res =
        smallest_pairs(to_sparse(k), to_sparse(Eigen::MatrixXcd::Identity(n, n)), req);
    const auto oracle = smallest_pairs_dense(k, Eigen::MatrixXcd::Identity(n, n), 5);
    for (int i = 0; i < 5; ++i)
        CHECK(std::abs(res.values(i) - oracle.values(i)) < 1e-9 * std::abs(oracle.values(i)));
}
