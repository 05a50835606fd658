#include "collapse/geometry.hpp"
#include "collapse/lanczos.hpp"

#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

using namespace collapse;

namespace {

SpMat dirichlet_1d(int n, double h) {
    std::vector<Eigen::Triplet<double>> t;
    for (int i = 0; i < n; ++i) {
        t.emplace_back(i, i, 2.0 / (h * h));
        if (i + 1 < n) {
            t.emplace_back(i, i + 1, -1.0 / (h * h));
            t.emplace_back(i + 1, i, -1.0 / (h * h));
        }
    }
    SpMat A(n, n);
    A.setFromTriplets(t.begin(), t.end());
    return A;
}

} // namespace

TEST_CASE("diagonal matrix") {
    const int n = 200;
    SpMat A(n, n);
    for (int i = 0; i < n; ++i) A.insert(i, i) = 1.0 + ((i * 37) % n);
    const SpectrumResult r = lowest_eigs(A, 5, 1e-12);
    REQUIRE(r.eigenvalues.size() == 5);
    for (int i = 0; i < 5; ++i) CHECK(r.eigenvalues[i] == doctest::Approx(1.0 + i).epsilon(1e-12));
    for (double res : r.residuals) CHECK(res <= 1e-12 * norm_inf(A));
}

TEST_CASE("one-dimensional Dirichlet Laplacian") {
    const int n = 400;
    const double h = 1.0 / (n + 1);
    const SpectrumResult r = lowest_eigs(dirichlet_1d(n, h), 8, 1e-11);
    for (int j = 1; j <= 8; ++j) {
        const double exact = 4.0 * std::pow(std::sin(kPi * j / (2.0 * (n + 1))), 2) / (h * h);
        CHECK(r.eigenvalues[j - 1] == doctest::Approx(exact).epsilon(1e-10));
    }
}

TEST_CASE("repeated eigenvalues are found with multiplicity") {
    // Kronecker sum of two equal 1D Laplacians: lambda_i + lambda_j is double for i != j.
    const int n = 30;
    const SpMat L = dirichlet_1d(n, 1.0);
    std::vector<Eigen::Triplet<double>> t;
    for (int k = 0; k < L.outerSize(); ++k)
        for (SpMat::InnerIterator it(L, k); it; ++it)
            for (int j = 0; j < n; ++j) {
                t.emplace_back(it.row() * n + j, it.col() * n + j, it.value());
                t.emplace_back(j * n + it.row(), j * n + it.col(), it.value());
            }
    SpMat A(n * n, n * n);
    A.setFromTriplets(t.begin(), t.end());
    const SpectrumResult r = lowest_eigs(A, 6, 1e-11);
    const Eigen::VectorXd dense = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(Eigen::MatrixXd(A)).eigenvalues();
    for (int i = 0; i < 6; ++i) CHECK(r.eigenvalues[i] == doctest::Approx(dense(i)).epsilon(1e-10));
    CHECK(r.eigenvalues[1] == doctest::Approx(r.eigenvalues[2]).epsilon(1e-10));
}

TEST_CASE("block solver merges independent blocks") {
    const int n = 60;
    const SpMat L = dirichlet_1d(n, 1.0);
    SpMat A(2 * n, 2 * n);
    std::vector<Eigen::Triplet<double>> t;
    for (int k = 0; k < L.outerSize(); ++k)
        for (SpMat::InnerIterator it(L, k); it; ++it) {
            t.emplace_back(it.row(), it.col(), it.value());
            t.emplace_back(n + it.row(), n + it.col(), it.value() + (it.row() == it.col() ? 0.01 : 0.0));
        }
    A.setFromTriplets(t.begin(), t.end());
    const SpectrumResult r = lowest_eigs_blocks(A, {{0, n}, {n, 2 * n}}, 4, 1e-11);
    const Eigen::VectorXd dense = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(Eigen::MatrixXd(A)).eigenvalues();
    REQUIRE(r.eigenvalues.size() == 4);
    for (int i = 0; i < 4; ++i) CHECK(r.eigenvalues[i] == doctest::Approx(dense(i)).epsilon(1e-10));
    CHECK(std::is_sorted(r.eigenvalues.begin(), r.eigenvalues.end()));
}

TEST_CASE("bad requests") {
    const SpMat A = dirichlet_1d(20, 1.0);
    CHECK_THROWS_AS(lowest_eigs(A, 0), ValidationError);
    CHECK_THROWS_AS(lowest_eigs(A, 5), ValidationError); // needs 10 n < dim
    SpMat B = A;
    B.coeffRef(0, 1) = 5.0;
    CHECK_THROWS_AS(lowest_eigs(B, 1), ValidationError);
}

TEST_CASE("run budget exhaustion reports non-convergence") {
    const SpMat A = dirichlet_1d(2000, 1.0);
    LanczosOptions opt;
    opt.max_basis = 4;
    opt.max_runs = 1;
    opt.shift = 2.0; // far inside the spectrum, so four vectors cannot converge
    CHECK_THROWS_AS(lowest_eigs(A, 10, 1e-14, opt), NonConvergence);
}

TEST_CASE("Gershgorin bound") {
    const SpMat A = dirichlet_1d(10, 1.0);
    CHECK(gershgorin_lower(A) <= 0.0);
    CHECK(norm_inf(A) == doctest::Approx(4.0));
}
