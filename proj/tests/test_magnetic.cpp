#include "collapse/magnetic.hpp"

#include <doctest.h>

#include <cmath>

using namespace collapse;

namespace {

// Coarse abelian cell; structural tests do not need the resolution guard.
LocalModel coarse(double s, int k, int n) {
    LocalModel m = LocalModel::abelian(s, k, n);
    m.enforce_resolution = false;
    return m;
}

int block_of(const OperatorMatrix& op, int i) {
    for (int b = 0; b < static_cast<int>(op.blocks.size()); ++b)
        if (i >= op.blocks[b].first && i < op.blocks[b].second) return b;
    return -1;
}

} // namespace

TEST_CASE("model kind names") {
    for (ModelKind k : {ModelKind::SemiFlatAbelian, ModelKind::SemiFlatGeneral, ModelKind::OoguriVafaWindow})
        CHECK(model_kind_from_string(to_string(k)) == k);
    CHECK(model_kind_from_string("ov") == ModelKind::OoguriVafaWindow);
    CHECK_THROWS_AS(model_kind_from_string("torus"), ValidationError);
}

TEST_CASE("assembled matrix is symmetric with positive weights") {
    const AssembledModel am = assemble_model(coarse(0.1, 2, 16));
    const SpMat& A = am.op.A;
    CHECK(SpMat(A - SpMat(A.transpose())).norm() < 1e-13 * A.norm());
    CHECK(am.op.weight.minCoeff() > 0.0);
    CHECK(am.op.dimension() == static_cast<int>(am.modes.size()) * 16 * 16);
}

TEST_CASE("distinct residue classes do not couple") {
    const AssembledModel am = assemble_model(coarse(0.1, 2, 12));
    CHECK(am.op.blocks.size() == 4); // Z^2 / 2 Z^2
    int cross = 0, glue = 0;
    for (int c = 0; c < am.op.A.outerSize(); ++c)
        for (SpMat::InnerIterator it(am.op.A, c); it; ++it) {
            if (block_of(am.op, it.row()) != block_of(am.op, it.col())) ++cross;
            else if (std::abs(it.row() - it.col()) >= 12 * 12) ++glue;
        }
    CHECK(cross == 0);
    CHECK(glue > 0); // gluing entries between different modes of one class
}

TEST_CASE("mode truncation does not change the low spectrum") {
    LocalModel a = coarse(0.1, 1, 24);
    a.mode_radius = 2;
    LocalModel b = a;
    b.mode_radius = 3;
    const DbarSpectrum sa = dbar_spectrum(a, 5);
    const DbarSpectrum sb = dbar_spectrum(b, 5);
    for (int i = 0; i < 5; ++i)
        CHECK(sa.laplacian.eigenvalues[i] == doctest::Approx(sb.laplacian.eigenvalues[i]).epsilon(1e-8));
    CHECK(sb.modes > sa.modes);
}

TEST_CASE("fiber potential vanishes exactly on BS points") {
    BaseNode n;
    n.ginv = Eigen::Matrix2d::Identity() * 3.0;
    n.action = {0.0, 0.0};
    CHECK(mode_potential(n, 2, {0, 0}) == 0.0);
    n.action = {0.5, -0.5};
    CHECK(mode_potential(n, 2, {-1, 1}) == 0.0);
    CHECK(mode_potential(n, 2, {0, 1}) == doctest::Approx(3.0));
}

TEST_CASE("spectral identity between the reduced Laplacian and dbar") {
    const LocalModel m = LocalModel::abelian(0.05, 1, 48);
    const DbarSpectrum d = dbar_spectrum(m, 4);
    for (int i = 0; i < 4; ++i)
        CHECK(d.dbar.eigenvalues[i] == doctest::Approx((d.laplacian.eigenvalues[i] - 3.0) / 2.0).epsilon(1e-14));
}

TEST_CASE("abelian cell approaches the Landau levels") {
    // Each well is a harmonic oscillator with levels k^2 + 2k (1 + n1 + n2).
    const DbarSpectrum d = dbar_spectrum(LocalModel::abelian(0.05, 1, 64), 3);
    CHECK(d.laplacian.eigenvalues[0] == doctest::Approx(3.0).epsilon(0.02));
    CHECK(d.laplacian.eigenvalues[1] == doctest::Approx(5.0).epsilon(0.02));
    CHECK(d.laplacian.eigenvalues[2] == doctest::Approx(5.0).epsilon(0.02));
    CHECK(d.near_zero == 1);
}

TEST_CASE("model validation") {
    LocalModel m = LocalModel::abelian(0.01, 1, 8);
    CHECK_THROWS_AS(m.validate(), ValidationError); // under-resolved well
    m.enforce_resolution = false;
    CHECK_NOTHROW(m.validate());
    m.half_width = 0.4;
    CHECK_THROWS_AS(m.validate(), ValidationError); // periodic needs the full cell
    LocalModel ov;
    ov.kind = ModelKind::OoguriVafaWindow;
    ov.params.s = ov.ov.s = 0.05;
    ov.ov.branch = LogBranch::HalfPiFiveHalf;
    ov.bc = Boundary::Dirichlet;
    ov.window_R = 0.2;
    ov.n_grid = 95;
    ov.enforce_resolution = false;
    CHECK_THROWS_AS(ov.validate(), ValidationError); // odd grid
    ov.n_grid = 96;
    CHECK_NOTHROW(ov.validate());
    ov.window_R = 0.5;
    CHECK_THROWS_AS(ov.ov_window_radius(), ValidationError);
}

TEST_CASE("BS points of the abelian cell") {
    LocalModel m = LocalModel::abelian(0.05, 2, 64);
    CHECK(model_bs_points(m).size() == 4);
    m.params.k = 3;
    CHECK(model_bs_points(m).size() == 9);
}

TEST_CASE("lower bound on the flat model") {
    const LocalModel m = LocalModel::abelian(0.05, 1, 64);
    const LowerBoundReport r = verify_lower_bound(m, 2.0);
    CHECK(r.delta == 0.0);
    CHECK(r.meets_rayleigh_bound);
    CHECK(r.rayleigh_bound == doctest::Approx(1.0 + r.K));
    CHECK(r.landau_bound == doctest::Approx(kTwoPi * r.rayleigh_bound));
    // K = k^2 R^2 when the fiber metric is s / (4 pi^2) and the ball has radius R sqrt(s) / (2 pi);
    // grid nodes sit at or outside the ball.
    CHECK(r.K >= 4.0 * (1.0 - 1e-12));
    CHECK(r.K <= 4.0 * 1.25);
    CHECK(r.radius_base == doctest::Approx(2.0 * std::sqrt(0.05) / kTwoPi));
    CHECK_THROWS_AS(verify_lower_bound(m, 0.0), ValidationError);
    CHECK_THROWS_AS(verify_lower_bound(m, 15.0), ValidationError); // balls overlap
}
