#include "collapse/semiflat.hpp"

#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <cmath>
#include <random>

using namespace collapse;

namespace {

LatticeFamily constant_lattice(cplx tau2) {
    LatticeFamily lat;
    lat.tau2 = [tau2](cplx) { return tau2; };
    lat.dtau2 = [](cplx) { return cplx(0.0, 0.0); };
    lat.dtau1 = [](cplx) { return cplx(0.0, 0.0); };
    return lat;
}

} // namespace

TEST_CASE("semi-flat potential on constant lattices") {
    const SemiFlatPotential a = sf_potential(cplx(0.1, 0.0), cplx(0.3, 0.2), lattice_abelian(), 0.1);
    CHECK(a.W == doctest::Approx(0.1));
    CHECK(std::abs(a.b) == 0.0);
    const SemiFlatPotential b = sf_potential(cplx(0.1, 0.0), cplx(0.0, 0.0), constant_lattice({0.0, 2.0}), 0.1);
    CHECK(b.W == doctest::Approx(0.05));
}

TEST_CASE("semi-flat potential on the OV-matching lattice") {
    const double s = 0.05;
    const SemiFlatPotential p = sf_potential(cplx(0.1, 0.0), cplx(0.0, 0.0), lattice_ov_matching(), s);
    CHECK(p.W == doctest::Approx(s * kTwoPi / std::log(10.0)).epsilon(1e-13));
}

TEST_CASE("degenerate lattices are rejected") {
    CHECK_THROWS_AS(sf_potential(cplx(0.1, 0.0), cplx(0.0, 0.0), constant_lattice({1.0, 0.0}), 0.1), DomainError);
    CHECK_THROWS_AS(sf_frame10(cplx(0.1, 0.0), constant_lattice({1.0, -1.0}), 0.1), DomainError);
}

TEST_CASE("frame (1,0) imaginary part") {
    const double s = 0.3;
    const Eigen::Matrix2d I1 = sf_frame10(cplx(0.0, 0.0), lattice_abelian(), s).imag() / s;
    CHECK((I1 - Eigen::Matrix2d::Identity()).norm() < 1e-14);
    const Eigen::Matrix2d I2 = sf_frame10(cplx(0.0, 0.0), constant_lattice({1.0, 1.0}), s).imag() / s;
    Eigen::Matrix2d expect;
    expect << 1.0, 1.0, 1.0, 2.0;
    CHECK((I2 - expect).norm() < 1e-14);
}

TEST_CASE("frame imaginary part is positive definite for random lattices") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> re(-3.0, 3.0), im(0.05, 3.0);
    for (int i = 0; i < 200; ++i) {
        const Eigen::Matrix2d M = sf_frame10(cplx(0.0, 0.0), constant_lattice({re(rng), im(rng)}), 0.2).imag();
        CHECK((M - M.transpose()).norm() < 1e-14);
        CHECK(Eigen::LLT<Eigen::Matrix2d>(M).info() == Eigen::Success);
    }
}

TEST_CASE("fiber metric is linear in s") {
    const LatticeFamily lat = lattice_exponential(0.3);
    const cplx y(0.2, -0.1);
    const Eigen::Matrix2d a = sf_fiber_metric(y, lat, 0.1);
    const Eigen::Matrix2d b = sf_fiber_metric(y, lat, 0.2);
    CHECK((b - 2.0 * a).norm() < 1e-14 * b.norm());
    const Eigen::Matrix2d flat = sf_fiber_metric(y, lattice_abelian(), 0.1);
    CHECK(std::abs(flat(0, 1)) < 1e-16);
    CHECK(flat(0, 0) == doctest::Approx(flat(1, 1)));
}

TEST_CASE("largest fiber eigenvalue from the closed form") {
    const Eigen::Matrix2d g = sf_fiber_metric(cplx(0.0, 0.0), constant_lattice({1.0, 1.0}), 0.1);
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(g);
    CHECK(max_eigenvalue_2x2(g) == doctest::Approx(es.eigenvalues()(1)).epsilon(1e-14));
    // (1,1;1,2) has eigenvalues (3 +- sqrt 5)/2; the metric is a positive multiple or inverse of it.
    const double r = es.eigenvalues()(1) / es.eigenvalues()(0);
    CHECK(r == doctest::Approx((3.0 + std::sqrt(5.0)) / (3.0 - std::sqrt(5.0))).epsilon(1e-12));
}

TEST_CASE("Kahler closedness by finite differences") {
    // dW/dy1 = d(W b1)/dx, i.e. the potential pair is closed in (y, x).
    const LatticeFamily lat = lattice_exponential(0.3);
    const double s = 0.1, h = 1e-5;
    for (double y1 : {-0.2, 0.0, 0.15}) {
        for (double y2 : {-0.1, 0.2}) {
            const cplx x(0.3, -0.4);
            auto W = [&](cplx y, cplx xx) { return sf_potential(y, xx, lat, s).W; };
            auto Wb = [&](cplx y, cplx xx) {
                const SemiFlatPotential p = sf_potential(y, xx, lat, s);
                return p.W * p.b;
            };
            const cplx y(y1, y2);
            const cplx dWdy = (W(y + h, x) - W(y - h, x)) / (2 * h) - cplx(0, 1) * (W(y + cplx(0, h), x) - W(y - cplx(0, h), x)) / (2 * h);
            const cplx dWbdx = (Wb(y, x + h) - Wb(y, x - h)) / (2 * h) - cplx(0, 1) * (Wb(y, x + cplx(0, h)) - Wb(y, x - cplx(0, h))) / (2 * h);
            CHECK(std::abs(0.5 * dWdy - 0.5 * dWbdx) < 1e-6);
        }
    }
}

TEST_CASE("semi-flat metric is positive definite and J is orthogonal") {
    const LatticeFamily lat = lattice_exponential(0.3);
    const cplx y(0.1, 0.05);
    const Eigen::Matrix4d g = sf_metric(y, lat, 0.1);
    const Eigen::Matrix4d J = sf_complex_structure(y, lat, 0.1);
    CHECK((g - g.transpose()).norm() < 1e-14);
    CHECK(Eigen::LLT<Eigen::Matrix4d>(g).info() == Eigen::Success);
    CHECK((J * J + Eigen::Matrix4d::Identity()).norm() < 1e-12);
    CHECK((J.transpose() * g * J - g).norm() < 1e-12 * g.norm());
}

TEST_CASE("semi-flat Kahler form is closed") {
    const LatticeFamily lat = lattice_exponential(0.3);
    const double s = 0.1, h = 1e-4;
    const double base[4] = {0.3, -0.2, 0.1, 0.05}; // (x1, x2, y1, y2)
    auto eta = [&](const double* q) {
        return sf_kahler_form(cplx(q[2], q[3]), cplx(q[0], q[1]), lat, s);
    };
    auto deriv = [&](int a) {
        double qp[4], qm[4];
        for (int i = 0; i < 4; ++i) qp[i] = qm[i] = base[i];
        qp[a] += h;
        qm[a] -= h;
        return Eigen::Matrix4d((eta(qp) - eta(qm)) / (2 * h));
    };
    Eigen::Matrix4d d[4];
    for (int a = 0; a < 4; ++a) d[a] = deriv(a);
    double worst = 0.0;
    for (int a = 0; a < 4; ++a)
        for (int b = a + 1; b < 4; ++b)
            for (int c = b + 1; c < 4; ++c)
                worst = std::max(worst, std::abs(d[a](b, c) + d[b](c, a) + d[c](a, b)));
    CHECK(worst < 1e-6);
    const Eigen::Matrix4d e = eta(base);
    CHECK((e + e.transpose()).norm() < 1e-14);
}
