#include "collapse/ooguri_vafa.hpp"
#include "collapse/quadrature.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace collapse;

namespace {

OVParams params(double s) {
    OVParams p;
    p.s = s;
    return p;
}

} // namespace

TEST_CASE("Euler's constant and the normalization a_s") {
    // Oracle: the standard-library constant, independent of the partial-sum routine.
    CHECK(std::abs(euler_gamma() - std::numbers::egamma) < 1e-12);
    CHECK(ov_a_s(0.5) == doctest::Approx(std::numbers::egamma / std::numbers::pi).epsilon(1e-12));
    CHECK(ov_a_s(0.5) == doctest::Approx(0.18374).epsilon(1e-4));
    const double s = 1.0 / (2.0 * std::numbers::e);
    CHECK(ov_a_s(s) == doctest::Approx((std::numbers::egamma + 1.0) * std::numbers::e / std::numbers::pi).epsilon(1e-12));
    for (double t : {0.01, 0.3}) {
        CHECK(ov_a_s(t) == doctest::Approx((std::numbers::egamma - std::log(2.0 * t)) / (2.0 * std::numbers::pi * t)).epsilon(1e-12));
    }
}

TEST_CASE("V_s symmetry and periodicity in u3") {
    const OVParams p = params(0.05);
    for (double u3 : {0.003, 0.011, 0.024}) {
        const double v = ov_potential({0.07, -0.04, u3}, p);
        CHECK(ov_potential({0.07, -0.04, -u3}, p) == doctest::Approx(v).epsilon(1e-13));
        CHECK(std::abs(ov_potential({0.07, -0.04, u3 + p.s}, p) - v) < 1e-12 * v);
    }
}

TEST_CASE("fiber average of V_s") {
    const OVParams p = params(0.05);
    const double avg = integrate([&](double t) { return ov_potential({0.1, 0.0, t}, p); }, 0.0, p.s, 24, 8) / p.s;
    const double expect = std::log(10.0) / (2.0 * kPi * p.s);
    CHECK(std::abs(avg - expect) < 1e-8);
    CHECK(ov_vsf(cplx(0.1, 0.0), p) == doctest::Approx(7.3286).epsilon(1e-4));
    CHECK(ov_vsf(cplx(0.1, 0.0), p) == doctest::Approx(expect).epsilon(1e-14));
}

TEST_CASE("V_sf lower bound, h-shift and domain") {
    OVParams p = params(0.05);
    p.delta0 = 0.3;
    const double y = 0.3 * (1.0 - 1e-12);
    CHECK(ov_vsf(cplx(y, 0.0), p) >= 2.0 * std::log(1.0 / p.delta0) / (5.0 * kPi * p.s));
    OVParams q = p;
    q.h = HarmonicShift::constant(0.01);
    CHECK(ov_vsf(cplx(0.1, 0.1), q) - ov_vsf(cplx(0.1, 0.1), p) == doctest::Approx(0.01 / p.s).epsilon(1e-12));
    CHECK_THROWS_AS(ov_vsf(cplx(0.0, 0.0), p), DomainError);
}

TEST_CASE("monopole points are singular") {
    const OVParams p = params(0.05);
    CHECK_THROWS_AS(ov_potential({0.0, 0.0, 0.0}, p), DomainError);
    CHECK_THROWS_AS(ov_potential({0.0, 0.0, 2 * p.s}, p), DomainError);
    CHECK_THROWS_AS(ov_phi_gradient({0.0, 0.0, p.s}, p), DomainError);
}

TEST_CASE("lattice sum and Fourier representation agree") {
    const OVParams p = params(0.05);
    for (double r : {0.01, 0.03, 0.08}) {
        for (double u3 : {0.0, 0.01, 0.02}) {
            const Vec3 u{r * 0.6, r * 0.8, u3};
            const double a = ov_potential(u, p), b = ov_potential_fourier(u, p);
            CHECK(std::abs(a - b) < 1e-9 * std::abs(a));
        }
    }
}

TEST_CASE("V_s is harmonic away from monopoles") {
    const OVParams p = params(0.05);
    const Vec3 c{0.02, 0.015, 0.01};
    double prev = 0.0;
    for (double h : {4e-3, 2e-3}) {
        double lap = -6.0 * ov_potential(c, p);
        for (int a = 0; a < 3; ++a) {
            Vec3 up = c, dn = c;
            up[a] += h;
            dn[a] -= h;
            lap += ov_potential(up, p) + ov_potential(dn, p);
        }
        lap /= h * h;
        const double rel = std::abs(lap) / ov_potential(c, p);
        if (prev > 0.0) CHECK(rel < 0.3 * prev); // second order decay
        prev = rel;
    }
}

TEST_CASE("gradient of phi") {
    const OVParams p = params(0.05);
    const Vec3 u{0.04, -0.03, 0.017};
    const OVGammaSample g = ov_phi_gradient(u, p);
    CHECK(g.dphi[0] == doctest::Approx(-u[0] * ov_potential(u, p)).epsilon(1e-12));
    CHECK(g.gamma_perp == g.dphi[2]);
    for (double u2 : {-0.1, 0.02, 0.3}) {
        CHECK(std::abs(ov_phi_gradient({0.05, u2, 0.0}, p).dphi[2]) < 1e-12);
        CHECK(std::abs(ov_phi_gradient({0.05, u2, 0.5 * p.s}, p).dphi[2]) < 1e-12);
    }
    // Finite differences of phi reproduce the u2 and u3 partials.
    const double h = 1e-6;
    const double d2 = (ov_phi({u[0], u[1] + h, u[2]}, p) - ov_phi({u[0], u[1] - h, u[2]}, p)) / (2 * h);
    const double d3 = (ov_phi({u[0], u[1], u[2] + h}, p) - ov_phi({u[0], u[1], u[2] - h}, p)) / (2 * h);
    CHECK(d2 == doctest::Approx(g.dphi[1]).epsilon(1e-6));
    CHECK(std::abs(d3 - g.dphi[2]) < 1e-6);
}

TEST_CASE("|dphi/du3| is at most 1/(2 pi)") {
    const OVParams p = params(0.05);
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> ub(-0.4, 0.4), u3(0.0, 0.05);
    double worst = 0.0;
    for (int i = 0; i < 10000; ++i) {
        const Vec3 u{ub(rng), ub(rng), u3(rng)};
        worst = std::max(worst, std::abs(ov_phi_gradient(u, p).dphi[2]));
    }
    CHECK(worst <= 1.0 / kTwoPi);
}

TEST_CASE("psi solves the two-dimensional Poisson equation") {
    const OVParams p = params(0.05);
    const double u2 = 0.1, u3 = 0.013, h = 1e-3;
    const double lap = (ov_psi(u2 + h, u3, p) + ov_psi(u2 - h, u3, p) + ov_psi(u2, u3 + h, p) +
                        ov_psi(u2, u3 - h, p) - 4.0 * ov_psi(u2, u3, p)) / (h * h);
    const double V = ov_potential({0.0, u2, u3}, p);
    CHECK(std::abs(lap + V) < 1e-4 * V);
}

TEST_CASE("gamma_perp bound on the chart") {
    OVParams p = params(0.02);
    p.delta0 = 0.25;
    const double bound = 5.0 * p.s / (kTwoPi * std::log(1.0 / p.delta0));
    for (double r : {0.01, 0.1, 0.24}) {
        for (double th : {0.3, 2.0, 4.5}) {
            for (double u3 : {0.001, 0.007}) {
                const OVGammaSample g = ov_phi_gradient({r * std::cos(th), r * std::sin(th), u3}, p);
                CHECK(g.gamma_perp * g.gamma_perp / g.V <= bound);
            }
        }
    }
}

TEST_CASE("metric sample") {
    const OVParams p = params(0.05);
    const Vec3 u{0.06, 0.02, 0.01};
    const MetricSample m = ov_metric(u, p);
    const double V = ov_potential(u, p);
    CHECK(m.g.determinant() == doctest::Approx(V * V).epsilon(1e-12));
    // Orbit length: integral over theta1 in [0, 2 pi) of sqrt(V^-1 / 4 pi^2).
    CHECK(kTwoPi * std::sqrt(m.fiber(0, 0)) == doctest::Approx(1.0 / std::sqrt(V)).epsilon(1e-12));
    const cplx cv = ov_calV(cplx(u[0], u[1]), p);
    CHECK(m.fiber.determinant() == doctest::Approx(cv.real() * cv.real() / (V * V * std::pow(kTwoPi, 4))).epsilon(1e-12));
}

TEST_CASE("log branches of calV") {
    OVParams p = params(0.05);
    const cplx below(0.0, -0.1);
    const double a = ov_calV(below, p).imag();
    CHECK(a == doctest::Approx(0.25));
    p.branch = LogBranch::HalfPiFiveHalf;
    CHECK(ov_calV(below, p).imag() == doctest::Approx(-0.75));
    CHECK(ov_calV(cplx(0.1, 0.0), p).real() == doctest::Approx(std::log(10.0) / kTwoPi));
}

TEST_CASE("comparison statistics") {
    OVParams p = params(0.05);
    const OVCompareReport r = ov_compare(cplx(0.1, 0.0), p);
    CHECK(r.upper_ratio_min >= 1.0);
    CHECK(r.log_lower_min >= 1.0);
    CHECK(r.ratio_min > 0.0);
    double prev_gap = 1e9;
    for (double s : {0.05, 0.02, 0.01, 0.001}) {
        p.s = s;
        const OVCompareReport q = ov_compare(cplx(0.1, 0.0), p);
        const double gap = std::max(std::abs(q.ratio_min - 1.0), std::abs(q.ratio_max - 1.0));
        // Below about 1e-9 the gap is rounding noise of the lattice sum.
        CHECK(gap <= std::max(prev_gap, 1e-9));
        prev_gap = gap;
        CHECK(std::isfinite(q.exp_gap_stat));
    }
    CHECK(prev_gap < 1e-3);
    CHECK_THROWS_AS(ov_compare(cplx(0.0, 0.0), p), DomainError);
}

TEST_CASE("pushforward density at the center") {
    const OVParams p = params(0.02);
    CHECK(ov_pushforward_density({0.0, 0.0}, p) == 1.0);
    CHECK(ov_pushforward_density({1.0, 0.0}, p) > 1.0);
    CHECK(ov_sigma_s(0.02) == doctest::Approx(std::sqrt(0.02 * (std::log(50.0) + std::log(kPi)) / (2 * std::pow(kPi, 3)))));
}
