#pragma once

#include "collapse/geometry.hpp"

#include <array>
#include <functional>

namespace collapse {

using Vec3 = std::array<double, 3>;
using RealFn2 = std::function<double(double, double)>;

// Harmonic function h on the chart together with Im of its holomorphic
// extension hhat (Re hhat = h, hhat(0) real). Missing partials use central
// differences; a missing conjugate is obtained by integrating the
// Cauchy-Riemann equations along the segment from 0.
struct HarmonicShift {
    RealFn2 h = [](double, double) { return 0.0; };
    RealFn2 dh_du1;
    RealFn2 dh_du2;
    RealFn2 conj;
    bool is_zero = true;

    double value(double u1, double u2) const { return h(u1, u2); }
    double d_u1(double u1, double u2) const;
    double d_u2(double u1, double u2) const;
    double im_hhat(double u1, double u2) const;
    // int_0^{u2} h(0, t) dt
    double int_h0(double u2) const;
    // int_0^{u2} int_0^{tt} h(0, t) dt dtt
    double int2_h0(double u2) const;
    // int_0^{u1} t dh/du2(t, u2) dt
    double int_t_dh2(double u1, double u2) const;

    static HarmonicShift zero();
    static HarmonicShift constant(double c);
    // h = c + beta u1, the real part of c + beta y.
    static HarmonicShift linear(double c, double beta);
};

enum class LogBranch {
    ZeroTwoPi,      // Im(log 1/y) in [0, 2 pi)
    HalfPiFiveHalf, // Im(log y) in [pi/2, 5 pi/2)
};

struct OVParams {
    double s = 0.05;
    double delta0 = 0.5;
    int trunc_n = 2000;
    HarmonicShift h = HarmonicShift::zero();
    LogBranch branch = LogBranch::ZeroTwoPi;

    void validate() const;
};

struct OVGammaSample {
    double V = 0.0;
    Vec3 dphi{0.0, 0.0, 0.0};
    double gamma_perp = 0.0;     // coefficient of du2, equal to dphi/du3
    double gamma_f_normsq = 0.0; // |gamma_f|^2_g
};

struct OVCompareReport {
    double y_abs = 0.0;
    double s = 0.0;
    double exp_gap_stat = 0.0;     // s e^{2 pi |y|/s} max |V - Vsf|
    double log_lower_min = 0.0;     // min V 10 pi s / log(1/r)
    double upper_ratio_min = 0.0;     // min (Vsf + 1/(2 pi |y|)) / V
    double ratio_min = 0.0;       // min V / Vsf
    double ratio_max = 0.0;       // max V / Vsf
};

double euler_gamma();
double ov_a_s(double s);

// Potential by the symmetric lattice sum with analytic tail.
double ov_potential(const Vec3& u, const OVParams& p);
// Potential by the Bessel-K0 (Poisson-summed) series; needs |y| > 0.
double ov_potential_fourier(const Vec3& u, const OVParams& p);
// V - Vsf by the Bessel-K0 series (no cancellation).
double ov_potential_minus_vsf(const Vec3& u, const OVParams& p);
double ov_vsf(cplx y, const OVParams& p);

// The periodic function F(x, t) with dphi/du3 = F(|y|/s, u3/s).
double ov_F(double x, double t, int trunc_n = 2000);
double ov_psi(double u2, double u3, const OVParams& p);
double ov_phi(const Vec3& u, const OVParams& p);
OVGammaSample ov_phi_gradient(const Vec3& u, const OVParams& p);
// Same quantities with V replaced by its fiber average Vsf and gamma_perp by 0.
OVGammaSample ov_phi_gradient_semiflat(cplx y, const OVParams& p);

// Metric in the coframe (alpha/2pi, du1, du2, du3); the fiber block is the
// torus metric in (theta1, theta2) and the base block is V |du|^2.
MetricSample ov_metric(const Vec3& u, const OVParams& p);
Eigen::Matrix2d ov_fiber_metric_theta(cplx y, double V, const OVParams& p);

// calV(y) = log(1/y) / (2 pi) + hhat(y) on the selected branch.
cplx ov_calV(cplx y, const OVParams& p);

OVCompareReport ov_compare(cplx y, const OVParams& p, int n_u3 = 64);

double ov_sigma_s(double s);
// Density of (zeta_s)_* nu_B / s with respect to d xi1 d xi2.
double ov_pushforward_density(Vec2 xi, const OVParams& p);

} // namespace collapse
