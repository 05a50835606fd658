#include "collapse/ooguri_vafa.hpp"

#include "collapse/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace collapse {

namespace {

constexpr double kDiffStep = 1e-5;

// sum_{n > N} n^{-p} by Euler-Maclaurin.
double zeta_tail(int p, int N) {
    const double n = N;
    return std::pow(n, 1.0 - p) / (p - 1.0) - 0.5 * std::pow(n, -p) +
           p * std::pow(n, -p - 1.0) / 12.0 -
           p * (p + 1.0) * (p + 2.0) * std::pow(n, -p - 3.0) / 720.0;
}

// Reduce a coordinate into [-period/2, period/2).
double reduce_periodic(double x, double period) {
    double t = x - period * std::floor(x / period + 0.5);
    if (t >= 0.5 * period) t -= period;
    return t;
}

int effective_terms(int trunc_n, double rho, double s) {
    const double need = std::ceil(8.0 * rho / s) + 2.0;
    return std::max(trunc_n, static_cast<int>(std::min(need, 1e8)));
}

} // namespace

double HarmonicShift::d_u1(double u1, double u2) const {
    if (dh_du1) return dh_du1(u1, u2);
    return (h(u1 + kDiffStep, u2) - h(u1 - kDiffStep, u2)) / (2.0 * kDiffStep);
}

double HarmonicShift::d_u2(double u1, double u2) const {
    if (dh_du2) return dh_du2(u1, u2);
    return (h(u1, u2 + kDiffStep) - h(u1, u2 - kDiffStep)) / (2.0 * kDiffStep);
}

double HarmonicShift::im_hhat(double u1, double u2) const {
    if (is_zero) return 0.0;
    if (conj) return conj(u1, u2);
    // v_{u1} = -h_{u2}, v_{u2} = h_{u1}, v(0) = 0.
    return integrate(
        [&](double t) { return -d_u2(t * u1, t * u2) * u1 + d_u1(t * u1, t * u2) * u2; }, 0.0, 1.0,
        24);
}

double HarmonicShift::int_h0(double u2) const {
    if (is_zero || u2 == 0.0) return 0.0;
    return integrate([&](double t) { return h(0.0, t); }, 0.0, u2, 24);
}

double HarmonicShift::int2_h0(double u2) const {
    if (is_zero || u2 == 0.0) return 0.0;
    return integrate([&](double t) { return (u2 - t) * h(0.0, t); }, 0.0, u2, 24);
}

double HarmonicShift::int_t_dh2(double u1, double u2) const {
    if (is_zero || u1 == 0.0) return 0.0;
    return integrate([&](double t) { return t * d_u2(t, u2); }, 0.0, u1, 24);
}

HarmonicShift HarmonicShift::zero() { return HarmonicShift{}; }

HarmonicShift HarmonicShift::constant(double c) {
    HarmonicShift hs;
    hs.h = [c](double, double) { return c; };
    hs.dh_du1 = [](double, double) { return 0.0; };
    hs.dh_du2 = [](double, double) { return 0.0; };
    hs.conj = [](double, double) { return 0.0; };
    hs.is_zero = (c == 0.0);
    return hs;
}

HarmonicShift HarmonicShift::linear(double c, double beta) {
    HarmonicShift hs;
    hs.h = [c, beta](double u1, double) { return c + beta * u1; };
    hs.dh_du1 = [beta](double, double) { return beta; };
    hs.dh_du2 = [](double, double) { return 0.0; };
    hs.conj = [beta](double, double u2) { return beta * u2; };
    hs.is_zero = (c == 0.0 && beta == 0.0);
    return hs;
}

void OVParams::validate() const {
    if (!(s > 0.0)) throw ValidationError("s must be positive");
    if (!(delta0 > 0.0 && delta0 <= 0.5)) throw ValidationError("delta0 must lie in (0, 1/2]");
    if (trunc_n < 2) throw ValidationError("trunc_n must be at least 2");
    if (!h.is_zero) {
        const double bound = std::log(1.0 / delta0) / (10.0 * kPi);
        for (int i = -8; i <= 8; ++i) {
            for (int j = -8; j <= 8; ++j) {
                const double u1 = delta0 * i / 8.0, u2 = delta0 * j / 8.0;
                if (u1 * u1 + u2 * u2 >= delta0 * delta0) continue;
                if (std::abs(h.value(u1, u2)) > bound) {
                    throw ValidationError("harmonic shift exceeds log(1/delta0)/(10 pi) on the chart");
                }
            }
        }
    }
}

double euler_gamma() {
    static const double g = [] {
        const int n = 1000;
        double H = 0.0;
        for (int k = n; k >= 1; --k) H += 1.0 / k;
        const double N = n;
        return H - std::log(N) - 1.0 / (2.0 * N) + 1.0 / (12.0 * N * N) -
               1.0 / (120.0 * std::pow(N, 4)) + 1.0 / (252.0 * std::pow(N, 6));
    }();
    return g;
}

double ov_a_s(double s) {
    if (!(s > 0.0)) throw DomainError("a_s requires s > 0");
    return (euler_gamma() - std::log(2.0 * s)) / (kTwoPi * s);
}

double ov_potential(const Vec3& u, const OVParams& p) {
    const double s = p.s;
    const double r2 = u[0] * u[0] + u[1] * u[1];
    const double t = reduce_periodic(u[2], s);
    const double rho = std::sqrt(r2 + t * t);
    if (rho == 0.0) throw DomainError("V_s is singular at a monopole point");
    const int N = effective_terms(p.trunc_n, rho, s);
    double sum = 0.0;
    for (int n = N; n >= 1; --n) {
        const double A = s * n;
        sum += 1.0 / std::sqrt(r2 + (A - t) * (A - t)) + 1.0 / std::sqrt(r2 + (A + t) * (A + t)) -
               2.0 / A;
    }
    const double c3 = (2.0 * t * t - r2) / (s * s * s);
    const double c5 = (0.75 * r2 * r2 - 6.0 * r2 * t * t + 2.0 * t * t * t * t) / std::pow(s, 5);
    sum += c3 * zeta_tail(3, N) + c5 * zeta_tail(5, N);
    return sum / (4.0 * kPi) + 1.0 / (4.0 * kPi * rho) + ov_a_s(s) + p.h.value(u[0], u[1]) / s;
}

double ov_potential_minus_vsf(const Vec3& u, const OVParams& p) {
    const double s = p.s;
    const double r = std::hypot(u[0], u[1]);
    if (r == 0.0) throw DomainError("Fourier representation requires |y| > 0");
    const double phase = kTwoPi * u[2] / s;
    double sum = 0.0;
    for (int k = 1; k < 100000; ++k) {
        const double x = kTwoPi * k * r / s;
        if (x > 700.0) break;
        const double term = std::cyl_bessel_k(0.0, x);
        sum += term * std::cos(k * phase);
        if (term < 1e-18 * std::abs(sum) || term < 1e-300) break;
    }
    return sum / (kPi * s);
}

double ov_vsf(cplx y, const OVParams& p) {
    const double r = std::abs(y);
    if (r == 0.0) throw DomainError("Vsf is singular at y = 0");
    return -std::log(r) / (kTwoPi * p.s) + p.h.value(y.real(), y.imag()) / p.s;
}

double ov_potential_fourier(const Vec3& u, const OVParams& p) {
    return ov_vsf(cplx(u[0], u[1]), p) + ov_potential_minus_vsf(u, p);
}

double ov_F(double x, double t, int trunc_n) {
    t = reduce_periodic(t, 1.0);
    const double rho = std::hypot(x, t);
    if (rho == 0.0) throw DomainError("F is singular at a monopole point");
    const int N = effective_terms(trunc_n, rho, 1.0);
    const double x2 = x * x;
    double sum = 0.0;
    for (int n = N; n >= 1; --n) {
        const double a = n - t, b = n + t;
        const double ra = std::sqrt(x2 + a * a), rb = std::sqrt(x2 + b * b);
        sum += x2 / (ra * (ra + a)) - x2 / (rb * (rb + b));
    }
    const double c3 = 2.0 * t * x2;
    const double c5 = t * x2 * (4.0 * t * t - 3.0 * x2);
    sum += c3 * zeta_tail(3, N) + c5 * zeta_tail(5, N);
    return -sum / (4.0 * kPi) - t / (4.0 * kPi * rho) + t / kTwoPi;
}

double ov_psi(double u2, double u3, const OVParams& p) {
    const double s = p.s;
    const double t = reduce_periodic(u3, s);
    const double q = u2 * u2;
    const double rho = std::sqrt(q + t * t);
    const int N = effective_terms(p.trunc_n, rho, s);
    double sum = 0.0;
    for (int n = N; n >= 1; --n) {
        const double A = s * n;
        const double a = A - t, b = A + t;
        sum += q / (std::sqrt(q + a * a) + a) + q / (std::sqrt(q + b * b) + b) - q / A;
    }
    const double c3 = q * (t * t - 0.25 * q) / (s * s * s);
    const double c5 = q * (q * q / 8.0 - 1.5 * q * t * t + t * t * t * t) / std::pow(s, 5);
    sum += c3 * zeta_tail(3, N) + c5 * zeta_tail(5, N);
    return -sum / (4.0 * kPi) - rho / (4.0 * kPi) - 0.5 * ov_a_s(s) * q +
           (t * t - q) / (4.0 * kPi * s) - p.h.int2_h0(u2) / s;
}

double ov_phi(const Vec3& u, const OVParams& p) {
    double radial = 0.0;
    if (u[0] != 0.0) {
        radial = integrate([&](double t) { return t * ov_potential({t, u[1], u[2]}, p); }, 0.0, u[0],
                           16, 4);
    }
    return -radial + ov_psi(u[1], u[2], p);
}

namespace {

double dphi_du2(double u1, double u2, double V, const OVParams& p) {
    const double s = p.s;
    return -u2 * (V - p.h.value(u1, u2) / s + 1.0 / (kTwoPi * s)) +
           (-p.h.int_t_dh2(u1, u2) - p.h.int_h0(u2)) / s;
}

} // namespace

OVGammaSample ov_phi_gradient(const Vec3& u, const OVParams& p) {
    OVGammaSample g;
    g.V = ov_potential(u, p);
    const double r = std::hypot(u[0], u[1]);
    g.dphi[0] = -u[0] * g.V;
    g.dphi[1] = dphi_du2(u[0], u[1], g.V, p);
    g.dphi[2] = ov_F(r / p.s, u[2] / p.s, p.trunc_n);
    g.gamma_perp = g.dphi[2];
    g.gamma_f_normsq = g.V * u[0] * u[0] + g.dphi[1] * g.dphi[1] / g.V;
    return g;
}

OVGammaSample ov_phi_gradient_semiflat(cplx y, const OVParams& p) {
    OVGammaSample g;
    g.V = ov_vsf(y, p);
    g.dphi[0] = -y.real() * g.V;
    g.dphi[1] = dphi_du2(y.real(), y.imag(), g.V, p);
    g.dphi[2] = 0.0;
    g.gamma_perp = 0.0;
    g.gamma_f_normsq = g.V * y.real() * y.real() + g.dphi[1] * g.dphi[1] / g.V;
    return g;
}

cplx ov_calV(cplx y, const OVParams& p) {
    const double r = std::abs(y);
    if (r == 0.0) throw DomainError("calV is singular at y = 0");
    double im_log_inv = 0.0;
    if (p.branch == LogBranch::ZeroTwoPi) {
        im_log_inv = wrap_angle(-std::arg(y));
    } else {
        double im_log = std::arg(y);
        while (im_log < 0.5 * kPi) im_log += kTwoPi;
        while (im_log >= 2.5 * kPi) im_log -= kTwoPi;
        im_log_inv = -im_log;
    }
    const cplx log_inv(-std::log(r), im_log_inv);
    const cplx hhat(p.h.value(y.real(), y.imag()), p.h.im_hhat(y.real(), y.imag()));
    return log_inv / kTwoPi + hhat;
}

Eigen::Matrix2d ov_fiber_metric_theta(cplx y, double V, const OVParams& p) {
    const cplx cv = ov_calV(y, p);
    const double a = cv.imag(), b = cv.real();
    Eigen::Matrix2d g;
    g << 1.0, a, a, a * a + b * b;
    return g / (V * 4.0 * kPi * kPi);
}

MetricSample ov_metric(const Vec3& u, const OVParams& p) {
    const double V = ov_potential(u, p);
    MetricSample m;
    m.g = Eigen::Vector4d(1.0 / V, V, V, V).asDiagonal();
    m.base = V * Eigen::Matrix2d::Identity();
    const cplx y(u[0], u[1]);
    if (std::abs(y) > 0.0) m.fiber = ov_fiber_metric_theta(y, V, p);
    else m.fiber = Eigen::Matrix2d::Constant(std::numeric_limits<double>::quiet_NaN());
    return m;
}

OVCompareReport ov_compare(cplx y, const OVParams& p, int n_u3) {
    const double r = std::abs(y);
    if (r == 0.0 || r >= p.delta0) throw DomainError("ov_compare requires 0 < |y| < delta0");
    OVCompareReport rep;
    rep.y_abs = r;
    rep.s = p.s;
    rep.log_lower_min = rep.upper_ratio_min = rep.ratio_min = std::numeric_limits<double>::infinity();
    rep.ratio_max = 0.0;
    const double vsf = ov_vsf(y, p);
    double maxdiff = 0.0;
    for (int i = 0; i < n_u3; ++i) {
        const Vec3 u{y.real(), y.imag(), p.s * i / n_u3};
        maxdiff = std::max(maxdiff, std::abs(ov_potential_minus_vsf(u, p)));
        const double V = ov_potential(u, p);
        rep.log_lower_min = std::min(rep.log_lower_min, V * 10.0 * kPi * p.s / std::log(1.0 / r));
        rep.upper_ratio_min = std::min(rep.upper_ratio_min, (vsf + 1.0 / (kTwoPi * r)) / V);
        rep.ratio_min = std::min(rep.ratio_min, V / vsf);
        rep.ratio_max = std::max(rep.ratio_max, V / vsf);
    }
    // Evaluate s e^{x} |V - Vsf| through logs to avoid overflow of e^{x}.
    rep.exp_gap_stat = maxdiff > 0.0 ? std::exp(std::log(p.s * maxdiff) + kTwoPi * r / p.s) : 0.0;
    return rep;
}

double ov_sigma_s(double s) {
    return std::sqrt(s * (std::log(1.0 / s) + std::log(kPi)) / (2.0 * kPi * kPi * kPi));
}

double ov_pushforward_density(Vec2 xi, const OVParams& p) {
    const cplx y = zeta_s_inverse(xi, p.s);
    const double r = std::abs(y);
    if (r == 0.0) return 1.0;
    const double L = std::log(1.0 / r);
    return (1.0 + kTwoPi * p.h.value(y.real(), y.imag()) / L) / (1.0 - 0.5 / L);
}

} // namespace collapse
