#include "collapse/geometry.hpp"

#include <cmath>

namespace collapse {

void ModelParams::validate() const {
    if (!(s > 0.0)) throw ValidationError("s must be positive");
    if (k < 1) throw ValidationError("k must be a positive integer");
    if (m < 1) throw ValidationError("m must be a positive integer");
    if (!(delta0 > 0.0 && delta0 <= 0.5)) throw ValidationError("delta0 must lie in (0, 1/2]");
    if (trunc_n < 2) throw ValidationError("trunc_n must be at least 2");
    if (!(tol > 0.0)) throw ValidationError("tol must be positive");
}

BaseChart BaseChart::from_polar(double r, double theta) {
    if (r < 0.0) throw DomainError("negative radius");
    return BaseChart{std::polar(r, theta)};
}

double BaseChart::theta() const { return wrap_angle(std::arg(y)); }

LimitPoint::LimitPoint(double t_, Vec2 xi_) : t(wrap_angle(t_)), xi(xi_) {}

double wrap_angle(double a) {
    double w = std::fmod(a, kTwoPi);
    if (w < 0.0) w += kTwoPi;
    if (w >= kTwoPi) w = 0.0;
    return w;
}

double chi_forward(double tau) {
    if (tau == 0.0) return 0.0;
    return tau * tau * std::log(1.0 / tau) / kTwoPi;
}

double chi_forward_derivative(double tau) {
    if (tau == 0.0) return 0.0;
    return (2.0 * tau * std::log(1.0 / tau) - tau) / kTwoPi;
}

double chi_max() { return std::log(2.0) / (8.0 * kPi); }

double chi(double t, double tol) {
    const double tmax = chi_max();
    if (t < 0.0 || t > tmax * (1.0 + 1e-14)) throw DomainError("chi: argument outside [0, log2/(8 pi)]");
    if (t == 0.0) return 0.0;
    if (t >= tmax) return 0.5;
    double lo = 0.0, hi = 0.5;
    for (int it = 0; it < 80 && hi - lo > tol; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (chi_forward(mid) < t) lo = mid; else hi = mid;
    }
    return 0.5 * (lo + hi);
}

Vec2 zeta_s(cplx y, double s) {
    if (!(s > 0.0)) throw DomainError("zeta_s: s must be positive");
    const double r = std::abs(y);
    if (r == 0.0) return {0.0, 0.0};
    if (r >= 1.0) throw DomainError("zeta_s: requires |y| < 1");
    const double f = std::sqrt(std::log(1.0 / r) / (kTwoPi * s));
    return {f * y.real(), f * y.imag()};
}

cplx zeta_s_inverse(Vec2 xi, double s) {
    const double rx = std::hypot(xi[0], xi[1]);
    if (rx == 0.0) return {0.0, 0.0};
    const double ry = chi(s * rx * rx);
    return {ry * xi[0] / rx, ry * xi[1] / rx};
}

double zeta_radius(double delta0, double s) {
    return std::sqrt(chi_forward(delta0) / s);
}

} // namespace collapse
