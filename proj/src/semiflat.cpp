#include "collapse/semiflat.hpp"

#include "collapse/quadrature.hpp"

#include <cmath>

namespace collapse {

namespace {

constexpr double kDiffStep = 1e-5;

cplx central_difference(const HoloFn& f, cplx y) {
    return (f(y + kDiffStep) - f(y - kDiffStep)) / (2.0 * kDiffStep);
}

void require_tau1_one(const LatticeFamily& lat, cplx y) {
    if (std::abs(lat.tau1(y) - cplx(1.0, 0.0)) > 1e-14) {
        throw ValidationError("lattice must be normalized so that tau1 = 1");
    }
}

double checked_im_tau2(const LatticeFamily& lat, cplx y) {
    const double im = lat.orientation(y);
    if (!(im > 0.0)) throw DomainError("degenerate or misoriented lattice: Im(conj(tau1) tau2) <= 0");
    return im;
}

} // namespace

double LatticeFamily::orientation(cplx y) const { return (std::conj(tau1(y)) * tau2(y)).imag(); }

cplx LatticeFamily::d_tau1(cplx y) const { return dtau1 ? dtau1(y) : central_difference(tau1, y); }

cplx LatticeFamily::d_tau2(cplx y) const { return dtau2 ? dtau2(y) : central_difference(tau2, y); }

cplx LatticeFamily::primitive(cplx y) const {
    if (Y) return Y(y);
    const double re = integrate([&](double u) { return tau2(u * y).real(); }, 0.0, 1.0, 16);
    const double im = integrate([&](double u) { return tau2(u * y).imag(); }, 0.0, 1.0, 16);
    return y * cplx(re, im);
}

LatticeFamily lattice_abelian() {
    LatticeFamily lat;
    lat.name = "abelian";
    lat.dtau1 = [](cplx) { return cplx(0.0, 0.0); };
    lat.dtau2 = [](cplx) { return cplx(0.0, 0.0); };
    lat.Y = [](cplx y) { return cplx(0.0, 1.0) * y; };
    return lat;
}

LatticeFamily lattice_exponential(double beta) {
    if (beta == 0.0) return lattice_abelian();
    const cplx I(0.0, 1.0);
    LatticeFamily lat;
    lat.name = "exponential";
    lat.tau2 = [=](cplx y) { return I * std::exp(beta * y); };
    lat.dtau1 = [](cplx) { return cplx(0.0, 0.0); };
    lat.dtau2 = [=](cplx y) { return I * beta * std::exp(beta * y); };
    lat.Y = [=](cplx y) { return I * (std::exp(beta * y) - 1.0) / beta; };
    return lat;
}

LatticeFamily lattice_ov_matching(double hhat) {
    const cplx I(0.0, 1.0);
    LatticeFamily lat;
    lat.name = "ov-matching";
    lat.tau2 = [=](cplx y) { return std::log(y) / (kTwoPi * I) + I * hhat; };
    lat.dtau1 = [](cplx) { return cplx(0.0, 0.0); };
    lat.dtau2 = [=](cplx y) { return 1.0 / (kTwoPi * I * y); };
    return lat;
}

SemiFlatPotential sf_potential(cplx y, cplx x, const LatticeFamily& lat, double s) {
    if (!(s > 0.0)) throw DomainError("s must be positive");
    const double im = checked_im_tau2(lat, y);
    const cplx t1 = lat.tau1(y), t2 = lat.tau2(y);
    SemiFlatPotential out;
    out.W = s / im;
    out.b = -(out.W / s) * ((t2 * std::conj(x)).imag() * lat.d_tau1(y) +
                            (std::conj(t1) * x).imag() * lat.d_tau2(y));
    return out;
}

Eigen::Matrix2cd sf_frame10(cplx y, const LatticeFamily& lat, double s) {
    require_tau1_one(lat, y);
    const double im = checked_im_tau2(lat, y);
    const cplx t2 = lat.tau2(y);
    Eigen::Matrix2d M;
    M << 1.0, t2.real(), t2.real(), std::norm(t2);
    return cplx(0.0, s / im) * M.cast<cplx>();
}

Eigen::Matrix2d sf_fiber_metric(cplx y, const LatticeFamily& lat, double s) {
    const Eigen::Matrix2cd A = sf_frame10(y, lat, s);
    return A.imag() / (4.0 * kPi * kPi);
}

Eigen::Matrix4d sf_metric(cplx y, const LatticeFamily& lat, double s) {
    const Eigen::Matrix2d P = sf_frame10(y, lat, s).imag();
    Eigen::Matrix4d g = Eigen::Matrix4d::Zero();
    g.topLeftCorner<2, 2>() = P.inverse();
    g.bottomRightCorner<2, 2>() = P;
    return g;
}

Eigen::Matrix4d sf_complex_structure(cplx y, const LatticeFamily& lat, double s) {
    const Eigen::Matrix4d g = sf_metric(y, lat, s);
    Eigen::Matrix4d omega = Eigen::Matrix4d::Zero();
    omega(0, 2) = 1.0;
    omega(1, 3) = 1.0;
    omega(2, 0) = -1.0;
    omega(3, 1) = -1.0;
    return g.inverse() * omega.transpose();
}

Eigen::Matrix4d sf_kahler_form(cplx y, cplx x, const LatticeFamily& lat, double s) {
    const SemiFlatPotential p = sf_potential(y, x, lat, s);
    // Complex 1-forms as rows over the real basis (dx1, dx2, dy1, dy2).
    const cplx I(0.0, 1.0);
    Eigen::RowVector4cd dx, dy;
    dx << 1.0, I, 0.0, 0.0;
    dy << 0.0, 0.0, 1.0, I;
    const Eigen::RowVector4cd e = dx + p.b * dy;
    auto wedge = [](const Eigen::RowVector4cd& a, const Eigen::RowVector4cd& b) {
        return Eigen::Matrix4cd(a.transpose() * b - b.transpose() * a);
    };
    const Eigen::Matrix4cd eta =
        0.5 * I * (p.W * wedge(e, e.conjugate()) + (1.0 / p.W) * wedge(dy, dy.conjugate()));
    return eta.real();
}

Vec2 sf_action_coordinates(cplx y, const LatticeFamily& lat) {
    require_tau1_one(lat, y);
    return {y.real() / kTwoPi, lat.primitive(y).real() / kTwoPi};
}

double max_eigenvalue_2x2(const Eigen::Matrix2d& g) {
    const double tr = g(0, 0) + g(1, 1);
    const double det = g(0, 0) * g(1, 1) - g(0, 1) * g(1, 0);
    return 0.5 * tr + std::sqrt(std::max(0.0, 0.25 * tr * tr - det));
}

} // namespace collapse
