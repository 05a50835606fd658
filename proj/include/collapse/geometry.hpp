#pragma once

#include <Eigen/Dense>
#include <array>
#include <complex>
#include <stdexcept>
#include <string>

namespace collapse {

using cplx = std::complex<double>;
using Vec2 = std::array<double, 2>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

// Raised when an argument lies outside the domain of a map.
struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

// Raised when a parameter bundle violates its invariants.
struct ValidationError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Raised when an iterative method fails to reach its tolerance.
struct NonConvergence : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ModelParams {
    double s = 0.05;     // fiber area, the collapse parameter
    int k = 1;           // prequantum power
    int m = 1;           // strict BS level
    double delta0 = 0.5; // OV chart radius
    int trunc_n = 2000;  // lattice-sum truncation
    double tol = 1e-10;

    void validate() const;
};

struct BaseChart {
    cplx y{0.0, 0.0};

    static BaseChart from_polar(double r, double theta);
    double r() const { return std::abs(y); }
    double theta() const; // in [0, 2pi)
};

struct LimitPoint {
    double t = 0.0; // circle coordinate, kept in [0, 2pi)
    Vec2 xi{0.0, 0.0};

    LimitPoint() = default;
    LimitPoint(double t_, Vec2 xi_);
};

// Metric tensor at a chart point with its fiber/base split.
struct MetricSample {
    Eigen::Matrix4d g = Eigen::Matrix4d::Identity(); // in the stated coframe
    Eigen::Matrix2d fiber = Eigen::Matrix2d::Identity();
    Eigen::Matrix2d base = Eigen::Matrix2d::Identity();
};

double wrap_angle(double a);

// Forward map tau -> tau^2 log(1/tau) / (2 pi), increasing on [0, 1/2].
double chi_forward(double tau);
// d/dtau of chi_forward.
double chi_forward_derivative(double tau);

// Largest admissible argument of chi, equal to chi_forward(1/2).
double chi_max();

// Inverse of chi_forward on [0, chi_max()], by bisection.
double chi(double t, double tol = 1e-15);

// Rescaling map xi = sqrt(log|y|^{-1} / (2 pi s)) y, extended by 0 at y = 0.
Vec2 zeta_s(cplx y, double s);

// Inverse of zeta_s on the disc |y| <= 1/2.
cplx zeta_s_inverse(Vec2 xi, double s);

// Largest radius in xi-space covered by zeta_s(D(delta0)).
double zeta_radius(double delta0, double s);

} // namespace collapse
