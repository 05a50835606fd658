#pragma once

#include "collapse/geometry.hpp"

#include <Eigen/Dense>
#include <functional>
#include <string>

namespace collapse {

using HoloFn = std::function<cplx(cplx)>;

// Holomorphic family of period lattices. Missing derivatives are replaced by
// central differences with step 1e-5; a missing primitive Y of tau2 is
// integrated along the segment from 0.
struct LatticeFamily {
    std::string name = "custom";
    HoloFn tau1 = [](cplx) { return cplx(1.0, 0.0); };
    HoloFn tau2 = [](cplx) { return cplx(0.0, 1.0); };
    HoloFn dtau1;
    HoloFn dtau2;
    HoloFn Y;

    double orientation(cplx y) const; // Im(conj(tau1) tau2)
    cplx d_tau1(cplx y) const;
    cplx d_tau2(cplx y) const;
    cplx primitive(cplx y) const;
};

LatticeFamily lattice_abelian();
// tau2(y) = i exp(beta y); smooth, non-constant test family.
LatticeFamily lattice_exponential(double beta);
// tau2(y) = log(y) / (2 pi i) + i hhat, matching the OV periods.
LatticeFamily lattice_ov_matching(double hhat = 0.0);

struct SemiFlatPotential {
    double W = 0.0;
    cplx b{0.0, 0.0};
};

// Standard semi-flat (W, b) at base point y and fiber coordinate x.
SemiFlatPotential sf_potential(cplx y, cplx x, const LatticeFamily& lat, double s);

// Coefficients A of the (1,0)-frame dq_i + sum_j A_ij dv_j in the chart
// (y1, Y1, v1, v2); requires tau1 = 1.
Eigen::Matrix2cd sf_frame10(cplx y, const LatticeFamily& lat, double s);

// Fiber metric in angle coordinates theta = 2 pi v.
Eigen::Matrix2d sf_fiber_metric(cplx y, const LatticeFamily& lat, double s);

// Full metric in the chart (y1, Y1, v1, v2).
Eigen::Matrix4d sf_metric(cplx y, const LatticeFamily& lat, double s);

// Complex structure J with omega(X, Y) = g(JX, Y), omega = dy1^dv1 + dY1^dv2.
Eigen::Matrix4d sf_complex_structure(cplx y, const LatticeFamily& lat, double s);

// Real 4x4 antisymmetric matrix of the Kahler form eta in real coordinates
// (x1, x2, y1, y2) where x is the complex fiber coordinate.
Eigen::Matrix4d sf_kahler_form(cplx y, cplx x, const LatticeFamily& lat, double s);

// Action coordinates (y1, Re Y) / (2 pi) of a base point.
Vec2 sf_action_coordinates(cplx y, const LatticeFamily& lat);

// Largest eigenvalue of a symmetric 2x2 matrix.
double max_eigenvalue_2x2(const Eigen::Matrix2d& g);

} // namespace collapse
