#pragma once

#include "collapse/ooguri_vafa.hpp"

#include <map>
#include <vector>

namespace collapse {

// Holonomy integrals over the cycle basis: x1 = int_{e1} gamma, x2 = int_{e2} gamma,
// shifted by the gauge offsets a.
struct HolonomyVector {
    double x1 = 0.0;
    double x2 = 0.0;
    Vec2 a{0.0, 0.0};
};

struct BSPoint {
    cplx base{0.0, 0.0}; // y for OV, action coordinate x1 + i x2 for the abelian model
    int level = 1;       // smallest m with trivial m-th holonomy
    bool strict = false; // level equals the requested k
    bool near_branch_cut = false;
};

// Axis-aligned window; each side may be open or closed.
struct Window {
    double lo[2] = {0.0, 0.0};
    double hi[2] = {1.0, 1.0};
    bool closed_lo[2] = {true, true};
    bool closed_hi[2] = {false, false};

    static Window half_open(double lo0, double hi0, double lo1, double hi1);
    static Window open(double lo0, double hi0, double lo1, double hi1);
    bool contains(double x0, double x1) const;
};

double holonomy_H(double u1, double u2, const OVParams& p);
// H - u1 Im(calV): continuous across the log branch cut.
double holonomy_H0(double u1, double u2, const OVParams& p);
// Numerical integral of gamma_s over the constructed e2 cycle: the horizontal
// lift over u3 in [0, s] followed by the orbit segment. dphi/du2 is obtained by
// differentiating phi_s numerically, independently of the closed form.
double holonomy_line_integral(double u1, double u2, const OVParams& p, int panels = 8);
HolonomyVector holonomy_vector(cplx y, Vec2 a, const OVParams& p);

// Smallest m with m * q integral for q = j / k (j integral).
int bs_level(int k, long j1, long j2);

std::vector<BSPoint> bs_points_semiflat(const Window& w, int k, Vec2 a = {0.0, 0.0});
std::vector<BSPoint> bs_points_ov(int k, Vec2 a, const OVParams& p, double tol = 1e-12);
std::map<int, std::vector<BSPoint>> bs_level_decompose(const std::vector<BSPoint>& pts, int k);

} // namespace collapse
