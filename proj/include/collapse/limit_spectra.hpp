#pragma once

#include "collapse/geometry.hpp"
#include "collapse/lanczos.hpp"

#include <string>
#include <vector>

namespace collapse {

// Limit metric dt^2 / (m^2 (1 + |xi|^2)) + |dxi|^2 on S^1 x R^2.
struct LimitMetric {
    int m = 1;

    Eigen::Matrix3d tensor(double xi1, double xi2) const; // in (t, xi1, xi2)
    double fiber_length(Vec2 xi) const;                   // 2 pi / (m sqrt(1 + |xi|^2))
};

// Discretized weighted-space operator -Lap + 2k xi.grad on the box
// |xi|_inf <= 6/sqrt(k) with Dirichlet truncation. The stored matrix is the
// symmetrization by the weight e^{-k|xi|^2} evaluated at the nodes.
// n_per_axis interior nodes per axis; dim is 1 or 2.
OperatorMatrix gaussian_operator(int k, int n_per_axis, int dim = 2);

// Unsymmetrized matrix W^{-1} K acting on nodal values. W times it is
// symmetric.
SpMat gaussian_weighted_form(const OperatorMatrix& op);

// Lowest eigenvalues of gaussian_operator; throws ValidationError when the
// grid is too small for the requested count.
SpectrumResult gaussian_lowest(int k, int n_per_axis, int n_eigs, int dim = 2, double tol = 1e-11);

// Exact values 2k(n1 + ... ) with multiplicity, ascending.
std::vector<double> gaussian_exact_spectrum(int k, int count, int dim = 2);

// Eigenvalues of -d^2 + k^2 xi^2 - k assembled in the unit-frequency
// Hermite function basis of size n_basis via ladder recursions.
std::vector<double> hermite_galerkin_spectrum(int k, int n_basis, int count);

// Richardson extrapolation of values computed at h, h/ratio, h/ratio^2, ...
// assuming an error expansion in powers h^p, h^{2p}, ...
double richardson(const std::vector<double>& values, double ratio = 2.0, int p = 2);

// Weighted L^2 space with operator, up to the affine relabeling
// a1 * Sigma + a2.
struct SpectralStructure {
    bool zero = false;
    int k = 0;
    int m = 1;
    double a1 = 1.0;
    double a2 = 0.0;
    std::string space;

    // a1' (this) + a2'
    SpectralStructure scaled(double b1, double b2) const;
    // Lowest `count` eigenvalues from the exact Gaussian spectrum; empty for zero.
    std::vector<double> spectrum(int count) const;
    std::string describe() const;
};

// Isotypic component of the limit structure over S^1 x R^2 with circle
// length 2 pi / m: zero unless m divides k, otherwise the Gaussian
// structure shifted by k^2 + 2k.
SpectralStructure rho_k_structure(int m, int k);

struct LimitDistance {
    double distance = 0.0;
    double error_bound = 0.0; // graph bias bound, absolute
    int nodes = 0;
};

// Geodesic distance for the limit metric via Dijkstra on a product lattice
// of base step h.
LimitDistance limit_distance(const LimitPoint& u0, const LimitPoint& u1, int m, double h = 0.1);

} // namespace collapse
