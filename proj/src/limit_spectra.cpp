#include "collapse/limit_spectra.hpp"

#include "collapse/lattice_graph.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace collapse {

Eigen::Matrix3d LimitMetric::tensor(double xi1, double xi2) const {
    Eigen::Matrix3d g = Eigen::Matrix3d::Identity();
    g(0, 0) = 1.0 / (static_cast<double>(m) * m * (1.0 + xi1 * xi1 + xi2 * xi2));
    return g;
}

double LimitMetric::fiber_length(Vec2 xi) const {
    return kTwoPi / (m * std::sqrt(1.0 + xi[0] * xi[0] + xi[1] * xi[1]));
}

namespace {

// 1D conservative stencil for -e^{k x^2} d/dx (e^{-k x^2} d/dx): returns node
// weights w_i = e^{-k x_i^2} h and interface weights e^{-k x_{i+1/2}^2} / h.
struct Axis1D {
    std::vector<double> x, w, face; // face has n + 1 entries, face[i] left of node i
    double h = 0.0;
};

Axis1D make_axis(int k, int n) {
    const double L = 6.0 / std::sqrt(static_cast<double>(k));
    Axis1D a;
    a.h = 2.0 * L / (n + 1);
    for (int i = 0; i < n; ++i) {
        const double x = -L + (i + 1) * a.h;
        a.x.push_back(x);
        a.w.push_back(std::exp(-k * x * x) * a.h);
    }
    for (int i = 0; i <= n; ++i) {
        const double xm = -L + (i + 0.5) * a.h;
        a.face.push_back(std::exp(-k * xm * xm) / a.h);
    }
    return a;
}

} // namespace

OperatorMatrix gaussian_operator(int k, int n, int dim) {
    if (k < 1) throw ValidationError("gaussian_operator: k must be >= 1");
    if (n < 3) throw ValidationError("gaussian_operator: need at least 3 nodes per axis");
    if (dim != 1 && dim != 2) throw ValidationError("gaussian_operator: dim must be 1 or 2");
    const Axis1D ax = make_axis(k, n);
    OperatorMatrix op;
    op.model = "gaussian";
    op.k = k;
    op.nx = n;
    op.ny = dim == 2 ? n : 1;
    const int N = dim == 2 ? n * n : n;
    op.weight.resize(N);
    std::vector<Eigen::Triplet<double>> trip;
    trip.reserve(static_cast<std::size_t>(N) * (2 * dim + 1));
    // K = K1 (x) W1 + W1 (x) K1 in two dimensions, K1 in one.
    auto k1_entries = [&](int i, auto&& emit) {
        emit(i, ax.face[i] + ax.face[i + 1]);
        if (i > 0) emit(i - 1, -ax.face[i]);
        if (i + 1 < n) emit(i + 1, -ax.face[i + 1]);
    };
    if (dim == 1) {
        for (int i = 0; i < n; ++i) {
            op.weight[i] = ax.w[i];
            k1_entries(i, [&](int j, double v) { trip.emplace_back(i, j, v); });
        }
    } else {
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                const int row = i * n + j;
                op.weight[row] = ax.w[i] * ax.w[j];
                k1_entries(i, [&](int ii, double v) { trip.emplace_back(row, ii * n + j, v * ax.w[j]); });
                k1_entries(j, [&](int jj, double v) { trip.emplace_back(row, i * n + jj, v * ax.w[i]); });
            }
    }
    SpMat K(N, N);
    K.setFromTriplets(trip.begin(), trip.end());
    const Eigen::VectorXd is = op.weight.cwiseSqrt().cwiseInverse();
    op.A = is.asDiagonal() * K * is.asDiagonal();
    op.A.makeCompressed();
    op.blocks = {{0, N}};
    op.block_labels = {"gaussian"};
    return op;
}

SpMat gaussian_weighted_form(const OperatorMatrix& op) {
    const Eigen::VectorXd sq = op.weight.cwiseSqrt();
    SpMat B = sq.cwiseInverse().asDiagonal() * op.A * sq.asDiagonal();
    B.makeCompressed();
    return B;
}

SpectrumResult gaussian_lowest(int k, int n, int n_eigs, int dim, double tol) {
    const int N = dim == 2 ? n * n : n;
    if (n_eigs < 1 || 10 * n_eigs >= N)
        throw ValidationError("gaussian_lowest: grid of " + std::to_string(N) + " nodes too small for " +
                              std::to_string(n_eigs) + " eigenvalues");
    const OperatorMatrix op = gaussian_operator(k, n, dim);
    LanczosOptions opt;
    opt.shift = -0.5 * k;
    return lowest_eigs(op.A, n_eigs, tol, opt);
}

std::vector<double> gaussian_exact_spectrum(int k, int count, int dim) {
    std::vector<double> out;
    for (int level = 0; static_cast<int>(out.size()) < count; ++level) {
        const int mult = dim == 1 ? 1 : level + 1;
        for (int j = 0; j < mult && static_cast<int>(out.size()) < count; ++j) out.push_back(2.0 * k * level);
    }
    return out;
}

std::vector<double> hermite_galerkin_spectrum(int k, int n_basis, int count) {
    if (count > n_basis / 2) throw ValidationError("hermite_galerkin_spectrum: basis too small");
    const int M = n_basis + 2;
    // Position xi = (a + a^+) / sqrt 2, momentum-squared from (a^+ - a)^2 / 2.
    Eigen::MatrixXd X = Eigen::MatrixXd::Zero(M, M);
    Eigen::MatrixXd D = Eigen::MatrixXd::Zero(M, M); // i times momentum, real
    for (int n = 0; n + 1 < M; ++n) {
        X(n, n + 1) = X(n + 1, n) = std::sqrt((n + 1) / 2.0);
        D(n, n + 1) = std::sqrt((n + 1) / 2.0);
        D(n + 1, n) = -std::sqrt((n + 1) / 2.0);
    }
    const Eigen::MatrixXd H = (-(D * D) + static_cast<double>(k) * k * (X * X)).topLeftCorner(n_basis, n_basis);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(H);
    std::vector<double> out;
    for (int i = 0; i < count; ++i) out.push_back(es.eigenvalues()[i] - k);
    return out;
}

double richardson(const std::vector<double>& values, double ratio, int p) {
    if (values.empty()) throw ValidationError("richardson: no values");
    std::vector<double> t = values;
    for (int level = 1; level < static_cast<int>(values.size()); ++level) {
        const double f = std::pow(ratio, p * level);
        for (int i = static_cast<int>(t.size()) - 1; i >= level; --i) t[i] = (f * t[i] - t[i - 1]) / (f - 1.0);
    }
    return t.back();
}

SpectralStructure SpectralStructure::scaled(double b1, double b2) const {
    if (!(b1 > 0.0)) throw ValidationError("SpectralStructure: scale must be positive");
    SpectralStructure r = *this;
    r.a1 = b1 * a1;
    r.a2 = b1 * a2 + b2;
    return r;
}

std::vector<double> SpectralStructure::spectrum(int count) const {
    if (zero) return {};
    std::vector<double> ev = gaussian_exact_spectrum(k, count, 2);
    for (double& v : ev) v = a1 * v + a2;
    return ev;
}

std::string SpectralStructure::describe() const {
    if (zero) return "zero";
    std::ostringstream os;
    os.precision(17);
    os << a1 << " * (" << space << ", gaussian k=" << k << ") + " << a2;
    return os.str();
}

SpectralStructure rho_k_structure(int m, int k) {
    if (m < 1 || k < 1) throw ValidationError("rho_k_structure: m and k must be >= 1");
    SpectralStructure s;
    s.m = m;
    s.k = k;
    if (k % m != 0) {
        s.zero = true;
        s.space = "{0}";
        return s;
    }
    s.space = "L2(R^2, exp(-" + std::to_string(k) + "|xi|^2))";
    s.a1 = 1.0;
    s.a2 = static_cast<double>(k) * k + 2.0 * k;
    return s;
}

LimitDistance limit_distance(const LimitPoint& u0, const LimitPoint& u1, int m, double h) {
    if (m < 1) throw ValidationError("limit_distance: m must be >= 1");
    if (!(h > 0.0)) throw ValidationError("limit_distance: step must be positive");
    const LimitMetric lm{m};
    const double dxi = std::hypot(u1.xi[0] - u0.xi[0], u1.xi[1] - u0.xi[1]);
    // Any geodesic is no longer than dxi + pi/m, so it stays in this box.
    const double reach = dxi + kPi / m + 2.0 * h;
    const double lo = std::min({u0.xi[0], u0.xi[1]}) - reach;
    const double hi = std::max({u0.xi[0], u0.xi[1]}) + reach;
    const double c = std::max(std::abs(lo), std::abs(hi));
    const int nb = static_cast<int>(std::ceil(2.0 * c / h)) + 1;
    const int nt = std::max(16, static_cast<int>(std::ceil(kTwoPi / (m * h))));
    LatticeGraph g([lm](double a, double b) { return lm.tensor(a, b); }, nt, nb, -c, c);
    LimitDistance out;
    out.nodes = g.size();
    out.distance = g.distance({u0.t, u0.xi[0], u0.xi[1]}, {u1.t, u1.xi[0], u1.xi[1]});
    out.error_bound = g.stencil_bias() * out.distance + 4.0 * h;
    return out;
}

} // namespace collapse
