#include "collapse/gh_lab.hpp"

#include "collapse/parallel.hpp"
#include "collapse/quadrature.hpp"
#include "collapse/semiflat.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <limits>
#include <numeric>
#include <queue>

namespace collapse {

LimitPoint approx_map(const BundlePoint& u, double s) { return LimitPoint(u.t, zeta_s(u.y, s)); }

Eigen::Matrix2d zeta_inverse_jacobian(Vec2 xi, double s) {
    const double r = std::hypot(xi[0], xi[1]);
    if (r == 0.0) throw DomainError("zeta_inverse_jacobian: undefined at xi = 0");
    const double rho = chi(s * r * r);
    const double drho = 2.0 * s * r / chi_forward_derivative(rho);
    const Eigen::Vector2d e(xi[0] / r, xi[1] / r);
    const Eigen::Matrix2d P = e * e.transpose();
    return (rho / r) * (Eigen::Matrix2d::Identity() - P) + drho * P;
}

Eigen::Matrix3d ov_reduced_metric(Vec2 xi, const OVParams& p) {
    Eigen::Matrix3d g = Eigen::Matrix3d::Identity();
    if (std::hypot(xi[0], xi[1]) < 1e-300) return g;
    const cplx y = zeta_s_inverse(xi, p.s);
    const OVGammaSample gs = ov_phi_gradient_semiflat(y, p);
    const Eigen::Matrix2d J = zeta_inverse_jacobian(xi, p.s);
    g(0, 0) = 1.0 / (1.0 + gs.gamma_f_normsq);
    g.bottomRightCorner<2, 2>() = gs.V * J.transpose() * J;
    return g;
}

double SandwichSample::delta() const { return std::max(hi - 1.0, 1.0 / lo - 1.0); }

SandwichSample base_sandwich(Vec2 xi, const OVParams& p) {
    const Eigen::Matrix3d g = ov_reduced_metric(xi, p);
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(g.bottomRightCorner<2, 2>());
    return {es.eigenvalues()[0], es.eigenvalues()[1]};
}

namespace {

// Even node count keeps the lattice off the singular point xi = 0.
LatticeGraph make_graph(BaseMetricFn f, double radius, GraphResolution res) {
    const int nb = res.nb % 2 == 0 ? res.nb : res.nb + 1;
    const double r2 = radius * radius * (1.0 + 1e-12);
    return LatticeGraph(std::move(f), res.nt, nb, -radius, radius,
                        [r2](double a, double b) { return a * a + b * b <= r2; });
}

} // namespace

CloudGraph build_cloud_graph(const OVParams& p, double radius, int m, GraphResolution res) {
    if (radius >= zeta_radius(p.delta0, p.s)) throw ValidationError("build_cloud_graph: radius exceeds the chart image");
    CloudGraph g;
    g.radius = radius;
    g.m = m;
    g.source = std::make_unique<LatticeGraph>(make_graph(
        [p, m](double a, double b) {
            Eigen::Matrix3d G = ov_reduced_metric({a, b}, p);
            G(0, 0) /= static_cast<double>(m) * m;
            return G;
        },
        radius, res));
    g.limit = std::make_unique<LatticeGraph>(make_graph(
        [m](double a, double b) {
            Eigen::Matrix3d G = Eigen::Matrix3d::Identity();
            G(0, 0) = 1.0 / (static_cast<double>(m) * m * (1.0 + a * a + b * b));
            return G;
        },
        radius, res));
    return g;
}

CloudGraph build_flat_cloud_graph(double radius, int m, GraphResolution res) {
    CloudGraph g;
    g.radius = radius;
    g.m = m;
    auto lim = [m](double a, double b) {
        Eigen::Matrix3d G = Eigen::Matrix3d::Identity();
        G(0, 0) = 1.0 / (static_cast<double>(m) * m * (1.0 + a * a + b * b));
        return G;
    };
    g.source = std::make_unique<LatticeGraph>(make_graph(lim, radius, res));
    g.limit = std::make_unique<LatticeGraph>(make_graph(lim, radius, res));
    return g;
}

std::uint64_t SplitMix::next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

double SplitMix::uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

namespace {

double quantile(const std::vector<double>& sorted, double q) {
    if (sorted.empty()) return 0.0;
    const double pos = q * (sorted.size() - 1);
    const std::size_t i = static_cast<std::size_t>(std::floor(pos));
    const std::size_t j = std::min(i + 1, sorted.size() - 1);
    return sorted[i] + (pos - i) * (sorted[j] - sorted[i]);
}

} // namespace

DistortionReport sample_and_distort(const CloudGraph& g, double s, double R, int n, std::uint64_t seed,
                                    std::vector<double>* source_matrix) {
    if (n < 2) throw ValidationError("sample_and_distort: need at least two samples");
    if (R > g.radius) throw ValidationError("sample_and_distort: sample ball exceeds the graph domain");
    SplitMix rng(seed);
    std::vector<GraphPoint> pts(n);
    for (auto& p : pts) {
        const double r = R * std::sqrt(rng.uniform());
        const double a = kTwoPi * rng.uniform();
        p = {kTwoPi * rng.uniform(), r * std::cos(a), r * std::sin(a)};
    }
    std::vector<std::vector<double>> fs(n), fl(n);
    std::vector<LatticeGraph::Attachment> as(n), al(n);
    parallel_for(n, [&](int i) {
        as[i] = g.source->attach(pts[i]);
        al[i] = g.limit->attach(pts[i]);
        fs[i] = g.source->distances_from(pts[i]);
        fl[i] = g.limit->distances_from(pts[i]);
    });
    DistortionReport rep;
    rep.s = s;
    rep.R = R;
    rep.samples = n;
    std::vector<double> dist, rel;
    if (source_matrix) source_matrix->assign(static_cast<std::size_t>(n) * n, 0.0);
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            const double ds = g.source->distance_to(fs[i], as[j]);
            const double dl = g.limit->distance_to(fl[i], al[j]);
            if (!std::isfinite(ds) || !std::isfinite(dl))
                throw NonConvergence("sample_and_distort: disconnected graph, raise the lattice density");
            dist.push_back(std::abs(ds - dl));
            rel.push_back(std::abs(ds - dl) / std::max(dl, 1e-300));
            if (source_matrix) (*source_matrix)[i * n + j] = (*source_matrix)[j * n + i] = ds;
        }
    }
    rep.pairs = static_cast<int>(dist.size());
    std::sort(dist.begin(), dist.end());
    std::sort(rel.begin(), rel.end());
    rep.sup = dist.back();
    rep.median = quantile(dist, 0.5);
    rep.q10 = quantile(dist, 0.1);
    rep.q25 = quantile(dist, 0.25);
    rep.q75 = quantile(dist, 0.75);
    rep.q90 = quantile(dist, 0.9);
    rep.median_relative = quantile(rel, 0.5);
    // Covering gap over lattice nodes of the target ball.
    double gap = 0.0;
    for (int id = 0; id < g.limit->size(); ++id) {
        if (!g.limit->active(id)) continue;
        const GraphPoint q = g.limit->node(id);
        if (q.c1 * q.c1 + q.c2 * q.c2 > R * R) continue;
        double best = std::numeric_limits<double>::infinity();
        for (int i = 0; i < n; ++i) best = std::min(best, fl[i][id]);
        gap = std::max(gap, best);
    }
    rep.surjectivity_gap = gap;
    rep.graph_bias = g.limit->stencil_bias();
    return rep;
}

RadialFn cutoff_constant(double R) {
    return [R](double r) {
        const double a = 0.9 * R;
        if (r <= a) return 1.0;
        if (r >= R) return 0.0;
        const double x = (r - a) / (R - a);
        return 1.0 - x * x * x * (10.0 - 15.0 * x + 6.0 * x * x);
    };
}

RadialFn radial_bump(double R) {
    return [R](double r) {
        const double q = r / R;
        return q < 1.0 ? std::exp(1.0 - 1.0 / (1.0 - q * q)) : 0.0;
    };
}

MeasureReport measure_check(MeasureModel model, const OVParams& p, double R, const RadialFn& f, int n) {
    if (!(R > 0.0)) throw ValidationError("measure_check: R must be positive");
    if (model == MeasureModel::OoguriVafa && R >= zeta_radius(p.delta0, p.s))
        throw ValidationError("measure_check: R exceeds the chart image");
    // Radial integrals with the t-circle contributing 2 pi and angles 2 pi.
    const int panels = std::max(1, n / 16);
    MeasureReport rep;
    double fmax = 0.0;
    rep.limit = kTwoPi * kTwoPi * integrate([&](double r) { return f(r) * r; }, 0.0, R, 16, panels);
    rep.source = kTwoPi * kTwoPi * integrate(
                                       [&](double r) {
                                           fmax = std::max(fmax, std::abs(f(r)));
                                           const double dens =
                                               model == MeasureModel::FlatAbelian ? 1.0 : ov_pushforward_density({r, 0.0}, p);
                                           return f(r) * dens * r;
                                       },
                                       0.0, R, 16, panels);
    rep.abs_error = std::abs(rep.source - rep.limit);
    rep.rel_error = rep.abs_error / std::abs(rep.limit);
    if (model == MeasureModel::OoguriVafa) {
        const double ry = std::abs(zeta_s_inverse({R, 0.0}, p.s));
        const OVCompareReport c = ov_compare(cplx(ry, 0.0), p);
        rep.delta = std::max(c.ratio_max - 1.0, 1.0 - c.ratio_min);
    }
    rep.bound = kTwoPi * rep.delta * fmax * kPi * R * R;
    return rep;
}

namespace {

struct Grid2D {
    std::function<Eigen::Matrix2d(double, double)> metric;
    int n0, n1;
    double lo0, lo1, h0, h1;
    bool per0, per1;
};

// Shortest paths on a 2D lattice with primitive offsets of sup-norm <= 3.
std::vector<double> grid2d_distances(const Grid2D& G, int src) {
    std::vector<std::array<int, 2>> st;
    for (int a = -3; a <= 3; ++a)
        for (int b = -3; b <= 3; ++b)
            if ((a || b) && std::gcd(std::abs(a), std::abs(b)) == 1) st.push_back({a, b});
    const GaussRule& gl = gauss_legendre(8);
    auto seg = [&](double x0, double y0, double dx, double dy) {
        double len = 0.0;
        for (std::size_t q = 0; q < gl.x.size(); ++q) {
            const double tau = 0.5 * (gl.x[q] + 1.0);
            const Eigen::Matrix2d M = G.metric(x0 + tau * dx, y0 + tau * dy);
            const Eigen::Vector2d d(dx, dy);
            len += 0.5 * gl.w[q] * std::sqrt(std::max(0.0, d.dot(M * d)));
        }
        return len;
    };
    const int N = G.n0 * G.n1;
    std::vector<double> dist(N, std::numeric_limits<double>::infinity());
    using Item = std::pair<double, int>;
    std::priority_queue<Item, std::vector<Item>, std::greater<Item>> pq;
    dist[src] = 0.0;
    pq.push({0.0, src});
    while (!pq.empty()) {
        const auto [d, id] = pq.top();
        pq.pop();
        if (d > dist[id]) continue;
        const int i = id / G.n1, j = id % G.n1;
        for (const auto& o : st) {
            int ii = i + o[0], jj = j + o[1];
            if (G.per0) ii = ((ii % G.n0) + G.n0) % G.n0;
            if (G.per1) jj = ((jj % G.n1) + G.n1) % G.n1;
            if (ii < 0 || jj < 0 || ii >= G.n0 || jj >= G.n1) continue;
            const double nd = d + seg(G.lo0 + i * G.h0, G.lo1 + j * G.h1, o[0] * G.h0, o[1] * G.h1);
            const int nid = ii * G.n1 + jj;
            if (nd < dist[nid]) {
                dist[nid] = nd;
                pq.push({nd, nid});
            }
        }
    }
    return dist;
}

} // namespace

double fiber_diameter(cplx y, const OVParams& p, int n) {
    if (std::abs(y) == 0.0) throw DomainError("fiber_diameter: singular fiber");
    const double c = ov_calV(y, p).imag();
    // Fiber coordinates (psi, w) in [0, 1)^2 with u3 = s w:
    // V^{-1} (dpsi + c dw)^2 + V s^2 dw^2.
    std::vector<double> V(n);
    for (int j = 0; j < n; ++j) V[j] = ov_potential({y.real(), y.imag(), p.s * j / n}, p);
    Grid2D G;
    G.metric = [&](double, double w) {
        double t = w * n;
        t -= n * std::floor(t / n);
        const int j0 = static_cast<int>(std::floor(t)) % n;
        const double f = t - std::floor(t);
        const double v = (1.0 - f) * V[j0] + f * V[(j0 + 1) % n];
        Eigen::Matrix2d M;
        M << 1.0 / v, c / v, c / v, c * c / v + v * p.s * p.s;
        return M;
    };
    G.n0 = G.n1 = n;
    G.lo0 = G.lo1 = 0.0;
    G.h0 = G.h1 = 1.0 / n;
    G.per0 = G.per1 = true;
    // The metric is invariant under psi shifts, so sources at psi = 0 suffice.
    std::vector<double> worst(n, 0.0);
    parallel_for(n, [&](int j) {
        const std::vector<double> d = grid2d_distances(G, j);
        worst[j] = *std::max_element(d.begin(), d.end());
    });
    return *std::max_element(worst.begin(), worst.end());
}

double bs_separation(Vec2 y0, Vec2 y1, double s, double beta, int n) {
    const LatticeFamily lat = beta == 0.0 ? lattice_abelian() : lattice_exponential(beta);
    const double lo0 = std::min(y0[0], y1[0]) - 0.5, hi0 = std::max(y0[0], y1[0]) + 0.5;
    const double lo1 = std::min(y0[1], y1[1]) - 0.5, hi1 = std::max(y0[1], y1[1]) + 0.5;
    Grid2D G;
    G.metric = [&](double a, double b) {
        const cplx y(a, b);
        const Eigen::Matrix2d P = sf_frame10(y, lat, s).imag();
        const cplx t2 = lat.tau2(y);
        Eigen::Matrix2d T;
        T << 1.0, 0.0, t2.real(), -t2.imag();
        return Eigen::Matrix2d(T.transpose() * P.inverse() * T);
    };
    // Grid aligned so both endpoints are nodes.
    G.n0 = G.n1 = n + 1;
    G.lo0 = lo0;
    G.lo1 = lo1;
    G.h0 = (hi0 - lo0) / n;
    G.h1 = (hi1 - lo1) / n;
    G.per0 = G.per1 = false;
    auto idx = [&](Vec2 y) {
        const int i = static_cast<int>(std::lround((y[0] - lo0) / G.h0));
        const int j = static_cast<int>(std::lround((y[1] - lo1) / G.h1));
        return i * G.n1 + j;
    };
    const int a = idx(y0), b = idx(y1);
    if (a == b) return 0.0;
    return grid2d_distances(G, a)[b];
}

std::string encode_distance_matrix(const std::vector<double>& m, std::uint64_t dim) {
    if (m.size() != dim * dim) throw ValidationError("encode_distance_matrix: size mismatch");
    std::string out;
    out.reserve(8 * (m.size() + 1));
    auto put = [&](std::uint64_t v) {
        for (int i = 0; i < 8; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
    };
    put(dim);
    for (double v : m) {
        std::uint64_t bits;
        std::memcpy(&bits, &v, 8);
        put(bits);
    }
    return out;
}

void write_distance_matrix(const std::string& path, const std::vector<double>& m, std::uint64_t dim) {
    const std::string bytes = encode_distance_matrix(m, dim);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ValidationError("write_distance_matrix: cannot open " + path);
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
}

std::vector<double> read_distance_matrix(const std::string& path, std::uint64_t& dim) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("read_distance_matrix: cannot open " + path);
    auto get = [&]() {
        unsigned char b[8];
        in.read(reinterpret_cast<char*>(b), 8);
        if (!in) throw ValidationError("read_distance_matrix: truncated file");
        std::uint64_t v = 0;
        for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(b[i]) << (8 * i);
        return v;
    };
    dim = get();
    std::vector<double> m(dim * dim);
    for (auto& v : m) {
        const std::uint64_t bits = get();
        std::memcpy(&v, &bits, 8);
    }
    return m;
}

} // namespace collapse
