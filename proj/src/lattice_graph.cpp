#include "collapse/lattice_graph.hpp"

#include "collapse/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <queue>

namespace collapse {

namespace {
int gcd3(int a, int b, int c) { return std::gcd(std::gcd(std::abs(a), std::abs(b)), std::abs(c)); }
} // namespace

LatticeGraph::LatticeGraph(BaseMetricFn metric, int nt, int nb, double lo, double hi,
                           std::function<bool(double, double)> mask)
    : metric_(std::move(metric)), nt_(nt), nb_(nb), lo_(lo), hi_(hi) {
    if (nt < 3 || nb < 2 || !(hi > lo)) throw ValidationError("LatticeGraph: invalid grid");
    hb_ = (hi - lo) / (nb - 1);
    ht_ = kTwoPi / nt;
    active_.assign(static_cast<std::size_t>(nb) * nb, 1);
    if (mask) {
        for (int i = 0; i < nb; ++i)
            for (int j = 0; j < nb; ++j) active_[i * nb + j] = mask(lo + i * hb_, lo + j * hb_) ? 1 : 0;
    }
    for (int a = -2; a <= 2; ++a)
        for (int b = -2; b <= 2; ++b)
            for (int c = -2; c <= 2; ++c)
                if ((a || b || c) && gcd3(a, b, c) == 1) stencil_.push_back({a, b, c});
    const int ns = static_cast<int>(stencil_.size());
    edge_.assign(static_cast<std::size_t>(nb) * nb * ns, std::numeric_limits<double>::infinity());
    for (int i = 0; i < nb; ++i) {
        for (int j = 0; j < nb; ++j) {
            if (!active_[i * nb + j]) continue;
            for (int q = 0; q < ns; ++q) {
                const auto& o = stencil_[q];
                const int i2 = i + o.d1, j2 = j + o.d2;
                if (i2 < 0 || j2 < 0 || i2 >= nb || j2 >= nb || !active_[i2 * nb + j2]) continue;
                const GraphPoint a{0.0, lo + i * hb_, lo + j * hb_};
                const GraphPoint b{o.dt * ht_, lo + i2 * hb_, lo + j2 * hb_};
                edge_[(static_cast<std::size_t>(i) * nb + j) * ns + q] = segment_length(a, b);
            }
        }
    }
}

GraphPoint LatticeGraph::node(int id) const {
    const int i2 = id % nb_;
    const int i1 = (id / nb_) % nb_;
    const int it = id / (nb_ * nb_);
    return {it * ht_, lo_ + i1 * hb_, lo_ + i2 * hb_};
}

double LatticeGraph::segment_length(const GraphPoint& a, const GraphPoint& b) const {
    const GaussRule& g = gauss_legendre(8);
    const Eigen::Vector3d d(b.t - a.t, b.c1 - a.c1, b.c2 - a.c2);
    double len = 0.0;
    for (std::size_t q = 0; q < g.x.size(); ++q) {
        const double tau = 0.5 * (g.x[q] + 1.0);
        const Eigen::Matrix3d G = metric_(a.c1 + tau * d[1], a.c2 + tau * d[2]);
        len += 0.5 * g.w[q] * std::sqrt(std::max(0.0, d.dot(G * d)));
    }
    return len;
}

std::vector<int> LatticeGraph::attach_nodes(const GraphPoint& p) const {
    const double t = wrap_angle(p.t);
    const int it0 = static_cast<int>(std::floor(t / ht_));
    const int i10 = static_cast<int>(std::floor((p.c1 - lo_) / hb_));
    const int i20 = static_cast<int>(std::floor((p.c2 - lo_) / hb_));
    std::vector<int> ids;
    for (int a = -1; a <= 2; ++a)
        for (int b = -1; b <= 2; ++b)
            for (int c = -1; c <= 2; ++c) {
                const int it = ((it0 + a) % nt_ + nt_) % nt_;
                const int i1 = i10 + b, i2 = i20 + c;
                if (i1 < 0 || i2 < 0 || i1 >= nb_ || i2 >= nb_ || !active_base(i1, i2)) continue;
                ids.push_back(node_id(it, i1, i2));
            }
    if (ids.empty()) throw DomainError("LatticeGraph: point outside the sampled region");
    return ids;
}

namespace {
// Lift node time so that the straight segment from p takes the short way round.
GraphPoint lift_near(GraphPoint n, double t_ref) {
    double dt = n.t - t_ref;
    dt -= kTwoPi * std::round(dt / kTwoPi);
    n.t = t_ref + dt;
    return n;
}
} // namespace

std::vector<double> LatticeGraph::distances_from(const GraphPoint& src) const {
    const int N = size();
    const int ns = static_cast<int>(stencil_.size());
    std::vector<double> dist(N, std::numeric_limits<double>::infinity());
    using Item = std::pair<double, int>;
    std::priority_queue<Item, std::vector<Item>, std::greater<Item>> pq;
    const GraphPoint s{wrap_angle(src.t), src.c1, src.c2};
    for (int id : attach_nodes(s)) {
        const double d = segment_length(s, lift_near(node(id), s.t));
        if (d < dist[id]) {
            dist[id] = d;
            pq.push({d, id});
        }
    }
    while (!pq.empty()) {
        const auto [d, id] = pq.top();
        pq.pop();
        if (d > dist[id]) continue;
        const int i2 = id % nb_, i1 = (id / nb_) % nb_, it = id / (nb_ * nb_);
        const double* e = &edge_[(static_cast<std::size_t>(i1) * nb_ + i2) * ns];
        for (int q = 0; q < ns; ++q) {
            if (!std::isfinite(e[q])) continue;
            const auto& o = stencil_[q];
            const int jt = ((it + o.dt) % nt_ + nt_) % nt_;
            const int nid = node_id(jt, i1 + o.d1, i2 + o.d2);
            const double nd = d + e[q];
            if (nd < dist[nid]) {
                dist[nid] = nd;
                pq.push({nd, nid});
            }
        }
    }
    return dist;
}

LatticeGraph::Attachment LatticeGraph::attach(const GraphPoint& b) const {
    const GraphPoint p{wrap_angle(b.t), b.c1, b.c2};
    Attachment a;
    a.ids = attach_nodes(p);
    for (int id : a.ids) a.lengths.push_back(segment_length(lift_near(node(id), p.t), p));
    return a;
}

double LatticeGraph::distance_to(const std::vector<double>& field, const Attachment& a) const {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < a.ids.size(); ++i)
        if (std::isfinite(field[a.ids[i]])) best = std::min(best, field[a.ids[i]] + a.lengths[i]);
    return best;
}

double LatticeGraph::distance_to(const std::vector<double>& field, const GraphPoint& b) const {
    return distance_to(field, attach(b));
}

double LatticeGraph::distance(const GraphPoint& a, const GraphPoint& b) const {
    const GraphPoint pa{wrap_angle(a.t), a.c1, a.c2};
    const GraphPoint pb{wrap_angle(b.t), b.c1, b.c2};
    const double direct = segment_length(pa, lift_near(pb, pa.t));
    return std::min(direct, distance_to(distances_from(pa), pb));
}

double LatticeGraph::stencil_bias() const {
    const int n = 4000;
    const double golden = kPi * (3.0 - std::sqrt(5.0));
    double worst = 1.0;
    for (int i = 0; i < n; ++i) {
        const double z = 1.0 - 2.0 * (i + 0.5) / n;
        const double r = std::sqrt(1.0 - z * z);
        const Eigen::Vector3d u(r * std::cos(golden * i), r * std::sin(golden * i), z);
        double best = -1.0;
        for (const auto& o : stencil_) {
            const Eigen::Vector3d v(o.dt, o.d1, o.d2);
            best = std::max(best, u.dot(v) / v.norm());
        }
        worst = std::min(worst, best);
    }
    return 1.0 / worst - 1.0;
}

int LatticeGraph::components() const {
    std::vector<int> parent(size());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    const int ns = static_cast<int>(stencil_.size());
    for (int id = 0; id < size(); ++id) {
        if (!active(id)) continue;
        const int i2 = id % nb_, i1 = (id / nb_) % nb_, it = id / (nb_ * nb_);
        for (int q = 0; q < ns; ++q) {
            if (!std::isfinite(edge_[(static_cast<std::size_t>(i1) * nb_ + i2) * ns + q])) continue;
            const auto& o = stencil_[q];
            const int nid = node_id(((it + o.dt) % nt_ + nt_) % nt_, i1 + o.d1, i2 + o.d2);
            parent[find(id)] = find(nid);
        }
    }
    int count = 0;
    for (int id = 0; id < size(); ++id)
        if (active(id) && find(id) == id) ++count;
    return count;
}

} // namespace collapse
