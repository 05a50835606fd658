#pragma once

#include "collapse/geometry.hpp"

#include <Eigen/Dense>
#include <functional>
#include <vector>

namespace collapse {

// Metric tensor in coordinates (t, c1, c2), independent of t.
using BaseMetricFn = std::function<Eigen::Matrix3d(double c1, double c2)>;

struct GraphPoint {
    double t = 0.0;
    double c1 = 0.0;
    double c2 = 0.0;
};

// Product lattice S^1 x [lo, hi]^2 with a stencil of all primitive offsets of
// sup-norm at most 2. Edge lengths are metric lengths of straight chart
// segments by 8-point Gauss-Legendre quadrature. Nodes outside the optional
// base mask are removed.
class LatticeGraph {
public:
    LatticeGraph(BaseMetricFn metric, int nt, int nb, double lo, double hi,
                 std::function<bool(double, double)> mask = {});

    int nt() const { return nt_; }
    int nb() const { return nb_; }
    double h_base() const { return hb_; }
    double h_t() const { return ht_; }
    GraphPoint node(int id) const;
    int node_id(int it, int i1, int i2) const { return (it * nb_ + i1) * nb_ + i2; }
    int size() const { return nt_ * nb_ * nb_; }
    bool active(int id) const { return active_[id % (nb_ * nb_)]; }
    bool active_base(int i1, int i2) const { return active_[i1 * nb_ + i2]; }

    // Metric length of the straight chart segment between two points.
    double segment_length(const GraphPoint& a, const GraphPoint& b) const;

    // Nearby lattice nodes of an arbitrary point with segment lengths.
    struct Attachment {
        std::vector<int> ids;
        std::vector<double> lengths;
    };
    Attachment attach(const GraphPoint& p) const;

    // Single-source distances to all nodes; unreachable nodes get +inf.
    std::vector<double> distances_from(const GraphPoint& src) const;
    // Distances between arbitrary points via attachment to nearby nodes.
    double distance(const GraphPoint& a, const GraphPoint& b) const;
    // Distance from a source field to an arbitrary point.
    double distance_to(const std::vector<double>& field, const GraphPoint& b) const;
    double distance_to(const std::vector<double>& field, const Attachment& b) const;

    // Relative overestimate of straight-line lengths by stencil paths for an
    // isotropic metric in index units: max over directions of sec(angle to
    // the nearest stencil vector) - 1.
    double stencil_bias() const;

    // Number of connected components among active nodes.
    int components() const;

private:
    struct Offset {
        int dt, d1, d2;
    };
    std::vector<int> attach_nodes(const GraphPoint& p) const;

    BaseMetricFn metric_;
    int nt_, nb_;
    double lo_, hi_, hb_, ht_;
    std::vector<char> active_;
    std::vector<Offset> stencil_;
    // Edge length per (base node, stencil index); metric is t-invariant.
    std::vector<double> edge_;
};

} // namespace collapse
