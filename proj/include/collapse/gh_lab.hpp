#pragma once

#include "collapse/geometry.hpp"
#include "collapse/lattice_graph.hpp"
#include "collapse/ooguri_vafa.hpp"

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace collapse {

// Point of the circle bundle over the OV chart: circle angle t over y.
struct BundlePoint {
    double t = 0.0;
    cplx y{0.0, 0.0};
};

// (t, zeta_s(y)); commutes with rotation of t.
LimitPoint approx_map(const BundlePoint& u, double s);

// Jacobian dy/dxi of the inverse rescaling at xi != 0.
Eigen::Matrix2d zeta_inverse_jacobian(Vec2 xi, double s);

// Reduced metric of the OV model in chart coordinates (t, xi):
// dt^2 / (1 + |gamma_f|^2) + Vsf |dy|^2 pulled back by y = zeta_s^{-1}(xi).
Eigen::Matrix3d ov_reduced_metric(Vec2 xi, const OVParams& p);

// Extremal eigenvalues of the base block of ov_reduced_metric relative to
// the Euclidean metric in xi; their spread is the sandwich constant delta.
struct SandwichSample {
    double lo = 0.0;
    double hi = 0.0;
    double delta() const;
};
SandwichSample base_sandwich(Vec2 xi, const OVParams& p);

// Source and limit graphs on a shared lattice over S^1 x {|xi| < radius}.
struct CloudGraph {
    std::unique_ptr<LatticeGraph> source;
    std::unique_ptr<LatticeGraph> limit;
    double radius = 0.0;
    int m = 1;
};

struct GraphResolution {
    int nt = 16;
    int nb = 25;
};

CloudGraph build_cloud_graph(const OVParams& p, double radius, int m = 1, GraphResolution res = {});
// Same lattice with the limit metric on both sides.
CloudGraph build_flat_cloud_graph(double radius, int m = 1, GraphResolution res = {});

struct DistortionReport {
    double s = 0.0;
    double R = 0.0;
    int samples = 0;
    int pairs = 0;
    double sup = 0.0;
    double median = 0.0;
    double q10 = 0.0;
    double q25 = 0.0;
    double q75 = 0.0;
    double q90 = 0.0;
    double median_relative = 0.0;
    double surjectivity_gap = 0.0;
    double graph_bias = 0.0;
};

// Uniform reals in [0, 1) from a 64-bit seed, identical on every platform.
class SplitMix {
public:
    explicit SplitMix(std::uint64_t seed) : state_(seed) {}
    std::uint64_t next();
    double uniform();

private:
    std::uint64_t state_;
};

// Samples n points of S^1 x B(R) (xi coordinates), compares distances of the
// source graph with the limit graph on the domain of radius domain_factor R.
DistortionReport sample_and_distort(const CloudGraph& g, double s, double R, int n, std::uint64_t seed,
                                    std::vector<double>* source_matrix = nullptr);

// Radial test functions on the base.
using RadialFn = std::function<double(double)>;
// 1 on |xi| <= 0.9 R, smooth decay to 0 at R.
RadialFn cutoff_constant(double R);
// exp(1 - 1 / (1 - (r/R)^2)) inside R.
RadialFn radial_bump(double R);

enum class MeasureModel { FlatAbelian, OoguriVafa };

struct MeasureReport {
    double source = 0.0;  // K int f o phi dnu with K = 1/s
    double limit = 0.0;   // int f dt dnu_0
    double abs_error = 0.0;
    double rel_error = 0.0;
    double bound = 0.0;   // 2 pi delta sup|f| nu_0(B(R))
    double delta = 0.0;
};

MeasureReport measure_check(MeasureModel model, const OVParams& p, double R, const RadialFn& f, int n = 400);

// Diameter of the torus fiber over y in the OV metric, by Dijkstra on an
// n x n lattice of the fiber coordinates.
double fiber_diameter(cplx y, const OVParams& p, int n = 48);

// Graph distance between two points of the semi-flat base in the chart y.
double bs_separation(Vec2 y0, Vec2 y1, double s, double beta = 0.0, int n = 96);

std::string encode_distance_matrix(const std::vector<double>& m, std::uint64_t dim);
// 8-byte little-endian dimension followed by row-major little-endian doubles.
void write_distance_matrix(const std::string& path, const std::vector<double>& m, std::uint64_t dim);
std::vector<double> read_distance_matrix(const std::string& path, std::uint64_t& dim);

} // namespace collapse
