#pragma once

#include "collapse/geometry.hpp"
#include "collapse/lanczos.hpp"
#include "collapse/ooguri_vafa.hpp"
#include "collapse/semiflat.hpp"

#include <array>
#include <string>
#include <vector>

namespace collapse {

enum class ModelKind { SemiFlatAbelian, SemiFlatGeneral, OoguriVafaWindow };
enum class Boundary { Periodic, Dirichlet };

std::string to_string(ModelKind k);
ModelKind model_kind_from_string(const std::string& s);

struct Ball {
    Vec2 center{0.0, 0.0};
    double radius = 0.0;
};

using Mode = std::array<int, 2>;

// Local model for the mode-reduced operator. Base coordinates are the action
// coordinates x for the abelian model, the chart coordinate y for the general
// semi-flat model and (u1, u2) for the OV window. The base grid is
// cell-centred with n_grid nodes per axis on the square of half side
// half_width around center.
struct LocalModel {
    ModelKind kind = ModelKind::SemiFlatAbelian;
    ModelParams params;
    int n_grid = 64;
    Vec2 center{0.0, 0.0};
    double half_width = 0.5;
    Boundary bc = Boundary::Periodic;
    int mode_radius = -1;      // explicit |l|_inf bound, -1 selects modes by energy
    double energy_cutoff = 0.0; // 0 derives 10x the largest reported level
    int n_report = 8;           // eigenvalues requested downstream
    Vec2 a{0.0, 0.0};           // flat connection offset, action units
    LatticeFamily lattice = lattice_abelian();
    OVParams ov;
    double window_R = 1.0; // OV: window is the preimage of the xi-ball of radius 3 R
    std::vector<Ball> excluded;
    bool enforce_resolution = true;

    void validate() const;
    double grid_step() const;
    // Harmonic well length sqrt(s/k) in action units, converted to base units.
    double well_width() const;
    // Energy above which fiber modes are discarded.
    double mode_energy_cutoff() const;
    // Radius of the OV window in the u-plane.
    double ov_window_radius() const;
    static LocalModel abelian(double s, int k, int n_grid = 64);
};

// Per-node geometric data shared by all modes.
struct BaseNode {
    Vec2 c{0.0, 0.0};       // base coordinate
    Vec2 action{0.0, 0.0};  // k-independent action-type vector before scaling
    Eigen::Matrix2d ginv;   // inverse fiber metric in angle coordinates
    double weight = 1.0;    // measure density
    bool active = true;
};

struct AssembledModel {
    OperatorMatrix op;
    std::vector<Mode> modes;
    std::vector<BaseNode> nodes;
    double kappa = 1.0;
    // Minimum over active nodes and retained modes of the fiber potential.
    double potential_min = 0.0;
};

// Fiber potential |k x + l|^2 in the inverse fiber metric at a node.
double mode_potential(const BaseNode& n, int k, const Mode& l);

AssembledModel assemble_model(const LocalModel& model);
OperatorMatrix assemble_reduced_laplacian(const LocalModel& model);

struct DbarSpectrum {
    SpectrumResult laplacian; // eigenvalues of the reduced Laplacian
    SpectrumResult dbar;      // (lambda - k^2 - 2k) / 2
    int near_zero = 0;        // dbar eigenvalues below k/2
    double first_nonzero = 0.0;
    int dimension = 0;
    int modes = 0;
};

DbarSpectrum dbar_spectrum(const LocalModel& model, int n_eigs = 0, double tol = 1e-10);

// BS points of level dividing k inside the model's base region.
std::vector<Vec2> model_bs_points(const LocalModel& model);

struct LowerBoundReport {
    double R = 0.0;
    double radius_base = 0.0;  // excluded ball radius in base units
    double rayleigh_inf = 0.0; // lowest eigenvalue with the balls removed
    double K = 0.0;            // inf lambda(k, x) / N_x over the region
    double K_exact = 0.0;      // inf of the fiber potential over the region
    double delta = 0.0;
    double landau_bound = 0.0;    // 2 pi (k^2 + K) / (1 + delta)^2
    double rayleigh_bound = 0.0; // (k^2 + K) / (1 + delta)^2
    bool meets_landau_bound = false;
    bool meets_rayleigh_bound = false;
};

// R is measured in the rescaled coordinate xi = 2 pi x / sqrt(s): the balls
// have radius R sqrt(s) / (2 pi) in action units around each BS point.
LowerBoundReport verify_lower_bound(const LocalModel& model, double R, double tol = 1e-10);

} // namespace collapse
