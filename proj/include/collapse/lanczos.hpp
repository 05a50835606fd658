#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <cstdint>
#include <limits>
#include <string>
#include <utility>
#include <vector>

namespace collapse {

using SpMat = Eigen::SparseMatrix<double>;

// Symmetric discretization of a reduced Laplacian. `A` is the symmetrized
// matrix W^{-1/2} K W^{-1/2}; `weight` holds the diagonal measure W used for
// inner products. Blocks are contiguous index ranges with no coupling between
// them.
struct OperatorMatrix {
    SpMat A;
    Eigen::VectorXd weight;
    std::vector<std::pair<int, int>> blocks;
    std::vector<std::string> block_labels;
    std::string model;
    double s = 0.0;
    int k = 0;
    int nx = 0;
    int ny = 0;

    int dimension() const { return static_cast<int>(A.rows()); }
};

struct SpectrumResult {
    std::vector<double> eigenvalues; // ascending, with multiplicity
    std::vector<double> residuals;   // ||A v - lambda v|| per pair
    Eigen::MatrixXd eigenvectors;    // columns, filled when requested
    double threshold = std::numeric_limits<double>::quiet_NaN();
    int count_below = -1;            // eigenvalues below threshold
    int lanczos_runs = 0;
    int matvecs = 0;
};

struct LanczosOptions {
    double shift = std::numeric_limits<double>::quiet_NaN(); // NaN: Gershgorin lower bound
    int max_basis = 0;          // 0: chosen from n_eigs
    int max_runs = 24;
    std::uint64_t seed = 0x5eed;
    bool keep_vectors = false;
};

// Largest absolute row sum, an upper bound for the spectral norm.
double norm_inf(const SpMat& A);
double gershgorin_lower(const SpMat& A);

// Lowest n eigenpairs of a symmetric sparse matrix. Shift-invert Lanczos with
// full reorthogonalization and locking of converged pairs, so repeated
// eigenvalues are found with their multiplicity. Every returned pair satisfies
// ||A v - lambda v|| <= tol ||A||.
SpectrumResult lowest_eigs(const SpMat& A, int n_eigs, double tol = 1e-10,
                           const LanczosOptions& opt = {});

// Same, for a block-diagonal matrix given by contiguous index ranges: each
// block is solved separately and the results merged.
SpectrumResult lowest_eigs_blocks(const SpMat& A, const std::vector<std::pair<int, int>>& ranges,
                                  int n_eigs, double tol = 1e-10, const LanczosOptions& opt = {});

} // namespace collapse
