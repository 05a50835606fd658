#include "collapse/lanczos.hpp"

#include "collapse/geometry.hpp"
#include "collapse/parallel.hpp"

#include <Eigen/SparseCholesky>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <string>

namespace collapse {

double norm_inf(const SpMat& A) {
    Eigen::VectorXd rows = Eigen::VectorXd::Zero(A.rows());
    for (int c = 0; c < A.outerSize(); ++c) {
        for (SpMat::InnerIterator it(A, c); it; ++it) rows[it.row()] += std::abs(it.value());
    }
    return rows.size() ? rows.maxCoeff() : 0.0;
}

double gershgorin_lower(const SpMat& A) {
    Eigen::VectorXd diag = Eigen::VectorXd::Zero(A.rows());
    Eigen::VectorXd off = Eigen::VectorXd::Zero(A.rows());
    for (int c = 0; c < A.outerSize(); ++c) {
        for (SpMat::InnerIterator it(A, c); it; ++it) {
            if (it.row() == it.col()) diag[it.row()] += it.value();
            else off[it.row()] += std::abs(it.value());
        }
    }
    return (diag - off).minCoeff();
}

namespace {

void orthogonalize(Eigen::VectorXd& w, const Eigen::MatrixXd& Q, int ncols) {
    if (ncols == 0) return;
    for (int pass = 0; pass < 2; ++pass) {
        const Eigen::VectorXd c = Q.leftCols(ncols).transpose() * w;
        w -= Q.leftCols(ncols) * c;
    }
}

struct Locked {
    Eigen::MatrixXd vecs;
    std::vector<double> vals;
    std::vector<double> res;
    int count = 0;

    explicit Locked(int dim, int cap) : vecs(dim, cap) {}

    void add(Eigen::VectorXd v, double lambda, double r) {
        if (count == vecs.cols()) vecs.conservativeResize(Eigen::NoChange, 2 * vecs.cols() + 1);
        orthogonalize(v, vecs, count);
        const double nv = v.norm();
        if (nv < 1e-8) return;
        vecs.col(count++) = v / nv;
        vals.push_back(lambda);
        res.push_back(r);
    }
};

} // namespace

SpectrumResult lowest_eigs(const SpMat& A, int n_eigs, double tol, const LanczosOptions& opt) {
    const int dim = static_cast<int>(A.rows());
    if (A.rows() != A.cols()) throw ValidationError("lowest_eigs: matrix must be square");
    if (n_eigs < 1 || 10 * n_eigs >= dim) throw ValidationError("lowest_eigs: requires 1 <= n_eigs < dim/10");
    const double normA = std::max(norm_inf(A), 1e-300);
    if (SpMat(A - SpMat(A.transpose())).norm() > 1e-12 * normA * std::sqrt(double(dim)))
        throw ValidationError("lowest_eigs: matrix is not symmetric");
    double sigma = opt.shift;
    if (std::isnan(sigma)) {
        const double g = gershgorin_lower(A);
        sigma = g - 1e-3 * std::max(1.0, std::abs(g));
    }
    SpMat M = A;
    for (int i = 0; i < dim; ++i) M.coeffRef(i, i) -= sigma;
    Eigen::SimplicialLDLT<SpMat> solver;
    solver.compute(M);
    if (solver.info() != Eigen::Success) throw NonConvergence("lowest_eigs: factorization of A - sigma I failed");

    SpectrumResult out;
    std::mt19937_64 rng(opt.seed);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    Locked locked(dim, n_eigs + 8);
    int m = opt.max_basis > 0 ? opt.max_basis : std::max(2 * n_eigs + 40, 60);
    bool done = false;
    for (int run = 0; run < opt.max_runs && !done; ++run) {
        out.lanczos_runs = run + 1;
        const int mm = std::min(m, dim - locked.count - 1);
        if (mm < 2) break;
        std::vector<double> sorted = locked.vals;
        std::sort(sorted.begin(), sorted.end());
        const double prev_nth = static_cast<int>(sorted.size()) >= n_eigs
                                    ? sorted[n_eigs - 1]
                                    : std::numeric_limits<double>::infinity();

        Eigen::MatrixXd V(dim, mm + 1);
        Eigen::VectorXd alpha(mm), beta(mm);
        Eigen::VectorXd v(dim);
        for (int i = 0; i < dim; ++i) v[i] = unif(rng);
        orthogonalize(v, locked.vecs, locked.count);
        V.col(0) = v / v.norm();
        int steps = mm;
        for (int j = 0; j < mm; ++j) {
            Eigen::VectorXd w = solver.solve(V.col(j));
            ++out.matvecs;
            alpha[j] = V.col(j).dot(w);
            orthogonalize(w, V, j + 1);
            orthogonalize(w, locked.vecs, locked.count);
            beta[j] = w.norm();
            if (beta[j] < 1e-13 * std::abs(alpha[j])) {
                steps = j + 1;
                break;
            }
            V.col(j + 1) = w / beta[j];
        }
        Eigen::MatrixXd T = Eigen::MatrixXd::Zero(steps, steps);
        for (int j = 0; j < steps; ++j) {
            T(j, j) = alpha[j];
            if (j + 1 < steps) T(j, j + 1) = T(j + 1, j) = beta[j];
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(T);
        // Largest theta of the inverse corresponds to the lowest lambda.
        std::vector<double> newly;
        const int want = std::min(steps, n_eigs + 6);
        for (int i = steps - 1; i >= steps - want; --i) {
            const double theta = es.eigenvalues()[i];
            if (theta <= 0.0) continue;
            const double lambda = sigma + 1.0 / theta;
            Eigen::VectorXd y = V.leftCols(steps) * es.eigenvectors().col(i);
            y.normalize();
            const double r = (A * y - lambda * y).norm();
            ++out.matvecs;
            if (r <= tol * normA) {
                const int before = locked.count;
                locked.add(y, lambda, r);
                if (locked.count > before) newly.push_back(lambda);
            }
        }
        if (newly.empty()) {
            if (locked.count >= n_eigs && run > 0) done = true;
            else m = std::min(2 * m, dim - 1);
            continue;
        }
        const double lowest_new = *std::min_element(newly.begin(), newly.end());
        if (locked.count >= n_eigs && lowest_new >= prev_nth - tol * normA) done = true;
    }
    if (locked.count < n_eigs) {
        throw NonConvergence("lowest_eigs: only " + std::to_string(locked.count) + " of " +
                             std::to_string(n_eigs) + " pairs converged after " +
                             std::to_string(out.lanczos_runs) + " runs");
    }
    std::vector<int> order(locked.count);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) { return locked.vals[a] < locked.vals[b]; });
    if (opt.keep_vectors) out.eigenvectors.resize(dim, n_eigs);
    for (int i = 0; i < n_eigs; ++i) {
        out.eigenvalues.push_back(locked.vals[order[i]]);
        out.residuals.push_back(locked.res[order[i]]);
        if (opt.keep_vectors) out.eigenvectors.col(i) = locked.vecs.col(order[i]);
    }
    return out;
}

SpectrumResult lowest_eigs_blocks(const SpMat& A, const std::vector<std::pair<int, int>>& ranges,
                                  int n_eigs, double tol, const LanczosOptions& opt) {
    const int dim = static_cast<int>(A.rows());
    if (n_eigs < 1 || 10 * n_eigs >= dim) throw ValidationError("lowest_eigs: requires 1 <= n_eigs < dim/10");
    std::vector<SpectrumResult> parts(ranges.size());
    parallel_for(static_cast<int>(ranges.size()), [&](int b) {
        const int lo = ranges[b].first, len = ranges[b].second - ranges[b].first;
        const SpMat blk = A.block(lo, lo, len, len);
        if (len <= 1500 || 10 * n_eigs >= len) {
            const Eigen::MatrixXd dense = Eigen::MatrixXd(blk);
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(dense);
            const double nb = std::max(norm_inf(blk), 1e-300);
            SpectrumResult r;
            for (int i = 0; i < std::min(n_eigs, len); ++i) {
                const Eigen::VectorXd v = es.eigenvectors().col(i);
                const double res = (blk * v - es.eigenvalues()[i] * v).norm();
                if (res > tol * nb) throw NonConvergence("dense block solve exceeded residual tolerance");
                r.eigenvalues.push_back(es.eigenvalues()[i]);
                r.residuals.push_back(res);
            }
            parts[b] = r;
        } else {
            LanczosOptions o = opt;
            o.keep_vectors = false;
            o.seed = opt.seed + static_cast<std::uint64_t>(b);
            parts[b] = lowest_eigs(blk, n_eigs, tol, o);
        }
    });
    std::vector<std::pair<double, double>> all;
    SpectrumResult out;
    for (const auto& p : parts) {
        for (size_t i = 0; i < p.eigenvalues.size(); ++i) all.emplace_back(p.eigenvalues[i], p.residuals[i]);
        out.lanczos_runs += p.lanczos_runs;
        out.matvecs += p.matvecs;
    }
    std::sort(all.begin(), all.end());
    for (int i = 0; i < n_eigs && i < static_cast<int>(all.size()); ++i) {
        out.eigenvalues.push_back(all[i].first);
        out.residuals.push_back(all[i].second);
    }
    return out;
}

} // namespace collapse
