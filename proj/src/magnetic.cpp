#include "collapse/magnetic.hpp"

#include "collapse/holonomy.hpp"
#include "collapse/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

namespace collapse {

std::string to_string(ModelKind k) {
    switch (k) {
    case ModelKind::SemiFlatAbelian: return "semi-flat-abelian";
    case ModelKind::SemiFlatGeneral: return "semi-flat-general";
    case ModelKind::OoguriVafaWindow: return "ooguri-vafa-window";
    }
    return "unknown";
}

ModelKind model_kind_from_string(const std::string& s) {
    if (s == "semi-flat-abelian" || s == "abelian") return ModelKind::SemiFlatAbelian;
    if (s == "semi-flat-general" || s == "general") return ModelKind::SemiFlatGeneral;
    if (s == "ooguri-vafa-window" || s == "ov") return ModelKind::OoguriVafaWindow;
    throw ValidationError("unknown model kind '" + s + "'");
}

LocalModel LocalModel::abelian(double s, int k, int n_grid) {
    LocalModel m;
    m.params.s = s;
    m.params.k = k;
    m.n_grid = n_grid;
    return m;
}

double LocalModel::grid_step() const { return 2.0 * half_width / n_grid; }

double LocalModel::ov_window_radius() const {
    const double t = 9.0 * params.s * window_R * window_R;
    if (t > chi_forward(params.delta0)) throw ValidationError("OV window exceeds the chart radius delta0");
    return chi(t);
}

double LocalModel::well_width() const {
    const double w = std::sqrt(params.s / params.k);
    switch (kind) {
    case ModelKind::SemiFlatAbelian: return w;
    case ModelKind::SemiFlatGeneral: return kTwoPi * w;
    case ModelKind::OoguriVafaWindow: {
        // Near a BS point the well is exp(-k V |u|^2 / 2) with V ~ L / (2 pi s);
        // L is taken at the window edge.
        const double L = std::log(1.0 / ov_window_radius());
        return kTwoPi * std::sqrt(kTwoPi * params.s / (params.k * L));
    }
    }
    return w;
}

double LocalModel::mode_energy_cutoff() const {
    if (energy_cutoff > 0.0) return energy_cutoff;
    const double k = params.k;
    return 10.0 * (k * k + 2.0 * k + 2.0 * k * std::max(1, n_report));
}

void LocalModel::validate() const {
    params.validate();
    if (n_grid < 4) throw ValidationError("LocalModel: n_grid must be >= 4");
    if (!(half_width > 0.0)) throw ValidationError("LocalModel: half_width must be positive");
    if (kind == ModelKind::SemiFlatAbelian && bc == Boundary::Periodic && std::abs(half_width - 0.5) > 1e-14)
        throw ValidationError("LocalModel: periodic abelian model needs the unit cell (half_width 0.5)");
    if (kind != ModelKind::SemiFlatAbelian && bc == Boundary::Periodic)
        throw ValidationError("LocalModel: periodic boundary only for the abelian model");
    if (kind == ModelKind::OoguriVafaWindow) {
        ov.validate();
        if (ov.branch != LogBranch::HalfPiFiveHalf)
            throw ValidationError("LocalModel: the OV window needs the branch cut along the positive u2 axis");
        if (a[0] != 0.0) throw ValidationError("LocalModel: the OV window supports a1 = 0 only");
        if (n_grid % 2 != 0) throw ValidationError("LocalModel: OV window needs an even grid (no node at the singular fiber)");
        if (std::abs(ov.s - params.s) > 1e-15) throw ValidationError("LocalModel: OV s differs from model s");
        ov_window_radius();
    }
    if (kind == ModelKind::SemiFlatGeneral) {
        for (double u : {-half_width, half_width})
            for (double v : {-half_width, half_width})
                if (!(lattice.orientation(cplx(center[0] + u, center[1] + v)) > 0.0))
                    throw ValidationError("LocalModel: lattice degenerates inside the window");
    }
    if (enforce_resolution && grid_step() > well_width() / 8.0)
        throw ValidationError("LocalModel: grid step " + std::to_string(grid_step()) +
                              " does not resolve the harmonic well (needs <= " + std::to_string(well_width() / 8.0) +
                              ")");
}

double mode_potential(const BaseNode& n, int k, const Mode& l) {
    const Eigen::Vector2d X(k * n.action[0] + l[0], k * n.action[1] + l[1]);
    return X.dot(n.ginv * X);
}

namespace {

bool periodic_abelian(const LocalModel& m) {
    return m.kind == ModelKind::SemiFlatAbelian && m.bc == Boundary::Periodic;
}

double base_distance(const LocalModel& m, Vec2 p, Vec2 q) {
    double d0 = p[0] - q[0], d1 = p[1] - q[1];
    if (periodic_abelian(m)) {
        d0 -= std::round(d0);
        d1 -= std::round(d1);
    }
    return std::hypot(d0, d1);
}

std::vector<BaseNode> make_nodes(const LocalModel& m) {
    const int n = m.n_grid;
    const double h = m.grid_step();
    std::vector<BaseNode> nodes(static_cast<std::size_t>(n) * n);
    const double rho = m.kind == ModelKind::OoguriVafaWindow ? m.ov_window_radius() : 0.0;
    OVParams ovp = m.ov;
    parallel_for(n, [&](int i) {
        for (int j = 0; j < n; ++j) {
            BaseNode& b = nodes[static_cast<std::size_t>(i) * n + j];
            b.c = {m.center[0] - m.half_width + (i + 0.5) * h, m.center[1] - m.half_width + (j + 0.5) * h};
            const double s = m.params.s;
            switch (m.kind) {
            case ModelKind::SemiFlatAbelian:
                b.action = {b.c[0] + m.a[0], b.c[1] + m.a[1]};
                b.ginv = (4.0 * kPi * kPi / s) * Eigen::Matrix2d::Identity();
                b.weight = 1.0;
                break;
            case ModelKind::SemiFlatGeneral: {
                const cplx y(b.c[0], b.c[1]);
                const Vec2 x = sf_action_coordinates(y, m.lattice);
                b.action = {x[0] + m.a[0], x[1] + m.a[1]};
                b.ginv = sf_fiber_metric(y, m.lattice, s).inverse();
                b.weight = m.lattice.tau2(y).imag();
                break;
            }
            case ModelKind::OoguriVafaWindow: {
                const cplx y(b.c[0], b.c[1]);
                b.active = std::abs(y) < rho;
                if (!b.active) break;
                const double V = ov_vsf(y, ovp);
                b.action = {(b.c[0] + m.a[0]) / kTwoPi, (holonomy_H(b.c[0], b.c[1], ovp) + m.a[1]) / kTwoPi};
                b.ginv = ov_fiber_metric_theta(y, V, ovp).inverse();
                b.weight = V;
                break;
            }
            }
            for (const Ball& e : m.excluded)
                if (base_distance(m, b.c, e.center) < e.radius) b.active = false;
        }
    });
    return nodes;
}

double kinetic_coefficient(const LocalModel& m) {
    switch (m.kind) {
    case ModelKind::SemiFlatAbelian: return m.params.s / (4.0 * kPi * kPi);
    case ModelKind::SemiFlatGeneral: return m.params.s;
    case ModelKind::OoguriVafaWindow: return 1.0;
    }
    return 1.0;
}

int floor_mod(int a, int k) { return ((a % k) + k) % k; }

} // namespace

AssembledModel assemble_model(const LocalModel& m) {
    m.validate();
    const int k = m.params.k;
    const int n = m.n_grid;
    const double h = m.grid_step();
    AssembledModel out;
    out.nodes = make_nodes(m);
    out.kappa = kinetic_coefficient(m);
    const auto& nodes = out.nodes;

    // Candidate modes: all l with |l|_inf <= bound, where bound covers every
    // well reachable below the energy cutoff.
    const double ecut = m.mode_energy_cutoff();
    double amax = 0.0, gmin = std::numeric_limits<double>::infinity();
    for (const auto& b : nodes) {
        if (!b.active) continue;
        amax = std::max({amax, std::abs(b.action[0]), std::abs(b.action[1])});
        gmin = std::min(gmin, Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d>(b.ginv).eigenvalues()[0]);
    }
    if (!std::isfinite(gmin)) throw ValidationError("LocalModel: no active grid nodes");
    const bool explicit_modes = m.mode_radius >= 0;
    const bool ov = m.kind == ModelKind::OoguriVafaWindow;
    int bound = explicit_modes ? m.mode_radius
                               : static_cast<int>(std::ceil(k * amax + std::sqrt(std::max(0.0, ecut) / gmin))) + 1;
    std::vector<Mode> modes;
    for (int l0 = ov ? 0 : -bound; l0 <= (ov ? 0 : bound); ++l0) {
        for (int l1 = -bound; l1 <= bound; ++l1) {
            const Mode l{l0, l1};
            if (!explicit_modes) {
                double pmin = std::numeric_limits<double>::infinity();
                for (const auto& b : nodes)
                    if (b.active) pmin = std::min(pmin, mode_potential(b, k, l));
                if (static_cast<double>(k) * k + pmin > ecut) continue;
            }
            modes.push_back(l);
        }
    }
    if (modes.empty()) throw ValidationError("LocalModel: no fiber mode below the energy cutoff");

    // Blocks: quasi-periodic gluing couples modes congruent mod k on the
    // periodic abelian cell; otherwise every mode is its own block.
    std::map<Mode, int> mode_index;
    for (int i = 0; i < static_cast<int>(modes.size()); ++i) mode_index[modes[i]] = i;
    std::map<Mode, std::vector<int>> classes;
    for (int i = 0; i < static_cast<int>(modes.size()); ++i) {
        const Mode key = periodic_abelian(m) ? Mode{floor_mod(modes[i][0], k), floor_mod(modes[i][1], k)} : modes[i];
        classes[key].push_back(i);
    }
    std::vector<int> active_ids;
    std::vector<int> local(nodes.size(), -1);
    for (int id = 0; id < static_cast<int>(nodes.size()); ++id)
        if (nodes[id].active) {
            local[id] = static_cast<int>(active_ids.size());
            active_ids.push_back(id);
        }
    const int na = static_cast<int>(active_ids.size());
    // Global index of (mode, active node).
    std::vector<int> offset(modes.size(), -1);
    int next = 0;
    for (const auto& [key, members] : classes) {
        const int start = next;
        for (int mi : members) {
            offset[mi] = next;
            next += na;
        }
        out.op.blocks.emplace_back(start, next);
        std::string label = periodic_abelian(m) ? "class" : "mode";
        label += "(" + std::to_string(key[0]) + "," + std::to_string(key[1]) + ")";
        out.op.block_labels.push_back(label);
    }
    const int N = next;

    out.op.weight.resize(N);
    std::vector<std::vector<Eigen::Triplet<double>>> parts(modes.size());
    std::vector<double> pmins(modes.size(), std::numeric_limits<double>::infinity());
    const double c = out.kappa / (h * h);
    parallel_for(static_cast<int>(modes.size()), [&](int mi) {
        const Mode& l = modes[mi];
        auto& trip = parts[mi];
        trip.reserve(static_cast<std::size_t>(na) * 5);
        for (int a = 0; a < na; ++a) {
            const int id = active_ids[a];
            const int i = id / n, j = id % n;
            const BaseNode& b = nodes[id];
            const double P = mode_potential(b, k, l);
            pmins[mi] = std::min(pmins[mi], P);
            const int row = offset[mi] + a;
            out.op.weight[row] = b.weight;
            trip.emplace_back(row, row, (4.0 * c + b.weight * (static_cast<double>(k) * k + P)) / b.weight);
            const int di[4] = {1, -1, 0, 0}, dj[4] = {0, 0, 1, -1};
            for (int q = 0; q < 4; ++q) {
                int ii = i + di[q], jj = j + dj[q];
                Mode ln = l;
                if (periodic_abelian(m)) {
                    // f_l(x + e_i) = f_{l + k e_i}(x)
                    if (ii == n) { ii = 0; ln[0] += k; }
                    if (ii < 0) { ii = n - 1; ln[0] -= k; }
                    if (jj == n) { jj = 0; ln[1] += k; }
                    if (jj < 0) { jj = n - 1; ln[1] -= k; }
                }
                if (ii < 0 || jj < 0 || ii >= n || jj >= n) continue; // Dirichlet ghost
                const int nid = ii * n + jj;
                if (!nodes[nid].active) continue;
                const auto it = mode_index.find(ln);
                if (it == mode_index.end()) continue; // truncated mode acts as zero
                const int col = offset[it->second] + local[nid];
                trip.emplace_back(row, col, -c / std::sqrt(b.weight * nodes[nid].weight));
            }
        }
    });
    std::vector<Eigen::Triplet<double>> all;
    for (auto& p : parts) all.insert(all.end(), p.begin(), p.end());
    out.op.A.resize(N, N);
    out.op.A.setFromTriplets(all.begin(), all.end());
    out.op.A.makeCompressed();
    out.op.model = to_string(m.kind);
    out.op.s = m.params.s;
    out.op.k = k;
    out.op.nx = n;
    out.op.ny = n;
    out.modes = modes;
    out.potential_min = *std::min_element(pmins.begin(), pmins.end());
    return out;
}

OperatorMatrix assemble_reduced_laplacian(const LocalModel& model) { return assemble_model(model).op; }

DbarSpectrum dbar_spectrum(const LocalModel& model, int n_eigs, double tol) {
    const int want = n_eigs > 0 ? n_eigs : model.n_report;
    LocalModel m = model;
    m.n_report = want;
    const AssembledModel am = assemble_model(m);
    const int k = m.params.k;
    DbarSpectrum out;
    out.dimension = am.op.dimension();
    out.modes = static_cast<int>(am.modes.size());
    LanczosOptions opt;
    opt.shift = static_cast<double>(k) * k - 1.0; // the operator is bounded below by k^2
    out.laplacian = lowest_eigs_blocks(am.op.A, am.op.blocks, want, tol, opt);
    out.dbar = out.laplacian;
    const double shift = static_cast<double>(k) * k + 2.0 * k;
    for (double& v : out.dbar.eigenvalues) v = 0.5 * (v - shift);
    for (double& r : out.dbar.residuals) r *= 0.5;
    out.dbar.threshold = 0.5 * k;
    out.near_zero = static_cast<int>(std::count_if(out.dbar.eigenvalues.begin(), out.dbar.eigenvalues.end(),
                                                   [&](double v) { return v < 0.5 * k; }));
    out.dbar.count_below = out.near_zero;
    out.laplacian.threshold = 2.0 * out.dbar.threshold + shift;
    out.laplacian.count_below = out.near_zero;
    out.first_nonzero = out.near_zero < static_cast<int>(out.dbar.eigenvalues.size())
                            ? out.dbar.eigenvalues[out.near_zero]
                            : std::numeric_limits<double>::quiet_NaN();
    return out;
}

std::vector<Vec2> model_bs_points(const LocalModel& m) {
    const int k = m.params.k;
    std::vector<Vec2> pts;
    const double lo0 = m.center[0] - m.half_width, hi0 = m.center[0] + m.half_width;
    const double lo1 = m.center[1] - m.half_width, hi1 = m.center[1] + m.half_width;
    switch (m.kind) {
    case ModelKind::SemiFlatAbelian: {
        for (const BSPoint& b : bs_points_semiflat(Window::half_open(lo0, hi0, lo1, hi1), k, m.a))
            pts.push_back({b.base.real(), b.base.imag()});
        break;
    }
    case ModelKind::SemiFlatGeneral: {
        // Solve x(y) + a in Z^2 / k by Newton from a grid of starts.
        const int ns = 24;
        for (int i = 0; i < ns; ++i)
            for (int j = 0; j < ns; ++j) {
                cplx y(lo0 + (i + 0.5) * (hi0 - lo0) / ns, lo1 + (j + 0.5) * (hi1 - lo1) / ns);
                Vec2 x = sf_action_coordinates(y, m.lattice);
                const double t0 = std::round(k * (x[0] + m.a[0])) / k - m.a[0];
                const double t1 = std::round(k * (x[1] + m.a[1])) / k - m.a[1];
                bool ok = false;
                for (int it = 0; it < 50; ++it) {
                    x = sf_action_coordinates(y, m.lattice);
                    const double f0 = x[0] - t0, f1 = x[1] - t1;
                    if (std::hypot(f0, f1) < 1e-13) { ok = true; break; }
                    // dx/dy1 = (1, Re tau2) / 2pi, dx/dy2 = (0, -Im tau2) / 2pi
                    const cplx t2 = m.lattice.tau2(y);
                    Eigen::Matrix2d J;
                    J << 1.0, 0.0, t2.real(), -t2.imag();
                    J /= kTwoPi;
                    const Eigen::Vector2d d = J.inverse() * Eigen::Vector2d(f0, f1);
                    y -= cplx(d[0], d[1]);
                }
                if (!ok || y.real() < lo0 || y.real() >= hi0 || y.imag() < lo1 || y.imag() >= hi1) continue;
                bool dup = false;
                for (const auto& p : pts)
                    if (std::hypot(p[0] - y.real(), p[1] - y.imag()) < 1e-8) dup = true;
                if (!dup) pts.push_back({y.real(), y.imag()});
            }
        break;
    }
    case ModelKind::OoguriVafaWindow: {
        const double rho = m.ov_window_radius();
        for (const BSPoint& b : bs_points_ov(k, m.a, m.ov))
            if (std::abs(b.base) < rho) pts.push_back({b.base.real(), b.base.imag()});
        break;
    }
    }
    return pts;
}

LowerBoundReport verify_lower_bound(const LocalModel& model, double R, double tol) {
    if (!(R > 0.0)) throw ValidationError("verify_lower_bound: R must be positive");
    LocalModel m = model;
    const double s = m.params.s;
    const int k = m.params.k;
    LowerBoundReport rep;
    rep.R = R;
    const double r_action = R * std::sqrt(s) / kTwoPi;
    rep.radius_base = m.kind == ModelKind::SemiFlatAbelian ? r_action : kTwoPi * r_action;
    for (const Vec2& p : model_bs_points(m)) m.excluded.push_back({p, rep.radius_base});
    // The reported level sits near k^2 (1 + R^2) in the rescaled picture.
    if (m.energy_cutoff <= 0.0) m.energy_cutoff = 10.0 * (static_cast<double>(k) * k * (1.0 + R * R) + 2.0 * k);
    if (periodic_abelian(m) && 2.0 * rep.radius_base >= 1.0 / k)
        throw ValidationError("verify_lower_bound: balls overlap their neighbours");
    const AssembledModel am = assemble_model(m);
    // The operator is bounded below by k^2 + inf P, so shift just under it.
    LanczosOptions opt;
    opt.shift = static_cast<double>(k) * k + am.potential_min - 0.5;
    const SpectrumResult sr = lowest_eigs_blocks(am.op.A, am.op.blocks, 1, tol, opt);
    rep.rayleigh_inf = sr.eigenvalues.front();
    rep.K_exact = am.potential_min;
    // K from inf_l |k x + l|^2 divided by the largest fiber-metric eigenvalue.
    double K = std::numeric_limits<double>::infinity();
    for (const BaseNode& b : am.nodes) {
        if (!b.active) continue;
        double lam = std::numeric_limits<double>::infinity();
        for (const Mode& l : am.modes) {
            const double X0 = k * b.action[0] + l[0], X1 = k * b.action[1] + l[1];
            lam = std::min(lam, X0 * X0 + X1 * X1);
        }
        const double N = 1.0 / Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d>(b.ginv).eigenvalues()[0];
        K = std::min(K, lam / N);
    }
    rep.K = K;
    if (m.kind == ModelKind::OoguriVafaWindow) {
        const OVCompareReport c = ov_compare(cplx(m.ov_window_radius(), 0.0), m.ov);
        rep.delta = std::max(c.ratio_max - 1.0, 1.0 - c.ratio_min);
    }
    const double denom = (1.0 + rep.delta) * (1.0 + rep.delta);
    rep.rayleigh_bound = (static_cast<double>(k) * k + K) / denom;
    rep.landau_bound = kTwoPi * rep.rayleigh_bound;
    const double slack = 1e-8 * std::max(1.0, rep.rayleigh_inf);
    rep.meets_rayleigh_bound = rep.rayleigh_inf >= rep.rayleigh_bound - slack;
    rep.meets_landau_bound = rep.rayleigh_inf >= rep.landau_bound - slack;
    return rep;
}

} // namespace collapse
