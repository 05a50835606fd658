#include "collapse/experiment.hpp"

#include "collapse/gh_lab.hpp"
#include "collapse/holonomy.hpp"
#include "collapse/limit_spectra.hpp"
#include "collapse/quadrature.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace collapse {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double parse_double(const std::string& key, const std::string& v) {
    std::size_t pos = 0;
    double d = 0.0;
    try {
        d = std::stod(v, &pos);
    } catch (const std::exception&) {
        throw ValidationError("config: '" + key + "' is not a number: '" + v + "'");
    }
    if (pos != v.size() || !std::isfinite(d)) throw ValidationError("config: '" + key + "' is not a number: '" + v + "'");
    return d;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep)) out.push_back(trim(item));
    return out;
}

} // namespace

std::uint64_t fnv1a64(const std::string& data) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : data) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

ConfigFile ConfigFile::parse(const std::string& text) {
    ConfigFile cfg;
    std::string section = "main";
    std::stringstream ss(text);
    std::string line;
    int lineno = 0;
    while (std::getline(ss, line)) {
        ++lineno;
        const auto cpos = line.find_first_of("#;");
        if (cpos != std::string::npos) line = line.substr(0, cpos);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']' || line.size() < 3)
                throw ValidationError("config line " + std::to_string(lineno) + ": malformed section header");
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos || eq == 0)
            throw ValidationError("config line " + std::to_string(lineno) + ": expected key = value");
        const std::string key = section + "." + trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (value.empty()) throw ValidationError("config line " + std::to_string(lineno) + ": empty value");
        if (cfg.values_.count(key)) throw ValidationError("config: duplicate key '" + key + "'");
        cfg.values_[key] = value;
    }
    return cfg;
}

ConfigFile ConfigFile::load(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("config: cannot read '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse(ss.str());
}

std::string ConfigFile::get(const std::string& key, const std::string& fallback) const {
    const auto it = values_.find(key);
    return it == values_.end() ? fallback : it->second;
}

double ConfigFile::get_double(const std::string& key, double fallback) const {
    const auto it = values_.find(key);
    return it == values_.end() ? fallback : parse_double(key, it->second);
}

long ConfigFile::get_int(const std::string& key, long fallback) const {
    const auto it = values_.find(key);
    if (it == values_.end()) return fallback;
    const double d = parse_double(key, it->second);
    if (d != std::floor(d) || std::abs(d) > 9.0e15) throw ValidationError("config: '" + key + "' must be an integer");
    return static_cast<long>(d);
}

std::vector<double> ConfigFile::get_list(const std::string& key, const std::vector<double>& fallback) const {
    const auto it = values_.find(key);
    if (it == values_.end()) return fallback;
    std::vector<double> out;
    for (const auto& item : split(it->second, ',')) out.push_back(parse_double(key, item));
    return out;
}

std::string ConfigFile::canonical() const {
    std::string out;
    for (const auto& [k, v] : values_) out += k + "=" + v + "\n";
    return out;
}

std::uint64_t ConfigFile::hash() const { return fnv1a64(canonical()); }

std::string ConfigFile::hash_hex() const {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(hash()));
    return buf;
}

namespace {

void require_monotone(const std::string& name, const std::vector<double>& v) {
    if (v.empty()) throw ValidationError("config: sweep list '" + name + "' is empty");
    if (v.size() < 2) return;
    const bool up = v[1] > v[0];
    for (std::size_t i = 1; i < v.size(); ++i)
        if (up ? !(v[i] > v[i - 1]) : !(v[i] < v[i - 1]))
            throw ValidationError("config: sweep list '" + name + "' is not strictly monotone");
}

Vec2 get_pair(const ConfigFile& c, const std::string& key, Vec2 fallback) {
    const auto v = c.get_list(key, {fallback[0], fallback[1]});
    if (v.size() != 2) throw ValidationError("config: '" + key + "' needs two values");
    return {v[0], v[1]};
}

} // namespace

ExperimentConfig ExperimentConfig::from(const ConfigFile& c) {
    ExperimentConfig e;
    e.kind = model_kind_from_string(c.get("model.kind", "abelian"));
    e.params.s = c.get_double("model.s", e.params.s);
    e.params.k = static_cast<int>(c.get_int("model.k", e.params.k));
    e.params.m = static_cast<int>(c.get_int("model.m", e.params.m));
    e.params.delta0 = c.get_double("model.delta0", e.params.delta0);
    e.params.trunc_n = static_cast<int>(c.get_int("model.trunc_n", e.params.trunc_n));
    e.params.tol = c.get_double("model.tol", e.params.tol);
    e.beta = c.get_double("model.beta", e.beta);
    e.n_grid = static_cast<int>(c.get_int("model.n_grid", e.n_grid));
    e.half_width = c.get_double("model.half_width", e.half_width);
    e.center = get_pair(c, "model.center", e.center);
    const std::string bc = c.get("model.bc", e.kind == ModelKind::SemiFlatAbelian ? "periodic" : "dirichlet");
    if (bc == "periodic") e.bc = Boundary::Periodic;
    else if (bc == "dirichlet") e.bc = Boundary::Dirichlet;
    else throw ValidationError("config: model.bc must be periodic or dirichlet");
    e.mode_radius = static_cast<int>(c.get_int("model.mode_radius", e.mode_radius));
    e.n_eigs = static_cast<int>(c.get_int("model.n_eigs", e.n_eigs));
    e.a = get_pair(c, "model.a", e.a);
    e.window_R = c.get_double("model.window_R", e.window_R);
    e.hhat = c.get_double("model.hhat", e.hhat);

    e.sweep_s = c.get_list("sweep.s", {e.params.s});
    for (double k : c.get_list("sweep.k", {static_cast<double>(e.params.k)})) {
        if (k != std::floor(k)) throw ValidationError("config: sweep.k entries must be integers");
        e.sweep_k.push_back(static_cast<int>(k));
    }
    e.sweep_R = c.get_list("sweep.R", {4.0, 6.0, 8.0});

    e.potential_y = c.get_list("potential.y", {0.1});
    e.potential_u3 = static_cast<int>(c.get_int("potential.u3_samples", e.potential_u3));

    e.gh_samples = static_cast<int>(c.get_int("gh.samples", e.gh_samples));
    e.gh_nt = static_cast<int>(c.get_int("gh.nt", e.gh_nt));
    e.gh_nb = static_cast<int>(c.get_int("gh.nb", e.gh_nb));
    e.gh_y_fiber = c.get_double("gh.fiber_y", e.gh_y_fiber);

    const long seed = c.get_int("output.seed", 1);
    if (seed < 0) throw ValidationError("config: output.seed must be non-negative");
    e.seed = static_cast<std::uint64_t>(seed);
    e.emit = split(c.get("output.emit", "csv,json"), ',');
    e.hash = c.hash_hex();
    e.validate();
    return e;
}

void ExperimentConfig::validate() const {
    params.validate();
    require_monotone("sweep.s", sweep_s);
    std::vector<double> ks(sweep_k.begin(), sweep_k.end());
    require_monotone("sweep.k", ks);
    require_monotone("sweep.R", sweep_R);
    for (double s : sweep_s)
        if (!(s > 0.0 && s <= 1.0)) throw ValidationError("config: sweep.s entries must lie in (0, 1]");
    for (int k : sweep_k)
        if (k < 1) throw ValidationError("config: sweep.k entries must be >= 1");
    for (double R : sweep_R)
        if (!(R > 0.0)) throw ValidationError("config: sweep.R entries must be positive");
    if (n_eigs < 1) throw ValidationError("config: model.n_eigs must be >= 1");
    if (gh_samples < 2) throw ValidationError("config: gh.samples must be >= 2");
    for (const auto& f : emit)
        if (f != "csv" && f != "json" && f != "bin") throw ValidationError("config: unknown emit format '" + f + "'");
    for (double s : sweep_s)
        for (int k : sweep_k) model(s, k).validate();
}

LocalModel ExperimentConfig::model(double s, int k) const {
    LocalModel m;
    m.kind = kind;
    m.params = params;
    m.params.s = s;
    m.params.k = k;
    m.n_grid = n_grid;
    m.center = center;
    m.half_width = half_width;
    m.bc = bc;
    m.mode_radius = mode_radius;
    m.n_report = n_eigs;
    m.a = a;
    m.window_R = window_R;
    if (kind == ModelKind::SemiFlatGeneral) m.lattice = lattice_exponential(beta);
    if (kind == ModelKind::OoguriVafaWindow) m.ov = ov(s);
    return m;
}

OVParams ExperimentConfig::ov(double s) const {
    OVParams p;
    p.s = s;
    p.delta0 = params.delta0;
    p.trunc_n = params.trunc_n;
    p.h = hhat == 0.0 ? HarmonicShift::zero() : HarmonicShift::constant(hhat);
    p.branch = kind == ModelKind::OoguriVafaWindow ? LogBranch::HalfPiFiveHalf : LogBranch::ZeroTwoPi;
    return p;
}

const std::vector<std::string>& subcommands() {
    static const std::vector<std::string> v{"potential", "bs", "spectrum", "lower-bound", "gh", "sweep", "oracle"};
    return v;
}

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void CsvTable::row(const std::vector<std::string>& cells) {
    if (cells.size() != columns_.size()) throw ValidationError("CsvTable: row width mismatch");
    rows_.push_back(cells);
}

std::string CsvTable::str() const {
    std::string out;
    for (const auto& c : comments_) out += "# " + c + "\n";
    for (std::size_t i = 0; i < columns_.size(); ++i) out += (i ? "," : "") + columns_[i];
    out += "\n";
    for (const auto& r : rows_) {
        for (std::size_t i = 0; i < r.size(); ++i) out += (i ? "," : "") + r[i];
        out += "\n";
    }
    return out;
}

namespace {

using json = nlohmann::json;

std::string header_line(const std::string& sub, const ExperimentConfig& cfg) {
    return "config_hash=" + cfg.hash + " subcommand=" + sub;
}

bool wants(const ExperimentConfig& cfg, const std::string& f) {
    return std::find(cfg.emit.begin(), cfg.emit.end(), f) != cfg.emit.end();
}

std::string json_text(const std::string& sub, const ExperimentConfig& cfg, json body) {
    body["config_hash"] = cfg.hash;
    body["subcommand"] = sub;
    return body.dump(2) + "\n";
}

void add(std::vector<Artifact>& out, const ExperimentConfig& cfg, const std::string& sub, const CsvTable& csv,
         const json& body) {
    const std::string base = sub + "-" + cfg.hash;
    if (wants(cfg, "csv")) out.push_back({base + ".csv", csv.str(), false});
    if (wants(cfg, "json")) out.push_back({base + ".json", json_text(sub, cfg, body), false});
}

std::vector<Artifact> run_potential(const ExperimentConfig& cfg) {
    CsvTable t({"s", "y_abs", "u3", "V", "V_fourier", "Vsf"});
    t.comment(header_line("potential", cfg));
    json rows = json::array();
    for (double s : cfg.sweep_s) {
        const OVParams p = cfg.ov(s);
        for (double y : cfg.potential_y) {
            if (!(y > 0.0 && y < p.delta0)) throw ValidationError("potential.y entries must lie in (0, delta0)");
            const double vsf = ov_vsf(cplx(y, 0.0), p);
            for (int j = 0; j < cfg.potential_u3; ++j) {
                const double u3 = s * j / cfg.potential_u3;
                t.row({fmt17(s), fmt17(y), fmt17(u3), fmt17(ov_potential({y, 0.0, u3}, p)),
                       fmt17(ov_potential_fourier({y, 0.0, u3}, p)), fmt17(vsf)});
            }
            const double avg = integrate([&](double u3) { return ov_potential({y, 0.0, u3}, p); }, 0.0, s, 8, 200) / s;
            const OVCompareReport c = ov_compare(cplx(y, 0.0), p);
            rows.push_back({{"s", s},
                            {"y_abs", y},
                            {"fiber_average_minus_vsf", avg - vsf},
                            {"closeness_statistic", c.exp_gap_stat},
                            {"ratio_min", c.ratio_min},
                            {"ratio_max", c.ratio_max}});
        }
    }
    std::vector<Artifact> out;
    add(out, cfg, "potential", t, {{"summary", rows}});
    return out;
}

std::vector<Artifact> run_bs(const ExperimentConfig& cfg) {
    CsvTable t({"k", "index", "re", "im", "level", "strict", "near_branch_cut"});
    t.comment(header_line("bs", cfg));
    json counts = json::array();
    for (int k : cfg.sweep_k) {
        std::vector<BSPoint> pts;
        if (cfg.kind == ModelKind::OoguriVafaWindow) {
            pts = bs_points_ov(k, cfg.a, cfg.ov(cfg.params.s));
        } else if (cfg.kind == ModelKind::SemiFlatAbelian) {
            const Window w = Window::half_open(cfg.center[0] - cfg.half_width, cfg.center[0] + cfg.half_width,
                                               cfg.center[1] - cfg.half_width, cfg.center[1] + cfg.half_width);
            pts = bs_points_semiflat(w, k, cfg.a);
        } else {
            for (const Vec2& p : model_bs_points(cfg.model(cfg.params.s, k))) {
                BSPoint b;
                b.base = cplx(p[0], p[1]);
                pts.push_back(b);
            }
        }
        for (std::size_t i = 0; i < pts.size(); ++i)
            t.row({std::to_string(k), std::to_string(i), fmt17(pts[i].base.real()), fmt17(pts[i].base.imag()),
                   std::to_string(pts[i].level), pts[i].strict ? "1" : "0", pts[i].near_branch_cut ? "1" : "0"});
        counts.push_back({{"k", k}, {"count", pts.size()}});
    }
    std::vector<Artifact> out;
    add(out, cfg, "bs", t, {{"counts", counts}});
    return out;
}

json spectrum_json(const DbarSpectrum& d, double s, int k) {
    return {{"s", s},
            {"k", k},
            {"near_zero", d.near_zero},
            {"first_nonzero", d.first_nonzero},
            {"dimension", d.dimension},
            {"modes", d.modes},
            {"dbar", d.dbar.eigenvalues},
            {"residuals", d.laplacian.residuals}};
}

std::vector<Artifact> run_spectrum(const ExperimentConfig& cfg) {
    const double s = cfg.params.s;
    const int k = cfg.params.k;
    const DbarSpectrum d = dbar_spectrum(cfg.model(s, k), cfg.n_eigs, cfg.params.tol);
    CsvTable t({"index", "dbar_eigenvalue", "laplacian_eigenvalue", "residual", "count_below_k_half"});
    t.comment(header_line("spectrum", cfg));
    t.comment("model=" + to_string(cfg.kind) + " s=" + fmt17(s) + " k=" + std::to_string(k));
    for (std::size_t i = 0; i < d.dbar.eigenvalues.size(); ++i)
        t.row({std::to_string(i), fmt17(d.dbar.eigenvalues[i]), fmt17(d.laplacian.eigenvalues[i]),
               fmt17(d.laplacian.residuals[i]), std::to_string(d.near_zero)});
    std::vector<Artifact> out;
    add(out, cfg, "spectrum", t, spectrum_json(d, s, k));
    return out;
}

std::vector<Artifact> run_lower_bound(const ExperimentConfig& cfg) {
    CsvTable t({"R", "radius_base", "rayleigh_inf", "K", "K_exact", "delta", "landau_bound", "rayleigh_bound",
                "meets_landau_bound", "meets_rayleigh_bound"});
    t.comment(header_line("lower-bound", cfg));
    json rows = json::array();
    for (double R : cfg.sweep_R) {
        const LowerBoundReport r = verify_lower_bound(cfg.model(cfg.params.s, cfg.params.k), R, cfg.params.tol);
        t.row({fmt17(R), fmt17(r.radius_base), fmt17(r.rayleigh_inf), fmt17(r.K), fmt17(r.K_exact), fmt17(r.delta),
               fmt17(r.landau_bound), fmt17(r.rayleigh_bound), r.meets_landau_bound ? "1" : "0",
               r.meets_rayleigh_bound ? "1" : "0"});
        rows.push_back({{"R", R}, {"rayleigh_inf", r.rayleigh_inf}, {"K", r.K}, {"landau_bound", r.landau_bound}});
    }
    std::vector<Artifact> out;
    add(out, cfg, "lower-bound", t, {{"rows", rows}});
    return out;
}

} // namespace

double gh_effective_radius(double R, const std::vector<double>& sweep_s, double delta0) {
    double r = R;
    for (double s : sweep_s) r = std::min(r, zeta_radius(delta0, s) / 3.0);
    return r;
}

namespace {

std::vector<Artifact> run_gh(const ExperimentConfig& cfg) {
    const double R = cfg.sweep_R.front();
    const double Reff = gh_effective_radius(R, cfg.sweep_s, cfg.params.delta0);
    CsvTable t({"s", "R", "R_eff", "samples", "median", "sup", "q10", "q25", "q75", "q90", "median_relative",
                "surjectivity_gap", "graph_bias", "fiber_diameter", "fiber_ratio"});
    t.comment(header_line("gh", cfg));
    json rows = json::array();
    std::vector<Artifact> out;
    for (std::size_t i = 0; i < cfg.sweep_s.size(); ++i) {
        const double s = cfg.sweep_s[i];
        const OVParams p = cfg.ov(s);
        const CloudGraph g = build_cloud_graph(p, 3.0 * Reff * (1.0 - 1e-9), cfg.params.m, {cfg.gh_nt, cfg.gh_nb});
        std::vector<double> mat;
        const DistortionReport d = sample_and_distort(g, s, Reff, cfg.gh_samples, cfg.seed, wants(cfg, "bin") ? &mat : nullptr);
        const double fd = fiber_diameter(cplx(cfg.gh_y_fiber, 0.0), p);
        const double ratio = fd / std::sqrt(s * std::log(1.0 / s));
        t.row({fmt17(s), fmt17(R), fmt17(Reff), std::to_string(d.samples), fmt17(d.median), fmt17(d.sup),
               fmt17(d.q10), fmt17(d.q25), fmt17(d.q75), fmt17(d.q90), fmt17(d.median_relative),
               fmt17(d.surjectivity_gap), fmt17(d.graph_bias), fmt17(fd), fmt17(ratio)});
        rows.push_back({{"s", s}, {"R_eff", Reff}, {"median", d.median}, {"sup", d.sup},
                        {"surjectivity_gap", d.surjectivity_gap}, {"fiber_diameter", fd}, {"fiber_ratio", ratio}});
        if (!mat.empty()) {
            out.push_back({"gh-" + cfg.hash + "-s" + std::to_string(i) + ".bin",
                           encode_distance_matrix(mat, static_cast<std::uint64_t>(cfg.gh_samples)), true});
        }
    }
    add(out, cfg, "gh", t, {{"rows", rows}});
    return out;
}

std::vector<Artifact> run_sweep(const ExperimentConfig& cfg) {
    CsvTable t({"s", "k", "near_zero", "first_nonzero", "lowest"});
    t.comment(header_line("sweep", cfg));
    std::string lines;
    for (double s : cfg.sweep_s) {
        for (int k : cfg.sweep_k) {
            const DbarSpectrum d = dbar_spectrum(cfg.model(s, k), cfg.n_eigs, cfg.params.tol);
            t.row({fmt17(s), std::to_string(k), std::to_string(d.near_zero), fmt17(d.first_nonzero),
                   fmt17(d.dbar.eigenvalues.front())});
            json j = spectrum_json(d, s, k);
            j["config_hash"] = cfg.hash;
            lines += j.dump() + "\n";
        }
    }
    std::vector<Artifact> out;
    const std::string base = "sweep-" + cfg.hash;
    if (wants(cfg, "csv")) out.push_back({base + ".csv", t.str(), false});
    if (wants(cfg, "json")) out.push_back({base + ".jsonl", lines, false});
    return out;
}

std::vector<Artifact> run_oracle(const ExperimentConfig& cfg) {
    json o;
    o["config_hash"] = cfg.hash;
    for (int k : {1, 2}) {
        const std::string key = "k" + std::to_string(k);
        o["gaussian_exact_2d"][key] = gaussian_exact_spectrum(k, 6, 2);
        o["gaussian_exact_1d"][key] = gaussian_exact_spectrum(k, 4, 1);
        o["hermite_galerkin_1d"][key] = hermite_galerkin_spectrum(k, 60, 4);
        // 1D finite differences at three resolutions, extrapolated.
        std::vector<std::vector<double>> levels;
        for (int n : {400, 800, 1600}) {
            const OperatorMatrix op = gaussian_operator(k, n, 1);
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es{Eigen::MatrixXd(op.A)};
            levels.push_back({es.eigenvalues()[0], es.eigenvalues()[1], es.eigenvalues()[2], es.eigenvalues()[3]});
        }
        std::vector<double> rich;
        for (int i = 0; i < 4; ++i) rich.push_back(richardson({levels[0][i], levels[1][i], levels[2][i]}));
        o["gaussian_fd_richardson_1d"][key] = rich;
    }
    std::vector<int> counts;
    for (int k : {1, 2, 3}) counts.push_back(k * k);
    o["abelian_bs_count"] = counts;
    o["euler_gamma"] = euler_gamma();
    json as = json::array();
    for (double s : cfg.sweep_s) as.push_back({{"s", s}, {"a_s", ov_a_s(s)}});
    o["a_s"] = as;
    const int n = 10;
    const double h = 1.0 / (n + 1);
    std::vector<double> lap;
    for (int j = 1; j <= n; ++j) lap.push_back(4.0 * std::pow(std::sin(kPi * j / (2.0 * (n + 1))), 2) / (h * h));
    o["dirichlet_laplacian_1d_n10"] = lap;
    o["rho_k_zero_m2_k3"] = rho_k_structure(2, 3).zero;
    o["rho_k_shift_m1_k1"] = rho_k_structure(1, 1).a2;
    return {{"oracle.json", o.dump(2) + "\n", false}};
}

} // namespace

std::vector<Artifact> run_subcommand(const std::string& sub, const ExperimentConfig& cfg) {
    if (sub == "potential") return run_potential(cfg);
    if (sub == "bs") return run_bs(cfg);
    if (sub == "spectrum") return run_spectrum(cfg);
    if (sub == "lower-bound") return run_lower_bound(cfg);
    if (sub == "gh") return run_gh(cfg);
    if (sub == "sweep") return run_sweep(cfg);
    if (sub == "oracle") return run_oracle(cfg);
    throw ValidationError("unknown subcommand '" + sub + "'");
}

int run_experiment(const std::string& sub, const std::string& config_path, const std::string& out_dir,
                   const std::string& seed_override, std::ostream& err) {
    try {
        ConfigFile cfgfile = ConfigFile::load(config_path);
        if (!seed_override.empty()) {
            cfgfile.set("output.seed", seed_override);
        }
        const ExperimentConfig cfg = ExperimentConfig::from(cfgfile);
        const std::vector<Artifact> arts = run_subcommand(sub, cfg);
        std::filesystem::create_directories(out_dir);
        for (const Artifact& a : arts) {
            const std::filesystem::path path = std::filesystem::path(out_dir) / a.name;
            std::ofstream f(path, std::ios::binary);
            if (!f) throw ValidationError("cannot write artifact " + path.string());
            f << a.content;
        }
        return kExitOk;
    } catch (const NonConvergence& e) {
        err << "error: numerical non-convergence: " << e.what() << "\n";
        return kExitNonConvergence;
    } catch (const std::invalid_argument& e) {
        err << "error: validation failed: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::domain_error& e) {
        err << "error: validation failed: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::filesystem::filesystem_error& e) {
        err << "error: " << e.what() << "\n";
        return kExitValidation;
    }
}

} // namespace collapse
