// Acceptance runner. `acceptance <n>` evaluates criterion n and prints one
// line "[PASS] criterion n: ..." or "[FAIL] criterion n: ...". The exit code
// is 0 on PASS and 1 on FAIL. Tolerances are the constants next to each check.

#include "collapse/experiment.hpp"
#include "collapse/gh_lab.hpp"
#include "collapse/holonomy.hpp"
#include "collapse/limit_spectra.hpp"
#include "collapse/magnetic.hpp"
#include "collapse/ooguri_vafa.hpp"
#include "collapse/quadrature.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <map>
#include <sstream>
#include <string>
#include <vector>

using namespace collapse;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

class Stopwatch {
public:
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0_).count();
    }

private:
    std::chrono::steady_clock::time_point t0_ = std::chrono::steady_clock::now();
};

std::string fmt(const char* f, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

std::string join(const std::vector<double>& v, const char* f = "%.6g") {
    std::string out = "{";
    for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ", " : "") + fmt(f, v[i]);
    return out + "}";
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
    const double n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double X = std::log(x[i]), Y = std::log(y[i]);
        sx += X;
        sy += Y;
        sxx += X * X;
        sxy += X * Y;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

// Radius shared by the GH and measure criteria: R = 7 clipped to the chart image.
const std::vector<double> kGhSweep{0.2, 0.1, 0.05};
double gh_radius() { return gh_effective_radius(7.0, kGhSweep, 0.5); }

Outcome criterion1() {
    constexpr double kRelTol = 1e-6;
    constexpr double kMaxSeconds = 5.0;
    const Stopwatch sw;
    double worst = 0.0;
    std::string values;
    for (int k : {1, 2}) {
        std::vector<std::vector<double>> levels;
        for (int np1 : {40, 80, 160}) levels.push_back(gaussian_lowest(k, np1 - 1, 5, 2).eigenvalues);
        const std::vector<double> exact = gaussian_exact_spectrum(k, 5, 2);
        std::vector<double> extrap;
        for (int i = 0; i < 5; ++i) {
            const double v = richardson({levels[0][i], levels[1][i], levels[2][i]}, 2.0, 4);
            extrap.push_back(v);
            worst = std::max(worst, std::abs(v - exact[i]) / std::max(1.0, exact[i]));
        }
        values += " k=" + std::to_string(k) + " " + join(extrap, "%.9f");
    }
    const double t = sw.seconds();
    return {worst < kRelTol && t < kMaxSeconds,
            "Gaussian lowest five after Richardson:" + values + "; max rel error " + fmt("%.2e", worst) +
                " (tol 1e-6), runtime " + fmt("%.2f", t) + " s (limit 5 s)"};
}

Outcome criterion2() {
    constexpr double kMaxSecondsPerK = 120.0;
    bool ok = true;
    std::string d;
    for (int k : {1, 2, 3}) {
        const Stopwatch sw;
        const LocalModel m = LocalModel::abelian(0.05, k, 64);
        const DbarSpectrum sp = dbar_spectrum(m, k * k + 4);
        const double t = sw.seconds();
        ok = ok && sp.near_zero == k * k && t < kMaxSecondsPerK;
        d += " k=" + std::to_string(k) + ": " + std::to_string(sp.near_zero) + " below " + fmt("%g", 0.5 * k) +
             " (expect " + std::to_string(k * k) + ", next " + fmt("%.4f", sp.first_nonzero) + ", " + fmt("%.1f", t) + " s);";
    }
    return {ok, "abelian cell s=0.05 n=64 near-zero counts:" + d};
}

Outcome criterion3() {
    constexpr double kRelTol = 0.10;
    const std::vector<double> ss{0.2, 0.1, 0.05, 0.02};
    std::vector<double> first, gap;
    for (double s : ss) {
        LocalModel m;
        m.kind = ModelKind::SemiFlatGeneral;
        m.params.s = s;
        m.params.k = 1;
        m.bc = Boundary::Dirichlet;
        m.lattice = lattice_exponential(0.3);
        m.half_width = 6.0 * std::sqrt(s);
        m.n_grid = 72;
        const DbarSpectrum d = dbar_spectrum(m, 6);
        first.push_back(d.first_nonzero);
        gap.push_back(std::abs(d.first_nonzero - 1.0));
    }
    bool monotone = true;
    for (std::size_t i = 1; i < gap.size(); ++i) monotone = monotone && gap[i] < gap[i - 1];
    const bool close = gap.back() < kRelTol;
    return {monotone && close, "first nonzero dbar eigenvalue at s={0.2,0.1,0.05,0.02}: " + join(first, "%.7f") +
                                   "; distance to k=1 " + join(gap, "%.3e") + (monotone ? " monotone" : " NOT monotone") +
                                   ", final within 10%: " + (close ? "yes" : "no")};
}

Outcome criterion4() {
    constexpr double kTol = 1e-8;
    SplitMix rng(20240604);
    double worst = 0.0;
    for (int i = 0; i < 20; ++i) {
        const double r = 0.02 + 0.28 * rng.uniform();
        const double th = kTwoPi * rng.uniform();
        const double s = 0.01 + 0.09 * rng.uniform();
        OVParams p;
        p.s = s;
        const cplx y = std::polar(r, th);
        const double avg =
            integrate([&](double t) { return ov_potential({y.real(), y.imag(), t}, p); }, 0.0, s, 4, 10000) / s;
        worst = std::max(worst, std::abs(avg - ov_vsf(y, p)));
    }
    return {worst < kTol, "max |fiber average of V_s - V_sf| over 20 random (y, s): " + fmt("%.3e", worst) + " (tol 1e-8)"};
}

Outcome criterion5() {
    constexpr double kMaxSpread = 0.20;
    std::vector<double> stat;
    for (double s : {0.05, 0.02, 0.01}) {
        OVParams p;
        p.s = s;
        stat.push_back(ov_compare(cplx(0.1, 0.0), p, 128).exp_gap_stat);
    }
    const double lo = *std::min_element(stat.begin(), stat.end());
    const double hi = *std::max_element(stat.begin(), stat.end());
    const double spread = hi / lo - 1.0;
    return {spread < kMaxSpread, "s e^{2 pi |y|/s} sup|V_s - V_sf| at |y|=0.1, s={0.05,0.02,0.01}: " + join(stat, "%.5f") +
                                     "; spread max/min - 1 = " + fmt("%.3f", spread) + " (limit 0.20)"};
}

Outcome criterion6() {
    constexpr double kLineTol = 1e-6;
    constexpr double kRootTol = 1e-10;
    OVParams p;
    p.s = 0.05;
    p.delta0 = 0.3;
    const double h00 = holonomy_H(0.0, 0.0, p);
    double worst = 0.0;
    for (cplx y : {cplx(0.1, 0.05), cplx(-0.2, 0.1), cplx(0.05, -0.15), cplx(0.0, 0.12)})
        worst = std::max(worst, std::abs(holonomy_H(y.real(), y.imag(), p) - holonomy_line_integral(y.real(), y.imag(), p)));
    const double t0 = 0.05;
    const std::vector<BSPoint> pts = bs_points_ov(1, {0.0, -holonomy_H(0.0, t0, p)}, p);
    const double root_err = pts.size() == 1 ? std::abs(pts[0].base - cplx(0.0, t0)) : INFINITY;
    return {h00 == 0.0 && worst < kLineTol && root_err < kRootTol,
            "H(0,0) = " + fmt("%g", h00) + "; max |closed form - line integral| " + fmt("%.2e", worst) +
                " (tol 1e-6); planted root error " + fmt("%.2e", root_err) + " with " + std::to_string(pts.size()) +
                " root(s) (tol 1e-10)"};
}

Outcome criterion7() {
    constexpr double kExponent = 2.0;
    constexpr double kExponentTol = 0.2;
    const std::vector<double> Rs{4.0, 6.0, 8.0};
    std::vector<double> inf, excess;
    for (double R : Rs) {
        LocalModel m = LocalModel::abelian(0.05, 1, 128);
        m.n_report = 1;
        const LowerBoundReport r = verify_lower_bound(m, R);
        inf.push_back(r.rayleigh_inf);
        excess.push_back(r.rayleigh_inf - 1.0);
    }
    const double slope = loglog_slope(Rs, excess);
    return {std::abs(slope - kExponent) <= kExponentTol,
            "Rayleigh infimum off BS balls at R={4,6,8}: " + join(inf, "%.4f") + "; fitted exponent of inf - k^2 = " +
                fmt("%.4f", slope) + " (target 2 +- 0.2)"};
}

Outcome criterion8() {
    constexpr double kNoise = 0.05;
    constexpr double kBand = 2.0;
    const double R = gh_radius();
    std::vector<double> med, ratio;
    for (double s : kGhSweep) {
        OVParams p;
        p.s = s;
        const CloudGraph g = build_cloud_graph(p, 3.0 * R * (1.0 - 1e-9), 1, {16, 24});
        med.push_back(sample_and_distort(g, s, R, 200, 1).median);
        ratio.push_back(fiber_diameter(cplx(0.1, 0.0), p) / std::sqrt(s * std::log(1.0 / s)));
    }
    bool decreasing = true;
    for (std::size_t i = 1; i < med.size(); ++i) decreasing = decreasing && med[i] < med[i - 1] * (1.0 + kNoise);
    const double band = *std::max_element(ratio.begin(), ratio.end()) / *std::min_element(ratio.begin(), ratio.end());
    return {decreasing && band <= kBand,
            "R=7 clipped to " + fmt("%.4f", R) + "; median distortion at s={0.2,0.1,0.05}: " + join(med, "%.5f") +
                (decreasing ? " decreasing" : " NOT decreasing") + "; fiber diameter / sqrt(s log 1/s): " + join(ratio, "%.4f") +
                " band " + fmt("%.3f", band) + " (limit 2)"};
}

Outcome criterion9() {
    constexpr double kRelTol = 0.05;
    OVParams p;
    p.s = 0.02;
    const double R = gh_radius();
    const MeasureReport r = measure_check(MeasureModel::OoguriVafa, p, R, cutoff_constant(R));
    return {r.rel_error < kRelTol, "cut-off constant test function on B(" + fmt("%.4f", R) + ") at s=0.02: relative error " +
                                       fmt("%.4f", r.rel_error) + " (limit 0.05); sandwich bound " + fmt("%.4f", r.bound) +
                                       " vs absolute error " + fmt("%.4f", r.abs_error)};
}

Outcome criterion10() {
    const SpectralStructure z = rho_k_structure(2, 3);
    // Window around (1/2, 1/2) holding only BS points of strict level 2.
    auto forced = [](int k) {
        LocalModel m = LocalModel::abelian(0.05, k, 64);
        m.bc = Boundary::Dirichlet;
        m.center = {0.5, 0.5};
        m.half_width = 0.4;
        return dbar_spectrum(m, 6);
    };
    const DbarSpectrum k1 = forced(1);
    const DbarSpectrum k2 = forced(2);
    const bool ok = z.zero && z.spectrum(4).empty() && k1.near_zero == 0 && k2.near_zero == 1;
    return {ok, "rho_k_structure(2,3) = " + z.describe() + "; forced level-2 window: k=1 near-zero count " +
                    std::to_string(k1.near_zero) + " (lowest " + fmt("%.4f", k1.dbar.eigenvalues.front()) +
                    "), k=2 control count " + std::to_string(k2.near_zero)};
}

std::map<std::string, std::string> slurp_dir(const fs::path& d) {
    std::map<std::string, std::string> out;
    for (const auto& e : fs::directory_iterator(d)) {
        std::ifstream in(e.path(), std::ios::binary);
        out[e.path().filename().string()] = std::string(std::istreambuf_iterator<char>(in), {});
    }
    return out;
}

Outcome criterion11() {
    const fs::path root = fs::temp_directory_path() / "collapse_acceptance_11";
    fs::remove_all(root);
    fs::create_directories(root);
    const fs::path cfg = root / "run.ini";
    std::ofstream(cfg) << "[model]\nkind = abelian\nn_grid = 64\nn_eigs = 4\n\n"
                          "[sweep]\ns = 0.05\nk = 1, 2\nR = 4\n\n"
                          "[potential]\ny = 0.05, 0.1\n\n"
                          "[gh]\nsamples = 20\n\n"
                          "[output]\nseed = 7\nemit = csv, json, bin\n";
    bool ok = true;
    std::string d;
    for (const std::string sub : {"potential", "bs", "spectrum", "sweep", "gh"}) {
        std::map<std::string, std::string> runs[2];
        bool ran = true;
        for (int r = 0; r < 2 && ran; ++r) {
            const fs::path out = root / (sub + "-" + std::to_string(r));
            const std::string cmd = std::string("\"") + COLLAPSE_LAB_EXE + "\" " + sub + " --config \"" + cfg.string() +
                                    "\" --out \"" + out.string() + "\"";
            ran = std::system(cmd.c_str()) == 0;
            if (ran) runs[r] = slurp_dir(out);
        }
        if (!ran) {
            ok = false;
            d += " " + sub + ": run failed;";
            continue;
        }
        const bool same = !runs[0].empty() && runs[0] == runs[1];
        ok = ok && same;
        d += " " + sub + ": " + std::to_string(runs[0].size()) + " artifact(s) " + (same ? "identical" : "DIFFER") + ";";
    }
    fs::remove_all(root);
    return {ok, "two CLI runs per subcommand:" + d};
}

} // namespace

int main(int argc, char** argv) {
    const std::vector<std::function<Outcome()>> criteria{criterion1, criterion2, criterion3, criterion4,
                                                          criterion5, criterion6, criterion7, criterion8,
                                                          criterion9, criterion10, criterion11};
    std::vector<int> which;
    if (argc > 1) {
        for (int i = 1; i < argc; ++i) which.push_back(std::atoi(argv[i]));
    } else {
        for (int i = 1; i <= static_cast<int>(criteria.size()); ++i) which.push_back(i);
    }
    int failures = 0;
    for (int n : which) {
        if (n < 1 || n > static_cast<int>(criteria.size())) {
            std::fprintf(stderr, "unknown criterion %d\n", n);
            return 2;
        }
        Outcome o;
        try {
            o = criteria[n - 1]();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        std::printf("[%s] criterion %d: %s\n", o.pass ? "PASS" : "FAIL", n, o.detail.c_str());
        std::fflush(stdout);
        failures += !o.pass;
    }
    return failures == 0 ? 0 : 1;
}
