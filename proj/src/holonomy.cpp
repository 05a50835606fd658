#include "collapse/holonomy.hpp"

#include "collapse/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace collapse {

Window Window::half_open(double lo0, double hi0, double lo1, double hi1) {
    Window w;
    w.lo[0] = lo0; w.hi[0] = hi0; w.lo[1] = lo1; w.hi[1] = hi1;
    return w;
}

Window Window::open(double lo0, double hi0, double lo1, double hi1) {
    Window w = half_open(lo0, hi0, lo1, hi1);
    w.closed_lo[0] = w.closed_lo[1] = false;
    return w;
}

bool Window::contains(double x0, double x1) const {
    const double x[2] = {x0, x1};
    for (int i = 0; i < 2; ++i) {
        if (closed_lo[i] ? x[i] < lo[i] : x[i] <= lo[i]) return false;
        if (closed_hi[i] ? x[i] > hi[i] : x[i] >= hi[i]) return false;
    }
    return true;
}

double holonomy_H0(double u1, double u2, const OVParams& p) {
    const double r = std::hypot(u1, u2);
    double H = u2 / kTwoPi + p.h.int_t_dh2(u1, u2) + p.h.int_h0(u2);
    if (r > 0.0) H -= u2 * std::log(r) / kTwoPi;
    return H;
}

double holonomy_H(double u1, double u2, const OVParams& p) {
    if (u1 == 0.0 && u2 == 0.0) return 0.0;
    double H = holonomy_H0(u1, u2, p);
    if (u1 != 0.0) H += u1 * ov_calV(cplx(u1, u2), p).imag();
    return H;
}

double holonomy_line_integral(double u1, double u2, const OVParams& p, int panels) {
    const double h = 1e-3 * std::max(1e-3, std::min(1.0, std::hypot(u1, u2)));
    auto dphi2 = [&](double u3) {
        auto f = [&](double v) { return ov_phi({u1, v, u3}, p); };
        return (-f(u2 + 2 * h) + 8.0 * f(u2 + h) - 8.0 * f(u2 - h) + f(u2 - 2 * h)) / (12.0 * h);
    };
    const double horizontal = -integrate(dphi2, 0.0, p.s, 16, panels);
    double orbit = 0.0;
    if (u1 != 0.0) orbit = u1 * ov_calV(cplx(u1, u2), p).imag();
    return horizontal + orbit;
}

HolonomyVector holonomy_vector(cplx y, Vec2 a, const OVParams& p) {
    HolonomyVector v;
    v.a = a;
    v.x1 = y.real() + a[0];
    v.x2 = holonomy_H(y.real(), y.imag(), p) + a[1];
    return v;
}

int bs_level(int k, long j1, long j2) {
    const long g = std::gcd(std::gcd(static_cast<long>(k), std::labs(j1)), std::labs(j2));
    return static_cast<int>(k / g);
}

std::vector<BSPoint> bs_points_semiflat(const Window& w, int k, Vec2 a) {
    if (k < 1) throw ValidationError("k must be positive");
    std::vector<BSPoint> out;
    // Points p = j / k - a with p in the window.
    const long j0lo = static_cast<long>(std::floor((w.lo[0] + a[0]) * k)) - 1;
    const long j0hi = static_cast<long>(std::ceil((w.hi[0] + a[0]) * k)) + 1;
    const long j1lo = static_cast<long>(std::floor((w.lo[1] + a[1]) * k)) - 1;
    const long j1hi = static_cast<long>(std::ceil((w.hi[1] + a[1]) * k)) + 1;
    for (long j0 = j0lo; j0 <= j0hi; ++j0) {
        for (long j1 = j1lo; j1 <= j1hi; ++j1) {
            const double x0 = static_cast<double>(j0) / k - a[0];
            const double x1 = static_cast<double>(j1) / k - a[1];
            if (!w.contains(x0, x1)) continue;
            BSPoint b;
            b.base = cplx(x0, x1);
            b.level = bs_level(k, j0, j1);
            b.strict = (b.level == k);
            out.push_back(b);
        }
    }
    return out;
}

namespace {

// Bisection on a sign change, finished with secant steps.
double refine_root(const std::function<double(double)>& f, double lo, double hi, double tol) {
    double flo = f(lo);
    for (int it = 0; it < 200 && hi - lo > tol; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if ((fm < 0.0) == (flo < 0.0)) { lo = mid; flo = fm; } else { hi = mid; }
    }
    double x0 = lo, x1 = hi, f0 = f(x0), f1 = f(x1);
    for (int it = 0; it < 4 && f1 != f0; ++it) {
        const double x2 = x1 - f1 * (x1 - x0) / (f1 - f0);
        if (!(x2 >= lo - tol && x2 <= hi + tol)) break;
        x0 = x1; f0 = f1; x1 = x2; f1 = f(x1);
    }
    return std::abs(f(x1)) <= std::abs(f(0.5 * (lo + hi))) ? x1 : 0.5 * (lo + hi);
}

} // namespace

std::vector<BSPoint> bs_points_ov(int k, Vec2 a, const OVParams& p, double tol) {
    if (k < 1) throw ValidationError("k must be positive");
    const double step = kTwoPi / k;
    const double d0 = p.delta0;
    std::vector<BSPoint> out;
    const long jlo = static_cast<long>(std::floor((-d0 + a[0]) / step)) - 1;
    const long jhi = static_cast<long>(std::ceil((d0 + a[0]) / step)) + 1;
    for (long j = jlo; j <= jhi; ++j) {
        const double u1 = j * step - a[0];
        if (std::abs(u1) >= d0) continue;
        const double wdt = std::sqrt(d0 * d0 - u1 * u1);
        const int nscan = 2000;
        std::vector<double> grid(nscan + 1), val(nscan + 1);
        for (int i = 0; i <= nscan; ++i) {
            grid[i] = -wdt + 2.0 * wdt * (i + 0.5) / (nscan + 1);
            val[i] = holonomy_H(u1, grid[i], p) + a[1];
        }
        const double vmin = *std::min_element(val.begin(), val.end());
        const double vmax = *std::max_element(val.begin(), val.end());
        const long ilo = static_cast<long>(std::ceil(vmin / step)) - 1;
        const long ihi = static_cast<long>(std::floor(vmax / step)) + 1;
        for (long i2 = ilo; i2 <= ihi; ++i2) {
            const double target = i2 * step;
            auto f = [&](double u2) { return holonomy_H(u1, u2, p) + a[1] - target; };
            std::vector<double> roots;
            for (int i = 0; i < nscan; ++i) {
                const double fa = val[i] - target, fb = val[i + 1] - target;
                double root;
                if (fa == 0.0) root = grid[i];
                else if (fb != 0.0 && (fa < 0.0) != (fb < 0.0)) root = refine_root(f, grid[i], grid[i + 1], 1e-16);
                else continue;
                // A sign change across the branch cut is a jump, not a root.
                const double scale = std::max(1.0, std::abs(target));
                if (std::abs(f(root)) > 1e-9 * scale) continue;
                roots.push_back(root);
            }
            std::sort(roots.begin(), roots.end());
            for (size_t r = 0; r < roots.size(); ++r) {
                if (r > 0 && roots[r] - roots[r - 1] < tol) {
                    throw NonConvergence("bs_points_ov: non-isolated roots on a slice");
                }
                BSPoint b;
                double u2 = roots[r];
                if (u1 == 0.0 && std::abs(u2) < tol && i2 == 0 && a[1] == 0.0) u2 = 0.0;
                b.base = cplx(u1, u2);
                const long j1 = std::lround((u1 + a[0]) / step);
                b.level = bs_level(k, j1, i2);
                b.strict = (b.level == k);
                b.near_branch_cut = (u1 > 0.0 && std::abs(u2) < 1e3 * tol &&
                                     p.branch == LogBranch::ZeroTwoPi) ||
                                    (std::abs(u1) < 1e3 * tol && u2 > 0.0 &&
                                     p.branch == LogBranch::HalfPiFiveHalf);
                out.push_back(b);
            }
        }
    }
    return out;
}

std::map<int, std::vector<BSPoint>> bs_level_decompose(const std::vector<BSPoint>& pts, int k) {
    std::map<int, std::vector<BSPoint>> out;
    for (const BSPoint& b : pts) {
        if (k % b.level != 0) throw ValidationError("point level does not divide k");
        out[b.level].push_back(b);
    }
    return out;
}

} // namespace collapse
