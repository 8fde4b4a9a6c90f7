#include "corrdyn/numeric/roots.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "corrdyn/error.hpp"

namespace corrdyn::numeric {

namespace {

struct Eval {
    cplx p, dp;
    double scale;  // sum |c_k| |x|^k
};

Eval horner(std::span<const cplx> c, cplx x) {
    cplx p = 0, dp = 0;
    double s = 0, ax = std::abs(x);
    for (std::size_t k = c.size(); k-- > 0;) {
        dp = dp * x + p;
        p = p * x + c[k];
        s = s * ax + std::abs(c[k]);
    }
    return {p, dp, s};
}

void newton_polish(std::span<const cplx> c, cplx& x, int steps) {
    for (int i = 0; i < steps; ++i) {
        Eval e = horner(c, x);
        if (e.p == cplx(0) || e.dp == cplx(0)) return;
        cplx next = x - e.p / e.dp;
        Eval en = horner(c, next);
        if (!(std::abs(en.p) < std::abs(e.p))) return;
        x = next;
    }
}

std::vector<cplx> quadratic(cplx a, cplx b, cplx c) {
    cplx disc = std::sqrt(b * b - 4.0 * a * c);
    if ((std::conj(b) * disc).real() < 0) disc = -disc;
    cplx q = -0.5 * (b + disc);
    if (q == cplx(0)) return {0, 0};
    return {q / a, c / q};
}

}  // namespace

double relative_residual(std::span<const cplx> c, cplx x) {
    Eval e = horner(c, x);
    return e.scale > 0 ? std::abs(e.p) / e.scale : 0.0;
}

std::vector<cplx> polynomial_roots(std::span<const cplx> c) {
    const int d = static_cast<int>(c.size()) - 1;
    if (d <= 0) return {};
    if (c.back() == cplx(0)) throw std::invalid_argument("polynomial_roots: zero leading coefficient");

    // Exact zero roots are split off first.
    int zeros = 0;
    while (zeros < d && c[static_cast<std::size_t>(zeros)] == cplx(0)) ++zeros;
    std::vector<cplx> out(static_cast<std::size_t>(zeros), cplx(0));
    std::span<const cplx> q = c.subspan(static_cast<std::size_t>(zeros));
    const int n = d - zeros;
    if (n == 0) return out;
    if (n == 1) {
        out.push_back(-q[0] / q[1]);
        return out;
    }
    if (n == 2) {
        for (cplx r : quadratic(q[2], q[1], q[0])) {
            newton_polish(q, r, 2);
            out.push_back(r);
        }
        return out;
    }

    // Initial guesses on a circle whose radius is the Fujiwara-style bound.
    double radius = 0;
    for (int k = 0; k < n; ++k) {
        double v = std::pow(std::abs(q[static_cast<std::size_t>(k)] / q.back()), 1.0 / (n - k));
        radius = std::max(radius, v);
    }
    if (radius == 0) radius = 1;
    std::vector<cplx> z(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) z[static_cast<std::size_t>(k)] = std::polar(radius, 2 * std::numbers::pi * k / n + 0.4);

    std::vector<bool> done(static_cast<std::size_t>(n), false);
    bool converged = false;
    for (int iter = 0; iter < 1000 && !converged; ++iter) {
        converged = true;
        for (int k = 0; k < n; ++k) {
            if (done[static_cast<std::size_t>(k)]) continue;
            cplx& zk = z[static_cast<std::size_t>(k)];
            Eval e = horner(q, zk);
            if (e.p == cplx(0)) {
                done[static_cast<std::size_t>(k)] = true;
                continue;
            }
            cplx ratio = e.p / e.dp;
            cplx s = 0;
            for (int j = 0; j < n; ++j)
                if (j != k) s += 1.0 / (zk - z[static_cast<std::size_t>(j)]);
            cplx step = ratio / (1.0 - ratio * s);
            if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) step = ratio;
            zk -= step;
            if (std::abs(step) <= 1e-15 * std::max(1.0, std::abs(zk)) || std::abs(e.p) <= 1e-17 * e.scale)
                done[static_cast<std::size_t>(k)] = true;
            else
                converged = false;
        }
    }
    for (auto& r : z) newton_polish(q, r, 3);
    if (!converged) {
        double worst = 0;
        for (const auto& r : z) worst = std::max(worst, relative_residual(q, r));
        if (worst > 1e-8)
            throw DomainError("fiber_solve_failed",
                              "root finder did not converge (degree " + std::to_string(n) + ", residual " + std::to_string(worst) + ")");
    }
    out.insert(out.end(), z.begin(), z.end());
    return out;
}

std::vector<ProjPoint> binary_form_roots(std::span<const cplx> c) {
    const int d = static_cast<int>(c.size()) - 1;
    if (d <= 0) return {};
    double m = 0;
    for (const auto& x : c) m = std::max(m, std::abs(x));
    if (m == 0) throw DomainError("fiber_solve_failed", "binary form vanishes identically");

    // Chart 0 solves in w = u / v, chart 1 in s = v / u.
    const bool flip = std::abs(c[static_cast<std::size_t>(d)]) < std::abs(c[0]);
    std::vector<cplx> e(c.begin(), c.end());
    if (flip) std::reverse(e.begin(), e.end());
    std::vector<cplx> other(e.rbegin(), e.rend());

    const double tiny = 1e-14 * m;
    int at_chart_infinity = 0;
    while (e.size() > 1 && std::abs(e.back()) <= tiny) {
        e.pop_back();
        ++at_chart_infinity;
    }
    for (auto& x : e)
        if (std::abs(x) <= tiny) x = 0;

    std::vector<cplx> roots = polynomial_roots(e);
    std::vector<ProjPoint> out;
    out.reserve(static_cast<std::size_t>(d));
    for (cplx r : roots) {
        if (std::abs(r) > 1) {
            cplx s = 1.0 / r;
            newton_polish(other, s, 3);
            out.push_back(flip ? ProjPoint(s, 1.0) : ProjPoint(1.0, s));
        } else {
            out.push_back(flip ? ProjPoint(1.0, r) : ProjPoint(r, 1.0));
        }
    }
    for (int k = 0; k < at_chart_infinity; ++k) out.push_back(flip ? ProjPoint(0.0, 1.0) : ProjPoint(1.0, 0.0));
    return out;
}

}  // namespace corrdyn::numeric
