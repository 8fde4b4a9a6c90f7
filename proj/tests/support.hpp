#pragma once

#include <algorithm>
#include <complex>
#include <random>
#include <vector>

#include "corrdyn/algebra/bipoly.hpp"
#include "corrdyn/algebra/text.hpp"
#include "corrdyn/projpoint.hpp"

namespace corrdyn::testing {

using algebra::BiPoly;

inline BiPoly poly(const char* text, const char* first = "z", const char* second = "w") {
    return algebra::parse_poly(text, {first, second}).poly;
}

// Dense random polynomial with the given bidegree bounds and coefficients in [-r, r].
inline BiPoly random_poly(std::mt19937_64& g, int dz, int dw, int r = 3) {
    std::uniform_int_distribution<int> coef(-r, r);
    std::vector<std::vector<mpz_class>> rows(static_cast<std::size_t>(dz + 1), std::vector<mpz_class>(static_cast<std::size_t>(dw + 1)));
    for (auto& row : rows)
        for (auto& c : row) c = coef(g);
    return BiPoly(rows);
}

// Numeric evaluation of p at (z, w).
inline std::complex<double> eval(const BiPoly& p, std::complex<double> z, std::complex<double> w) {
    std::complex<double> acc = 0;
    for (int j = p.deg_w(); j >= 0; --j) {
        std::complex<double> row = 0;
        for (int i = p.deg_z(); i >= 0; --i) row = row * z + p.coeff(i, j).get_d();
        acc = acc * w + row;
    }
    return acc;
}

// Greedy multiset matching under the chordal metric.
inline bool same_multiset(std::vector<ProjPoint> a, std::vector<ProjPoint> b, double tol) {
    if (a.size() != b.size()) return false;
    std::vector<bool> used(b.size(), false);
    for (const auto& x : a) {
        double best = 2;
        std::size_t bi = b.size();
        for (std::size_t k = 0; k < b.size(); ++k)
            if (!used[k] && chordal(x, b[k]) < best) {
                best = chordal(x, b[k]);
                bi = k;
            }
        if (bi == b.size() || best > tol) return false;
        used[bi] = true;
    }
    return true;
}

inline std::complex<double> random_complex(std::mt19937_64& g, double scale = 1.0) {
    std::normal_distribution<double> n(0.0, scale);
    return {n(g), n(g)};
}

}  // namespace corrdyn::testing

namespace corrdyn::testing {

// Plain Durand-Kerner, kept separate from the library root finder so that
// oracles do not share code with the path under test.
inline std::vector<std::complex<double>> dk_roots(std::vector<std::complex<double>> c) {
    while (!c.empty() && std::abs(c.back()) == 0) c.pop_back();
    const int n = static_cast<int>(c.size()) - 1;
    if (n <= 0) return {};
    std::complex<double> lead = c.back();
    for (auto& x : c) x /= lead;
    std::vector<std::complex<double>> z(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) z[static_cast<std::size_t>(k)] = std::pow(std::complex<double>(0.4, 0.9), k);
    for (int iter = 0; iter < 5000; ++iter) {
        double moved = 0;
        for (int k = 0; k < n; ++k) {
            std::complex<double> p = 0;
            for (int i = n; i >= 0; --i) p = p * z[static_cast<std::size_t>(k)] + c[static_cast<std::size_t>(i)];
            std::complex<double> den = 1;
            for (int j = 0; j < n; ++j)
                if (j != k) den *= z[static_cast<std::size_t>(k)] - z[static_cast<std::size_t>(j)];
            std::complex<double> step = p / den;
            z[static_cast<std::size_t>(k)] -= step;
            moved = std::max(moved, std::abs(step));
        }
        if (moved < 1e-15) break;
    }
    return z;
}

}  // namespace corrdyn::testing

#include "corrdyn/corresp.hpp"

namespace corrdyn::testing {

// Random correspondence whose normalized equation has bidegree <= (dz, dw)
// and no factor free of a variable.
inline Correspondence random_correspondence(std::mt19937_64& g, int dz = 2, int dw = 2, int r = 3) {
    std::uniform_int_distribution<int> pick_z(1, dz), pick_w(1, dw);
    for (;;) {
        BiPoly p = random_poly(g, pick_z(g), pick_w(g), r);
        if (p.deg_z() < 1 || p.deg_w() < 1) continue;
        try {
            return parse_correspondence(algebra::to_string(p));
        } catch (const DomainError&) {
        }
    }
}

// Affine w-roots of every component at z, repeated by multiplicity; computed
// with the Durand-Kerner oracle.
inline std::vector<std::complex<double>> oracle_fiber(const Correspondence& f, std::complex<double> z) {
    std::vector<std::complex<double>> out;
    for (const auto& c : f.components()) {
        std::vector<std::complex<double>> cw(static_cast<std::size_t>(c.equation.deg_w() + 1));
        for (int j = 0; j <= c.equation.deg_w(); ++j) {
            std::complex<double> acc = 0;
            for (int i = c.equation.deg_z(); i >= 0; --i) acc = acc * z + c.equation.coeff(i, j).get_d();
            cw[static_cast<std::size_t>(j)] = acc;
        }
        for (auto w : dk_roots(cw))
            for (int m = 0; m < c.multiplicity; ++m) out.push_back(w);
    }
    return out;
}

inline std::vector<ProjPoint> to_points(const std::vector<std::complex<double>>& zs) {
    std::vector<ProjPoint> out;
    for (auto z : zs) out.push_back(ProjPoint::affine(z));
    return out;
}

// Images of x under g followed by f, with multiplicity.
inline std::vector<ProjPoint> oracle_two_step(const Correspondence& f, const Correspondence& g, std::complex<double> x) {
    std::vector<std::complex<double>> out;
    for (auto y : oracle_fiber(g, x))
        for (auto w : oracle_fiber(f, y)) out.push_back(w);
    return to_points(out);
}

}  // namespace corrdyn::testing
