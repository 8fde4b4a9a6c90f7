#include "corrdyn/orbits.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <ostream>

#include "corrdyn/numeric/parallel.hpp"
#include "corrdyn/numeric/rng.hpp"
#include "corrdyn/numeric/roots.hpp"

namespace corrdyn {

namespace {

constexpr double kResidualTol = 1e-10;
constexpr double kSingularTol = 1e-12;
constexpr double kClusterTol = 1e-8;

struct RootKey {
    int chart;
    double arg;
    double mod;
    auto operator<=>(const RootKey&) const = default;
};

template <class T>
T ipow(T x, int e) {
    T r = 1;
    for (; e > 0; e >>= 1, x *= x)
        if (e & 1) r *= x;
    return r;
}

RootKey key_of(const ProjPoint& p) {
    cplx c = p.chart_coordinate();
    return {p.chart(), std::arg(c), std::abs(c)};
}

}  // namespace

FiberSolver::FiberSolver(const Correspondence& f) {
    for (const auto& comp : f.components()) {
        if (!comp.equation.fits_double()) throw DomainError("fiber_solve_failed", "coefficients too large for double evaluation");
        Comp c{comp.equation.deg_z(), comp.equation.deg_w(), comp.multiplicity, {}};
        c.c.resize(static_cast<std::size_t>(c.dz + 1) * static_cast<std::size_t>(c.dw + 1));
        for (int i = 0; i <= c.dz; ++i)
            for (int j = 0; j <= c.dw; ++j) c.c[static_cast<std::size_t>(i * (c.dw + 1) + j)] = comp.equation.coeff(i, j).get_d();
        comps_.push_back(std::move(c));
    }
    lambda0_ = f.lambda0();
}

std::vector<BranchImage> FiberSolver::images(const ProjPoint& x) const {
    std::vector<BranchImage> out;
    out.reserve(static_cast<std::size_t>(lambda0_));
    const int zchart = x.chart();
    const cplx zt = x.chart_coordinate();
    const double azt = std::abs(zt);

    for (std::size_t k = 0; k < comps_.size(); ++k) {
        const Comp& c = comps_[k];
        auto ci = [&](int i, int j) { return c.c[static_cast<std::size_t>(i * (c.dw + 1) + j)]; };
        // Powers of the source chart coordinate, indexed by the original z-exponent.
        std::vector<cplx> zp(static_cast<std::size_t>(c.dz + 1));
        std::vector<double> zabs(static_cast<std::size_t>(c.dz + 1));
        for (int i = 0; i <= c.dz; ++i) {
            int e = zchart == 0 ? i : c.dz - i;
            zp[static_cast<std::size_t>(i)] = ipow(zt, e);
            zabs[static_cast<std::size_t>(i)] = ipow(azt, e);
        }
        std::vector<cplx> form(static_cast<std::size_t>(c.dw + 1));
        for (int j = 0; j <= c.dw; ++j) {
            cplx acc = 0;
            for (int i = 0; i <= c.dz; ++i) acc += ci(i, j) * zp[static_cast<std::size_t>(i)];
            form[static_cast<std::size_t>(j)] = acc;
        }
        // Backward-error scale: componentwise in the source coordinate, normwise
        // in the target one (|target coordinate| <= 1 in its chart).
        double scale = 0;
        for (int i = 0; i <= c.dz; ++i)
            for (int j = 0; j <= c.dw; ++j) scale += std::abs(ci(i, j)) * zabs[static_cast<std::size_t>(i)];
        std::vector<ProjPoint> roots = numeric::binary_form_roots(form);
        std::sort(roots.begin(), roots.end(), [](const ProjPoint& a, const ProjPoint& b) { return key_of(a) < key_of(b); });

        std::vector<BranchImage> local;
        for (const ProjPoint& y : roots) {
            const int wchart = y.chart();
            const cplx wt = y.chart_coordinate();
            const double awt = std::abs(wt);
            cplx val = 0, dz = 0, dw = 0;
            for (int i = 0; i <= c.dz; ++i) {
                const int ei = zchart == 0 ? i : c.dz - i;
                for (int j = 0; j <= c.dw; ++j) {
                    const double coef = ci(i, j);
                    if (coef == 0) continue;
                    const int ej = wchart == 0 ? j : c.dw - j;
                    const cplx wpow = ipow(wt, ej);
                    const cplx term = coef * zp[static_cast<std::size_t>(i)] * wpow;
                    val += term;
                    if (ei > 0) dz += coef * static_cast<double>(ei) * ipow(zt, ei - 1) * wpow;
                    if (ej > 0) dw += coef * static_cast<double>(ej) * zp[static_cast<std::size_t>(i)] * ipow(wt, ej - 1);
                }
            }
            if (!(std::abs(val) <= kResidualTol * scale))
                throw DomainError("fiber_solve_failed", "fiber root residual " + std::to_string(std::abs(val) / scale) +
                                                            " exceeds tolerance (condition ~ " +
                                                            std::to_string(scale / std::max(std::abs(dw), 1e-300)) + ")");
            BranchImage img;
            img.point = y;
            img.index = {static_cast<int>(k), 1};
            img.simple_in_w = std::abs(dw) > kSingularTol * scale;
            img.simple_in_z = std::abs(dz) > kSingularTol * scale;
            img.deriv_sph = img.simple_in_w ? std::abs(dz / dw) * (1 + azt * azt) / (1 + awt * awt)
                                            : std::numeric_limits<double>::infinity();
            local.push_back(img);
        }
        for (std::size_t a = 0; a < local.size(); ++a)
            for (std::size_t b = a + 1; b < local.size(); ++b)
                if (chordal(local[a].point, local[b].point) <= kClusterTol) {
                    local[a].simple_in_w = local[b].simple_in_w = false;
                    local[a].deriv_sph = local[b].deriv_sph = std::numeric_limits<double>::infinity();
                }
        for (const auto& img : local)
            for (int copy = 1; copy <= c.multiplicity; ++copy) {
                BranchImage b = img;
                b.index.copy = copy;
                out.push_back(b);
            }
    }
    return out;
}

std::vector<BranchImage> forward_images(const Correspondence& f, const ProjPoint& x) { return FiberSolver(f).images(x); }

namespace {

struct Traced {
    Orbit orbit;
    bool singular = false;
};

struct Tracer {
    const FiberSolver& solver;
    int n;

    // Follows the given image choices, recording whether any step is not regular.
    Traced trace(const ProjPoint& start, const std::vector<std::size_t>& choices) const {
        Traced t;
        Orbit& o = t.orbit;
        o.points.reserve(static_cast<std::size_t>(n) + 1);
        o.points.push_back(start);
        for (int s = 0; s < n; ++s) {
            auto imgs = solver.images(o.points.back());
            const BranchImage& b = imgs[choices[static_cast<std::size_t>(s)] % imgs.size()];
            t.singular |= !b.regular();
            o.points.push_back(b.point);
            o.indices.push_back(b.index);
            o.derivs.push_back(b.deriv_sph);
        }
        return t;
    }

    // Continues `guide` from a nearby start: each step takes the image of the
    // same branch index closest to the guide's point, so the perturbed orbit
    // stays on the branch pattern of the original.
    Traced follow(const ProjPoint& start, const Orbit& guide) const {
        Traced t;
        Orbit& o = t.orbit;
        o.points.push_back(start);
        for (int s = 0; s < n; ++s) {
            auto imgs = solver.images(o.points.back());
            const BranchImage* best = nullptr;
            double best_d = 2;
            for (const auto& b : imgs) {
                if (b.index != guide.indices[static_cast<std::size_t>(s)]) continue;
                double d = chordal(b.point, guide.points[static_cast<std::size_t>(s) + 1]);
                if (d < best_d) {
                    best_d = d;
                    best = &b;
                }
            }
            t.singular |= !best->regular();
            o.points.push_back(best->point);
            o.indices.push_back(best->index);
            o.derivs.push_back(best->deriv_sph);
        }
        return t;
    }
};

struct StartResult {
    std::vector<Orbit> orbits;
    bool enumerated = false;
    long perturbed = 0;
    long dropped = 0;
};

}  // namespace

std::vector<Orbit> sample_orbits(const Correspondence& f, const std::vector<ProjPoint>& starts, int n, long budget,
                                 std::uint64_t seed, SampleDiagnostics* diagnostics) {
    if (n < 1) throw DomainError("invalid_argument", "orbit depth must be positive");
    if (budget < 1) throw DomainError("invalid_argument", "orbit budget must be positive");
    const FiberSolver solver(f);
    const Tracer tracer{solver, n};
    const long per_start = std::max<long>(1, budget / std::max<long>(1, static_cast<long>(starts.size())));
    const double total_paths = std::pow(static_cast<double>(solver.lambda0()), n);
    const bool enumerate = total_paths <= static_cast<double>(per_start);

    std::vector<StartResult> results(starts.size());
    numeric::parallel_for(starts.size(), [&](std::size_t si) {
        StartResult& res = results[si];
        res.enumerated = enumerate;
        const ProjPoint& start = starts[si];

        auto finish = [&](long id, Traced t) {
            if (t.singular) {
                auto jr = numeric::stream(seed, si, static_cast<std::uint64_t>(id) + 1);
                ProjPoint moved = offset(start, kJitter, 2 * std::numbers::pi * numeric::uniform01(jr));
                t = tracer.follow(moved, t.orbit);
                if (t.singular) {
                    ++res.dropped;
                    return;
                }
                ++res.perturbed;
                t.orbit.regular = false;
            }
            t.orbit.start_id = static_cast<int>(si);
            t.orbit.orbit_id = id;
            t.orbit.weight = enumerate ? 1.0 : total_paths;
            res.orbits.push_back(std::move(t.orbit));
        };

        if (enumerate) {
            // Depth-first enumeration in lexicographic order of image choices.
            const auto lam = static_cast<std::size_t>(solver.lambda0());
            std::vector<std::vector<BranchImage>> level(static_cast<std::size_t>(n));
            std::vector<std::size_t> choice(static_cast<std::size_t>(n), 0);
            Traced cur;
            cur.orbit.points.push_back(start);
            std::vector<char> bad(static_cast<std::size_t>(n), 0);
            long id = 0;
            std::size_t depth = 0;
            level[0] = solver.images(start);
            for (;;) {
                if (depth == static_cast<std::size_t>(n)) {
                    cur.singular = std::find(bad.begin(), bad.end(), 1) != bad.end();
                    finish(id++, cur);
                    do {
                        if (depth == 0) return;
                        --depth;
                        cur.orbit.points.pop_back();
                        cur.orbit.indices.pop_back();
                        cur.orbit.derivs.pop_back();
                    } while (++choice[depth] >= lam && (choice[depth] = 0, true));
                    continue;
                }
                const BranchImage& b = level[depth][choice[depth]];
                bad[depth] = !b.regular();
                cur.orbit.points.push_back(b.point);
                cur.orbit.indices.push_back(b.index);
                cur.orbit.derivs.push_back(b.deriv_sph);
                ++depth;
                if (depth < static_cast<std::size_t>(n)) level[depth] = solver.images(b.point);
            }
        } else {
            auto rng = numeric::stream(seed, si);
            std::vector<std::size_t> choices(static_cast<std::size_t>(n));
            for (long d = 0; d < per_start; ++d) {
                for (auto& c : choices) c = numeric::uniform_index(rng, static_cast<std::size_t>(solver.lambda0()));
                finish(d, tracer.trace(start, choices));
            }
        }
    });

    std::vector<Orbit> out;
    SampleDiagnostics diag;
    for (auto& r : results) {
        (r.enumerated ? diag.enumerated_starts : diag.sampled_starts) += 1;
        diag.perturbed += r.perturbed;
        diag.dropped += r.dropped;
        for (auto& o : r.orbits) out.push_back(std::move(o));
    }
    if (diagnostics) *diagnostics = diag;
    return out;
}

void write_orbits_csv(std::ostream& os, const std::vector<Orbit>& orbits) {
    os << "start_id,orbit_id,step,re,im,chart,component,copy,deriv_sph,regular\n";
    os.precision(17);
    for (const auto& o : orbits)
        for (std::size_t s = 0; s < o.points.size(); ++s) {
            const ProjPoint& p = o.points[s];
            cplx c = p.chart_coordinate();
            os << o.start_id << ',' << o.orbit_id << ',' << s << ',' << c.real() << ',' << c.imag() << ',' << p.chart() << ',';
            if (s == 0)
                os << ",,";
            else
                os << o.indices[s - 1].component << ',' << o.indices[s - 1].copy << ',' << o.derivs[s - 1];
            os << ',' << (o.regular ? 1 : 0) << '\n';
        }
}

}  // namespace corrdyn
