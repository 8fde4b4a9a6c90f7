#include "corrdyn/entropy.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <numbers>
#include <ostream>
#include <sstream>
#include <unordered_map>

#include "corrdyn/numeric/parallel.hpp"
#include "corrdyn/numeric/rng.hpp"

namespace corrdyn {

std::string StartDesign::describe() const {
    std::ostringstream os;
    switch (kind) {
        case Kind::Spherical: os << "spherical(count=" << count << ")"; break;
        case Kind::Band: os << "unit_circle_band(count=" << count << ",band=" << band << ")"; break;
        case Kind::List: os << "list(count=" << points.size() << ")"; break;
    }
    return os.str();
}

std::vector<ProjPoint> draw_starts(const StartDesign& design, std::uint64_t seed) {
    if (design.kind == StartDesign::Kind::List) {
        if (design.points.empty()) throw DomainError("invalid_argument", "start list is empty");
        return design.points;
    }
    if (design.count < 1) throw DomainError("invalid_argument", "start count must be positive");
    double tmax = 1;
    if (design.kind == StartDesign::Kind::Band) {
        if (!(design.band > 0 && design.band <= 1)) throw DomainError("invalid_argument", "band width must lie in (0, 1]");
        // Chordal distance to the unit circle is at most band iff |height| <= tmax.
        const double c = std::max(0.0, 1 - 2 * design.band * design.band);
        tmax = std::sqrt(1 - c * c);
    }
    // Area measure on the sphere is uniform in height (Archimedes).
    auto rng = numeric::stream(seed, 0x5157);
    std::vector<ProjPoint> out;
    out.reserve(static_cast<std::size_t>(design.count));
    for (long k = 0; k < design.count; ++k) {
        double t = tmax * (2 * numeric::uniform01(rng) - 1);
        double phi = 2 * std::numbers::pi * numeric::uniform01(rng);
        out.push_back(ProjPoint::from_sphere(t, phi));
    }
    return out;
}

namespace {

bool separated(const Orbit& a, const Orbit& b, double eps) {
    for (std::size_t s = 0; s < a.points.size(); ++s)
        if (chordal(a.points[s], b.points[s]) > eps) return true;
    return false;
}

using Cell = std::array<long, 3>;

struct CellHash {
    std::size_t operator()(const Cell& c) const noexcept {
        std::uint64_t h = 0;
        for (long v : c) h = numeric::mix64(h ^ static_cast<std::uint64_t>(v));
        return static_cast<std::size_t>(h);
    }
};

}  // namespace

long separated_count(const std::vector<Orbit>& orbits, double epsilon) {
    if (!(epsilon > 0 && epsilon <= 1)) throw DomainError("invalid_argument", "epsilon must lie in (0, 1]");
    if (orbits.empty()) return 0;
    const std::size_t len = orbits.front().length();
    for (const auto& o : orbits)
        if (o.length() != len || o.points.size() != len + 1)
            throw DomainError("invalid_argument", "separated_count needs orbits of a common length");

    std::vector<std::size_t> order(orbits.size());
    for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
        return std::pair(orbits[x].start_id, orbits[x].orbit_id) < std::pair(orbits[y].start_id, orbits[y].orbit_id);
    });

    // Admitted orbits bucketed by index sequence, then by the sphere cell of
    // x_0. Chordal distance eps is Euclidean distance 2 eps on the sphere, so
    // a conflicting orbit lies in one of the 27 neighboring cells.
    const double h = 2 * epsilon;
    auto cell_of = [&](const ProjPoint& p) {
        auto s = p.sphere();
        return Cell{static_cast<long>(std::floor(s[0] / h)), static_cast<long>(std::floor(s[1] / h)),
                    static_cast<long>(std::floor(s[2] / h))};
    };
    std::map<std::vector<BranchIndex>, std::unordered_map<Cell, std::vector<std::size_t>, CellHash>> admitted;
    long count = 0;
    for (std::size_t k : order) {
        const Orbit& cand = orbits[k];
        auto& grid = admitted[cand.indices];
        const Cell c = cell_of(cand.points.front());
        bool ok = true;
        for (long dx = -1; dx <= 1 && ok; ++dx)
            for (long dy = -1; dy <= 1 && ok; ++dy)
                for (long dz = -1; dz <= 1 && ok; ++dz) {
                    auto it = grid.find(Cell{c[0] + dx, c[1] + dy, c[2] + dz});
                    if (it == grid.end()) continue;
                    for (std::size_t other : it->second)
                        if (!separated(orbits[other], cand, epsilon)) {
                            ok = false;
                            break;
                        }
                }
        if (ok) {
            grid[c].push_back(k);
            ++count;
        }
    }
    return count;
}

namespace {

void validate_grids(const std::vector<int>& n_list, const std::vector<double>& eps_list, long budget) {
    if (n_list.empty() || eps_list.empty()) throw DomainError("invalid_argument", "n and epsilon grids must be non-empty");
    for (int n : n_list)
        if (n < 1) throw DomainError("invalid_argument", "orbit lengths must be positive");
    for (double e : eps_list)
        if (!(e > 0 && e <= 1)) throw DomainError("invalid_argument", "epsilon values must lie in (0, 1]");
    if (budget < 1) throw DomainError("invalid_argument", "budget must be positive");
}

// Degree estimates from the deepest iterate within the cap.
std::pair<double, double> degree_estimates(const Correspondence& f, int depth, long cap) {
    std::vector<Composite> its;
    try {
        its = iterate(f, std::max(1, depth), cap);
    } catch (const DegreeCapExceeded& e) {
        its = e.partial();
    }
    if (its.empty()) return {static_cast<double>(f.lambda0()), static_cast<double>(f.lambda1())};
    const auto& r = its.back().report;
    const double n = r.n;
    return {std::pow(static_cast<double>(r.lambda0), 1 / n), std::pow(static_cast<double>(r.lambda1), 1 / n)};
}

EntropyTable run_table(const Correspondence& f, const std::vector<ProjPoint>& starts, std::string design,
                       const std::vector<int>& n_list, const std::vector<double>& eps_list, long budget, std::uint64_t seed) {
    EntropyTable t;
    t.seed = seed;
    t.budget = budget;
    t.design = std::move(design);
    t.n_max = *std::max_element(n_list.begin(), n_list.end());
    t.eps_grid = eps_list;

    std::vector<int> ns = n_list;
    std::sort(ns.begin(), ns.end());
    ns.erase(std::unique(ns.begin(), ns.end()), ns.end());
    std::vector<double> es = eps_list;
    std::sort(es.begin(), es.end());
    es.erase(std::unique(es.begin(), es.end()), es.end());

    for (int n : ns) {
        SampleDiagnostics d;
        auto orbits = sample_orbits(f, starts, n, budget, numeric::mix64(seed + static_cast<std::uint64_t>(n)), &d);
        t.diagnostics.enumerated_starts += d.enumerated_starts;
        t.diagnostics.sampled_starts += d.sampled_starts;
        t.diagnostics.perturbed += d.perturbed;
        t.diagnostics.dropped += d.dropped;
        std::vector<EntropyRow> rows(es.size());
        numeric::parallel_for(es.size(), [&](std::size_t k) {
            EntropyRow& r = rows[k];
            r.n = n;
            r.epsilon = es[k];
            r.orbits = static_cast<long>(orbits.size());
            r.separated_count = std::max(1L, separated_count(orbits, es[k]));
            r.rate = std::log(static_cast<double>(r.separated_count)) / n;
        });
        for (auto& r : rows) t.rows.push_back(r);
    }
    t.headline_rate = -1;
    for (const auto& r : t.rows)
        if (r.n == t.n_max) t.headline_rate = std::max(t.headline_rate, r.rate);
    return t;
}

}  // namespace

EntropyTable estimate_entropy(const Correspondence& f, const StartDesign& design, const std::vector<int>& n_list,
                              const std::vector<double>& eps_list, long budget, std::uint64_t seed,
                              const EntropyOptions& options) {
    validate_grids(n_list, eps_list, budget);
    auto starts = draw_starts(design, seed);
    if (budget < static_cast<long>(starts.size())) throw DomainError("invalid_argument", "budget must be at least the number of starts");
    EntropyTable t = run_table(f, starts, design.describe(), n_list, eps_list, budget, seed);
    auto [d0, d1] = degree_estimates(f, options.bound_depth, options.degree_cap);
    t.bound = std::log(std::max(d0, d1));
    t.bound_kind = "lov";
    return t;
}

EntropyTable estimate_entropy_from(const Correspondence& f, const std::vector<ProjPoint>& Y, const std::vector<int>& n_list,
                                   const std::vector<double>& eps_list, long budget, std::uint64_t seed,
                                   const EntropyOptions& options) {
    if (Y.empty()) throw DomainError("invalid_argument", "starting set is empty");
    validate_grids(n_list, eps_list, budget);
    EntropyTable t = run_table(f, Y, StartDesign::list(Y).describe(), n_list, eps_list, budget, seed);
    t.bound = std::log(degree_estimates(f, options.bound_depth, options.degree_cap).first);
    t.bound_kind = "lov_from";
    return t;
}

void write_entropy_csv(std::ostream& os, const EntropyTable& table) {
    os << "n,epsilon,separated_count,rate,orbits\n";
    os.precision(17);
    for (const auto& r : table.rows)
        os << r.n << ',' << r.epsilon << ',' << r.separated_count << ',' << r.rate << ',' << r.orbits << '\n';
}

LovReport lov_report(const Correspondence& f, int n_max, long degree_cap) {
    if (n_max < 1) throw DomainError("invalid_argument", "n_max must be positive");
    auto its = iterate(f, n_max, degree_cap);
    LovReport rep;
    rep.n_max = n_max;
    for (const auto& c : its) {
        LovRow r;
        r.n = c.report.n;
        r.lambda0 = c.report.lambda0;
        r.lambda1 = c.report.lambda1;
        r.mass_lower = std::max(r.lambda0, r.lambda1);
        r.mass_upper = 2 * r.mass_lower;
        rep.rows.push_back(r);
    }
    const auto& last = rep.rows.back();
    rep.d0_est = std::pow(static_cast<double>(last.lambda0), 1.0 / n_max);
    rep.d1_est = std::pow(static_cast<double>(last.lambda1), 1.0 / n_max);
    rep.lov_value = std::log(std::max(rep.d0_est, rep.d1_est));
    return rep;
}

}  // namespace corrdyn
