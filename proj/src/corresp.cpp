#include "corrdyn/corresp.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "corrdyn/algebra/factor.hpp"
#include "corrdyn/algebra/resultant.hpp"
#include "corrdyn/numeric/parallel.hpp"
#include "corrdyn/numeric/roots.hpp"

namespace corrdyn {

using algebra::Factor;

namespace {

bool is_constant(const BiPoly& p) { return p.deg_z() <= 0 && p.deg_w() <= 0; }

void sort_components(std::vector<Component>& cs) {
    std::sort(cs.begin(), cs.end(), [](const Component& a, const Component& b) { return a.equation < b.equation; });
}

// Splits (poly, multiplicity) pairs into a pairwise coprime family with the
// same product.
std::vector<std::pair<BiPoly, long>> coprime_refine(std::vector<std::pair<BiPoly, long>> items) {
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t a = 0; a < items.size() && !changed; ++a)
            for (std::size_t b = a + 1; b < items.size() && !changed; ++b) {
                auto& [p, mp] = items[a];
                auto& [q, mq] = items[b];
                if (p == q) {
                    mp += mq;
                    items.erase(items.begin() + static_cast<std::ptrdiff_t>(b));
                    changed = true;
                    break;
                }
                BiPoly g = algebra::gcd(p, q);
                if (is_constant(g)) continue;
                BiPoly p2 = algebra::primitive_part(*algebra::exact_divide(p, g));
                BiPoly q2 = algebra::primitive_part(*algebra::exact_divide(q, g));
                long m = mp + mq;
                std::vector<std::pair<BiPoly, long>> next;
                for (std::size_t k = 0; k < items.size(); ++k)
                    if (k != a && k != b) next.push_back(items[k]);
                if (!is_constant(p2)) next.emplace_back(p2, mp);
                if (!is_constant(q2)) next.emplace_back(q2, mq);
                next.emplace_back(g, m);
                items = std::move(next);
                changed = true;
            }
    }
    return items;
}

std::string missing_variable(const BiPoly& p) { return p.deg_w() <= 0 ? "w" : "z"; }

}  // namespace

Correspondence Correspondence::from_components(std::vector<Component> components, std::string label) {
    if (components.empty()) throw DomainError("invalid_chain", "a correspondence needs at least one component");
    for (auto& c : components) {
        if (c.multiplicity < 1) throw DomainError("invalid_chain", "component multiplicities must be positive");
        if (c.equation.deg_z() < 1 || c.equation.deg_w() < 1)
            throw DomainError("degenerate_component", "component " + algebra::to_string(c.equation) + " does not involve " +
                                                          missing_variable(c.equation) + "; both projections must be surjective");
        auto sf = algebra::normalize(c.equation);
        if (sf.factors.size() != 1 || sf.factors[0].multiplicity != 1)
            throw DomainError("invalid_chain", "component " + algebra::to_string(c.equation) + " is not squarefree");
        c.equation = algebra::primitive_part(c.equation);
    }
    for (std::size_t a = 0; a < components.size(); ++a)
        for (std::size_t b = a + 1; b < components.size(); ++b)
            if (!is_constant(algebra::gcd(components[a].equation, components[b].equation)))
                throw DomainError("invalid_chain", "components " + algebra::to_string(components[a].equation) + " and " +
                                                       algebra::to_string(components[b].equation) + " are not coprime");
    sort_components(components);
    Correspondence f;
    f.components_ = std::move(components);
    f.label_ = std::move(label);
    return f;
}

long Correspondence::lambda0() const noexcept {
    long s = 0;
    for (const auto& c : components_) s += static_cast<long>(c.multiplicity) * c.equation.deg_w();
    return s;
}

long Correspondence::lambda1() const noexcept {
    long s = 0;
    for (const auto& c : components_) s += static_cast<long>(c.multiplicity) * c.equation.deg_z();
    return s;
}

BiPoly Correspondence::chain_equation() const {
    BiPoly r = BiPoly::constant(1);
    for (const auto& c : components_) r = r * pow(c.equation, c.multiplicity);
    return r;
}

std::string Correspondence::to_string() const {
    std::string out;
    for (const auto& c : components_) {
        if (!out.empty()) out += " + ";
        std::string eq = algebra::to_string(c.equation);
        if (c.multiplicity == 1 && components_.size() == 1)
            out += eq;
        else if (c.multiplicity == 1)
            out += "(" + eq + ")";
        else
            out += std::to_string(c.multiplicity) + "\xC2\xB7(" + eq + ")";
    }
    return out;
}

Correspondence parse_correspondence(std::string_view text, std::string label) {
    auto parsed = algebra::parse_poly(text);
    if (parsed.poly.is_zero()) throw DomainError("parse_error", "correspondence equation is identically zero");
    auto sf = algebra::normalize(parsed.poly);
    if (sf.factors.empty()) throw DomainError("degenerate_component", "correspondence equation is a nonzero constant");
    std::vector<Component> comps;
    for (auto& f : sf.factors) {
        if (f.poly.deg_z() < 1 || f.poly.deg_w() < 1)
            throw DomainError("degenerate_component", "factor " + algebra::to_string(f.poly) + " does not involve " +
                                                          missing_variable(f.poly) + "; both projections must be surjective");
        comps.push_back({std::move(f.poly), f.multiplicity});
    }
    sort_components(comps);
    return Correspondence::from_components(std::move(comps), std::move(label));
}

Correspondence adjoint(const Correspondence& f) {
    std::vector<Component> comps;
    for (const auto& c : f.components()) comps.push_back({algebra::primitive_part(c.equation.swapped()), c.multiplicity});
    sort_components(comps);
    return Correspondence::from_components(std::move(comps), f.label().empty() ? std::string{} : "adjoint(" + f.label() + ")");
}

Composite compose(const Correspondence& f, const Correspondence& g) {
    struct PairResult {
        algebra::SquarefreeDecomposition sf;
        long weight = 1;
        int deficit_x = 0, deficit_z = 0;
    };
    const auto& fc = f.components();
    const auto& gc = g.components();
    std::vector<PairResult> results(fc.size() * gc.size());
    numeric::parallel_for(results.size(), [&](std::size_t k) {
        const Component& gi = gc[k / fc.size()];
        const Component& fj = fc[k % fc.size()];
        BiPoly r = algebra::resultant_middle(gi.equation, fj.equation);
        PairResult& out = results[k];
        out.weight = static_cast<long>(gi.multiplicity) * fj.multiplicity;
        // Affine degree deficits are factors x0^k / z0^k of the bihomogeneous
        // resultant: lines at infinity.
        out.deficit_x = gi.equation.deg_z() * fj.equation.deg_z() - r.deg_z();
        out.deficit_z = fj.equation.deg_w() * gi.equation.deg_w() - r.deg_w();
        out.sf = algebra::normalize(r);
    });

    DegreeReport report;
    std::vector<std::pair<BiPoly, long>> kept;
    for (const auto& pr : results) {
        if (pr.deficit_x > 0) report.dropped.push_back({"line z = infinity", "w", pr.weight * pr.deficit_x});
        if (pr.deficit_z > 0) report.dropped.push_back({"line w = infinity", "z", pr.weight * pr.deficit_z});
        for (const auto& fac : pr.sf.factors) {
            long m = pr.weight * fac.multiplicity;
            if (fac.poly.deg_z() < 1 || fac.poly.deg_w() < 1)
                report.dropped.push_back({algebra::to_string(fac.poly), missing_variable(fac.poly), m});
            else
                kept.emplace_back(fac.poly, m);
        }
    }
    if (kept.empty()) throw DomainError("totally_degenerate", "totally degenerate composition: every factor was dropped");
    kept = coprime_refine(std::move(kept));

    std::vector<Component> comps;
    for (auto& [p, m] : kept) comps.push_back({algebra::primitive_part(p), static_cast<int>(m)});
    sort_components(comps);
    std::string label;
    if (!f.label().empty() && !g.label().empty()) label = f.label() + " o " + g.label();
    Correspondence chain = Correspondence::from_components(std::move(comps), std::move(label));
    report.n = 1;
    report.lambda0 = chain.lambda0();
    report.lambda1 = chain.lambda1();
    report.d0_est = static_cast<double>(report.lambda0);
    report.d1_est = static_cast<double>(report.lambda1);
    return {std::move(chain), std::move(report)};
}

std::pair<long, long> lambda(const Correspondence& f) { return {f.lambda0(), f.lambda1()}; }

DegreeCapExceeded::DegreeCapExceeded(std::vector<Composite> partial, long cap)
    : DomainError("degree_cap_exceeded", "degree cap exceeded: lambda0 + lambda1 of iterate " +
                                             std::to_string(partial.size() + 1) + " may exceed " + std::to_string(cap)),
      partial_(std::move(partial)) {}

std::vector<Composite> iterate(const Correspondence& f, int n, long degree_cap) {
    if (n < 1) throw DomainError("invalid_argument", "iterate order must be positive");
    std::vector<Composite> out;
    DegreeReport first;
    first.n = 1;
    first.lambda0 = f.lambda0();
    first.lambda1 = f.lambda1();
    first.d0_est = static_cast<double>(first.lambda0);
    first.d1_est = static_cast<double>(first.lambda1);
    if (first.lambda0 + first.lambda1 > degree_cap) throw DegreeCapExceeded({}, degree_cap);
    out.push_back({f, first});
    for (int k = 2; k <= n; ++k) {
        const Correspondence& prev = out.back().chain;
        long bound = prev.lambda0() * f.lambda0() + prev.lambda1() * f.lambda1();
        if (bound > degree_cap) throw DegreeCapExceeded(std::move(out), degree_cap);
        Composite next = compose(f, prev);
        next.report.n = k;
        next.report.d0_est = std::pow(static_cast<double>(next.report.lambda0), 1.0 / k);
        next.report.d1_est = std::pow(static_cast<double>(next.report.lambda1), 1.0 / k);
        if (!f.label().empty()) next.chain.set_label(f.label() + "^" + std::to_string(k));
        out.push_back(std::move(next));
    }
    return out;
}

FixedPointCount fixed_point_poly(const Correspondence& f, int n, long degree_cap) {
    auto iterates = iterate(f, n, degree_cap);
    const Correspondence& fn = iterates.back().chain;
    FixedPointCount out;
    out.n = n;
    out.lefschetz = fn.lambda0() + fn.lambda1();
    const BiPoly diagonal = BiPoly::w() - BiPoly::z();
    out.diagonal_poly = fn.chain_equation().on_diagonal();
    out.diagonal_component = algebra::divides(diagonal, fn.chain_equation());
    if (out.diagonal_component) return out;

    for (const auto& c : fn.components()) {
        ZPoly d = c.equation.on_diagonal();
        const long total = c.equation.deg_z() + c.equation.deg_w();
        // Bihomogeneous restriction sum_k d_k t1^k t0^(total - k): its order at
        // t0 = 0 is total - deg d.
        out.at_infinity += static_cast<long>(c.multiplicity) * (total - d.degree());
        if (d.degree() > 0) {
            std::vector<cplx> coeffs;
            for (const auto& x : d.coeffs()) coeffs.emplace_back(x.get_d(), 0.0);
            auto roots = numeric::polynomial_roots(coeffs);
            long located = 0;
            for (const auto& r : roots)
                if (numeric::relative_residual(coeffs, r) <= 1e-8) ++located;
            out.affine_roots += static_cast<long>(c.multiplicity) * located;
        }
    }
    return out;
}

}  // namespace corrdyn
