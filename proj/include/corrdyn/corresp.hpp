#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "corrdyn/algebra/bipoly.hpp"
#include "corrdyn/algebra/text.hpp"
#include "corrdyn/algebra/zpoly.hpp"
#include "corrdyn/error.hpp"

namespace corrdyn {

using algebra::BiPoly;
using algebra::ZPoly;

// One component of a holomorphic chain: an equation in (z, w) with z the
// source and w the target coordinate of P^1 x P^1.
struct Component {
    BiPoly equation;  // primitive, squarefree, canonical sign
    int multiplicity = 1;
    friend bool operator==(const Component&, const Component&) = default;
};

// A correspondence on P^1 given by its graph chain sum m_j [P_j = 0].
//
// Invariants: every component involves both variables (both projections are
// surjective), components are squarefree and pairwise coprime, sorted in the
// canonical polynomial order. On P^1 there are no indeterminacy points: both
// indeterminacy sets are empty, so every fiber is finite.
class Correspondence {
public:
    // Validates the invariants; throws DomainError("degenerate_component") or
    // DomainError("invalid_chain").
    static Correspondence from_components(std::vector<Component> components, std::string label = {});

    const std::vector<Component>& components() const noexcept { return components_; }
    const std::string& label() const noexcept { return label_; }
    void set_label(std::string label) { label_ = std::move(label); }

    // Multiplicity-weighted w-degree: the number of images of a generic point.
    long lambda0() const noexcept;
    // Multiplicity-weighted z-degree: the number of preimages of a generic point.
    long lambda1() const noexcept;

    // prod P_j^(m_j)
    BiPoly chain_equation() const;
    // e.g. "2*(w^2 - z^2 - 2)" or "w - z^2"
    std::string to_string() const;

    friend bool operator==(const Correspondence& a, const Correspondence& b) { return a.components_ == b.components_; }

private:
    std::vector<Component> components_;
    std::string label_;
};

struct DroppedFactor {
    std::string factor;            // printed polynomial or "line at infinity"
    std::string missing_variable;  // "z" or "w"
    long multiplicity = 1;
};

struct DegreeReport {
    int n = 1;
    long lambda0 = 0;
    long lambda1 = 0;
    double d0_est = 0;
    double d1_est = 0;
    std::vector<DroppedFactor> dropped;
};

struct Composite {
    Correspondence chain;
    DegreeReport report;
};

// Normalizes a chain equation into a correspondence; rejects any factor that
// fails to involve both variables, naming it in the error message.
Correspondence parse_correspondence(std::string_view text, std::string label = {});

Correspondence adjoint(const Correspondence& f);

// Graph of f o g: g acts first. Degenerate factors of the eliminated chain
// (free of z or of w, including lines at infinity) are removed and listed in
// the report. Throws DomainError("totally_degenerate") if nothing survives.
Composite compose(const Correspondence& f, const Correspondence& g);

std::pair<long, long> lambda(const Correspondence& f);

inline constexpr long kDefaultDegreeCap = 512;

// Thrown when lambda0 + lambda1 of the next iterate could exceed the cap.
class DegreeCapExceeded : public DomainError {
public:
    DegreeCapExceeded(std::vector<Composite> partial, long cap);
    const std::vector<Composite>& partial() const noexcept { return partial_; }

private:
    std::vector<Composite> partial_;
};

// Iterates f^1 .. f^n with f^k = f o f^(k-1).
std::vector<Composite> iterate(const Correspondence& f, int n, long degree_cap = kDefaultDegreeCap);

struct FixedPointCount {
    int n = 1;
    ZPoly diagonal_poly;     // chain equation of f^n with w := z
    long lefschetz = 0;      // lambda0(f^n) + lambda1(f^n)
    bool diagonal_component = false;
    long affine_roots = 0;   // numerically located roots of the diagonal restriction, with multiplicity
    long at_infinity = 0;    // order of vanishing of the bihomogeneous restriction at infinity
    long projective_count() const { return affine_roots + at_infinity; }
};

FixedPointCount fixed_point_poly(const Correspondence& f, int n, long degree_cap = kDefaultDegreeCap);

}  // namespace corrdyn
