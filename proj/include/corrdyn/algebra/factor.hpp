#pragma once

#include <optional>
#include <vector>

#include "corrdyn/algebra/bipoly.hpp"

namespace corrdyn::algebra {

struct Factor {
    BiPoly poly;  // primitive, squarefree, canonical sign
    int multiplicity = 1;
    friend bool operator==(const Factor&, const Factor&) = default;
};

// p = unit * prod(factor^multiplicity); unit carries the discarded content and sign.
struct SquarefreeDecomposition {
    mpz_class unit;
    std::vector<Factor> factors;
};

// Exact quotient a / b in Z[z, w], nullopt if b does not divide a over Z.
std::optional<BiPoly> exact_divide(const BiPoly& a, const BiPoly& b);

// True iff d divides p over the rationals. d must be nonzero.
bool divides(const BiPoly& d, const BiPoly& p);

// Gcd over Q[z, w] returned primitive with canonical sign.
BiPoly gcd(const BiPoly& a, const BiPoly& b);

// Squarefree factorization of the primitive part of p. The factors are
// pairwise coprime and squarefree but not necessarily irreducible; factors
// free of one variable (the content with respect to the other) are split off
// and included. Output order is
// deterministic (sorted by BiPoly order, then multiplicity).
SquarefreeDecomposition normalize(const BiPoly& p);

// Modular certificate: true only when p is proven squarefree as a polynomial in w.
bool squarefree_in_w_mod_p(const BiPoly& p);

}  // namespace corrdyn::algebra
