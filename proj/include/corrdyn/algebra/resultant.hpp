#pragma once

#include <span>
#include <vector>

#include "corrdyn/algebra/bipoly.hpp"
#include "corrdyn/algebra/zpoly.hpp"

namespace corrdyn::algebra {

// Determinant of the Sylvester matrix of p and q taken with formal degrees
// m and n (leading coefficients may vanish). Computed by fraction-free
// Bareiss elimination, so the result is exact.
mpz_class sylvester_resultant(const ZPoly& p, int m, const ZPoly& q, int n);

// Unique polynomial of degree < nodes.size() through the given integer
// samples; throws if the interpolant does not have integer coefficients.
ZPoly interpolate(std::span<const mpz_class> nodes, std::span<const mpz_class> values);

// Res_y(p(x, y), q(y, z)) as a polynomial in (x, z).
//
// p's second variable and q's first variable are eliminated; the result's
// first variable is p's first and its second is q's second. Evaluation at
// integer nodes followed by exact interpolation.
// Throws DomainError("malformed_component") if either input is free of y.
BiPoly resultant_middle(const BiPoly& p, const BiPoly& q);

// Res_w(p, dp/dw) as a polynomial in z.
ZPoly discriminant_w(const BiPoly& p);

}  // namespace corrdyn::algebra
