#pragma once

#include <complex>
#include <span>
#include <vector>

#include "corrdyn/projpoint.hpp"

namespace corrdyn::numeric {

// All roots of sum c[k] x^k (c.back() != 0) by Aberth-Ehrlich simultaneous
// iteration with a final Newton polish. Degrees 1 and 2 use closed forms.
// Throws DomainError("fiber_solve_failed") if the iteration stalls with a
// large residual.
std::vector<cplx> polynomial_roots(std::span<const cplx> c);

// Roots on P^1 of the binary form sum c[j] u^j v^(d-j), d = c.size() - 1,
// counted with multiplicity (exactly d of them, infinity included). The
// iteration runs in whichever chart keeps the extreme coefficient largest
// and roots are polished in the chart where their coordinate is <= 1.
std::vector<ProjPoint> binary_form_roots(std::span<const cplx> c);

// |p(x)| / sum |c_k| |x|^k.
double relative_residual(std::span<const cplx> c, cplx x);

}  // namespace corrdyn::numeric
