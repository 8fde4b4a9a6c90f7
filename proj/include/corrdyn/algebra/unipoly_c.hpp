#pragma once

#include <complex>
#include <vector>

#include "corrdyn/algebra/bipoly.hpp"

namespace corrdyn::algebra {

using cplx = std::complex<double>;

// Univariate complex polynomial, lowest degree first. Coefficients below
// 1e-12 of the largest magnitude are trimmed from the top, so the leading
// coefficient is always significant. The zero polynomial has degree -1.
class UniPolyC {
public:
    UniPolyC() = default;
    explicit UniPolyC(std::vector<cplx> coeffs);

    int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
    const std::vector<cplx>& coeffs() const noexcept { return c_; }
    cplx operator()(cplx x) const;

private:
    std::vector<cplx> c_;
};

enum class Var { First, Second };

// Fixes `which` at `value`; the result is a polynomial in the other variable.
UniPolyC specialize(const BiPoly& p, Var which, cplx value);

}  // namespace corrdyn::algebra
