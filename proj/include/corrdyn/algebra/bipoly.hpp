#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

#include "corrdyn/algebra/zpoly.hpp"

namespace corrdyn::algebra {

// Exact bivariate integer polynomial sum c[i][j] * z^i * w^j, stored densely.
//
// The first variable (z) and second variable (w) are positional; display names
// are supplied when printing, so the same type carries (x, y), (y, z) and
// (x, z) polynomials during elimination. The matrix is always trimmed to the
// true bidegree and the zero polynomial is the empty matrix.
class BiPoly {
public:
    BiPoly() = default;
    // rows[i][j] is the coefficient of z^i w^j; ragged rows are allowed.
    explicit BiPoly(const std::vector<std::vector<mpz_class>>& rows);

    static BiPoly constant(const mpz_class& c);
    static BiPoly z();
    static BiPoly w();
    static BiPoly monomial(const mpz_class& c, int i, int j);

    bool is_zero() const noexcept { return data_.empty(); }
    // Both degrees are -1 for the zero polynomial.
    int deg_z() const noexcept { return dz_; }
    int deg_w() const noexcept { return dw_; }
    const mpz_class& coeff(int i, int j) const;
    // True when every coefficient fits in a double without overflow.
    bool fits_double() const;

    // Leading coefficient in the canonical order: highest w-power first, then
    // highest z-power within it.
    const mpz_class& leading() const;

    BiPoly swapped() const;  // exchanges z and w
    BiPoly d_dz() const;
    BiPoly d_dw() const;

    // Coefficients of powers of w, each a polynomial in z (index j = w^j).
    std::vector<ZPoly> in_w() const;
    static BiPoly from_w(const std::vector<ZPoly>& coeffs_in_w);
    // Coefficients of powers of z, each a polynomial in w.
    std::vector<ZPoly> in_z() const;
    static BiPoly from_z(const std::vector<ZPoly>& coeffs_in_z);

    ZPoly at_z(const mpz_class& z0) const;  // polynomial in w
    ZPoly at_w(const mpz_class& w0) const;  // polynomial in z
    // Substitutes w := z.
    ZPoly on_diagonal() const;

    friend BiPoly operator+(const BiPoly& a, const BiPoly& b);
    friend BiPoly operator-(const BiPoly& a, const BiPoly& b);
    friend BiPoly operator*(const BiPoly& a, const BiPoly& b);
    friend BiPoly operator*(const mpz_class& s, const BiPoly& a);
    BiPoly operator-() const;
    friend bool operator==(const BiPoly& a, const BiPoly& b) {
        return a.dz_ == b.dz_ && a.dw_ == b.dw_ && a.data_ == b.data_;
    }
    // Deterministic total order: by (deg_w, deg_z), then coefficients.
    friend bool operator<(const BiPoly& a, const BiPoly& b);

private:
    BiPoly(int dz, int dw, std::vector<mpz_class> data);
    void trim();
    std::size_t idx(int i, int j) const { return static_cast<std::size_t>(i) * static_cast<std::size_t>(dw_ + 1) + static_cast<std::size_t>(j); }

    int dz_ = -1;
    int dw_ = -1;
    std::vector<mpz_class> data_;
};

BiPoly pow(const BiPoly& p, int e);
mpz_class content(const BiPoly& p);
// Integer content removed and canonical sign applied (leading coefficient > 0).
BiPoly primitive_part(const BiPoly& p);

}  // namespace corrdyn::algebra
