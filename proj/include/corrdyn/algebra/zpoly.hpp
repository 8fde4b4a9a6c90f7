#pragma once

#include <gmpxx.h>

#include <optional>
#include <span>
#include <vector>

namespace corrdyn::algebra {

// Dense univariate polynomial over Z, lowest degree first. Trailing zero
// coefficients are never stored, so the zero polynomial is the empty vector.
class ZPoly {
public:
    ZPoly() = default;
    explicit ZPoly(std::vector<mpz_class> coeffs);
    static ZPoly constant(const mpz_class& c);
    static ZPoly monomial(const mpz_class& c, int degree);

    bool is_zero() const noexcept { return c_.empty(); }
    // -1 for the zero polynomial.
    int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
    const std::vector<mpz_class>& coeffs() const noexcept { return c_; }
    mpz_class coeff(int i) const;
    const mpz_class& leading() const { return c_.back(); }

    mpz_class eval(const mpz_class& x) const;
    ZPoly derivative() const;

    friend ZPoly operator+(const ZPoly& a, const ZPoly& b);
    friend ZPoly operator-(const ZPoly& a, const ZPoly& b);
    friend ZPoly operator*(const ZPoly& a, const ZPoly& b);
    friend ZPoly operator*(const mpz_class& s, const ZPoly& a);
    ZPoly operator-() const;
    friend bool operator==(const ZPoly& a, const ZPoly& b) { return a.c_ == b.c_; }

private:
    void trim();
    std::vector<mpz_class> c_;
};

mpz_class content(const ZPoly& p);
// Divides out the integer content and makes the leading coefficient positive.
ZPoly primitive_part(const ZPoly& p);
// Exact division in Z[x]; nullopt when b does not divide a over Z.
std::optional<ZPoly> exact_divide(const ZPoly& a, const ZPoly& b);
// lc(b)^(deg a - deg b + 1) * a mod b.
ZPoly pseudo_remainder(const ZPoly& a, const ZPoly& b);
// Primitive gcd over Z[x] with positive leading coefficient (content included).
ZPoly gcd(const ZPoly& a, const ZPoly& b);

// Squarefree decomposition of a primitive polynomial: pairs (factor, multiplicity)
// with pairwise coprime squarefree factors of positive degree.
std::vector<std::pair<ZPoly, int>> squarefree(const ZPoly& p);

// Fast modular certificate that gcd(a, b) = 1: true only when proven.
bool coprime_mod_p(const ZPoly& a, const ZPoly& b);

}  // namespace corrdyn::algebra
