#include "corrdyn/algebra/zpoly.hpp"

#include "corrdyn/algebra/modp.hpp"

#include <algorithm>
#include <stdexcept>

namespace corrdyn::algebra {

ZPoly::ZPoly(std::vector<mpz_class> coeffs) : c_(std::move(coeffs)) { trim(); }

ZPoly ZPoly::constant(const mpz_class& c) { return ZPoly({c}); }

ZPoly ZPoly::monomial(const mpz_class& c, int degree) {
    std::vector<mpz_class> v(static_cast<std::size_t>(degree) + 1);
    v.back() = c;
    return ZPoly(std::move(v));
}

void ZPoly::trim() {
    while (!c_.empty() && sgn(c_.back()) == 0) c_.pop_back();
}

mpz_class ZPoly::coeff(int i) const {
    if (i < 0 || i >= static_cast<int>(c_.size())) return 0;
    return c_[static_cast<std::size_t>(i)];
}

mpz_class ZPoly::eval(const mpz_class& x) const {
    mpz_class acc = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
}

ZPoly ZPoly::derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<mpz_class> d(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * static_cast<unsigned long>(i);
    return ZPoly(std::move(d));
}

ZPoly operator+(const ZPoly& a, const ZPoly& b) {
    std::vector<mpz_class> r(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t i = 0; i < a.c_.size(); ++i) r[i] += a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) r[i] += b.c_[i];
    return ZPoly(std::move(r));
}

ZPoly ZPoly::operator-() const {
    ZPoly r = *this;
    for (auto& x : r.c_) x = -x;
    return r;
}

ZPoly operator-(const ZPoly& a, const ZPoly& b) { return a + (-b); }

ZPoly operator*(const ZPoly& a, const ZPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<mpz_class> r(a.c_.size() + b.c_.size() - 1);
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
        if (sgn(a.c_[i]) == 0) continue;
        for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
    }
    return ZPoly(std::move(r));
}

ZPoly operator*(const mpz_class& s, const ZPoly& a) {
    std::vector<mpz_class> r = a.c_;
    for (auto& x : r) x *= s;
    return ZPoly(std::move(r));
}

mpz_class content(const ZPoly& p) {
    mpz_class g = 0;
    for (const auto& x : p.coeffs()) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
        if (g == 1) break;
    }
    return g;
}

ZPoly primitive_part(const ZPoly& p) {
    if (p.is_zero()) return {};
    mpz_class g = content(p);
    if (sgn(p.leading()) < 0) g = -g;
    std::vector<mpz_class> r = p.coeffs();
    for (auto& x : r) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
    return ZPoly(std::move(r));
}

std::optional<ZPoly> exact_divide(const ZPoly& a, const ZPoly& b) {
    if (b.is_zero()) throw std::invalid_argument("exact_divide: division by zero polynomial");
    if (a.is_zero()) return ZPoly{};
    if (a.degree() < b.degree()) return std::nullopt;
    std::vector<mpz_class> rem = a.coeffs();
    const int db = b.degree();
    std::vector<mpz_class> q(static_cast<std::size_t>(a.degree() - db) + 1);
    const mpz_class& lb = b.leading();
    for (int k = a.degree() - db; k >= 0; --k) {
        mpz_class& top = rem[static_cast<std::size_t>(k + db)];
        if (sgn(top) == 0) continue;
        if (!mpz_divisible_p(top.get_mpz_t(), lb.get_mpz_t())) return std::nullopt;
        mpz_class t;
        mpz_divexact(t.get_mpz_t(), top.get_mpz_t(), lb.get_mpz_t());
        for (int i = 0; i <= db; ++i) rem[static_cast<std::size_t>(k + i)] -= t * b.coeffs()[static_cast<std::size_t>(i)];
        q[static_cast<std::size_t>(k)] = t;
    }
    for (const auto& x : rem)
        if (sgn(x) != 0) return std::nullopt;
    return ZPoly(std::move(q));
}

ZPoly pseudo_remainder(const ZPoly& a, const ZPoly& b) {
    if (b.is_zero()) throw std::invalid_argument("pseudo_remainder: zero divisor");
    std::vector<mpz_class> r = a.coeffs();
    const int db = b.degree();
    const mpz_class& lb = b.leading();
    int dr = a.degree();
    int steps = dr - db + 1;
    while (dr >= db && dr >= 0) {
        mpz_class t = r[static_cast<std::size_t>(dr)];
        for (auto& x : r) x *= lb;
        for (int i = 0; i <= db; ++i) r[static_cast<std::size_t>(dr - db + i)] -= t * b.coeffs()[static_cast<std::size_t>(i)];
        --steps;
        r.pop_back();
        while (!r.empty() && sgn(r.back()) == 0) r.pop_back();
        dr = static_cast<int>(r.size()) - 1;
    }
    // Keep the classical normalization lc(b)^(deg a - deg b + 1).
    for (; steps > 0; --steps)
        for (auto& x : r) x *= lb;
    return ZPoly(std::move(r));
}

ZPoly gcd(const ZPoly& a, const ZPoly& b) {
    if (a.is_zero()) return b.is_zero() ? ZPoly{} : content(b) * primitive_part(b);
    if (b.is_zero()) return content(a) * primitive_part(a);
    mpz_class c;
    mpz_class ca = content(a), cb = content(b);
    mpz_gcd(c.get_mpz_t(), ca.get_mpz_t(), cb.get_mpz_t());
    ZPoly u = primitive_part(a), v = primitive_part(b);
    if (u.degree() < v.degree()) std::swap(u, v);
    if (v.degree() > 0 && coprime_mod_p(u, v)) return ZPoly::constant(c);
    while (!v.is_zero()) {
        ZPoly r = pseudo_remainder(u, v);
        u = std::move(v);
        v = primitive_part(r);
    }
    return c * primitive_part(u);
}

std::vector<std::pair<ZPoly, int>> squarefree(const ZPoly& p) {
    std::vector<std::pair<ZPoly, int>> out;
    if (p.degree() <= 0) return out;
    ZPoly a = primitive_part(p);
    ZPoly c = gcd(a, a.derivative());
    ZPoly w = *exact_divide(a, c);
    int i = 1;
    while (c.degree() > 0) {
        ZPoly y = gcd(w, c);
        ZPoly factor = *exact_divide(w, y);
        if (factor.degree() > 0) out.emplace_back(primitive_part(factor), i);
        w = y;
        c = *exact_divide(c, y);
        ++i;
    }
    if (w.degree() > 0) out.emplace_back(primitive_part(w), i);
    return out;
}

bool coprime_mod_p(const ZPoly& a, const ZPoly& b) {
    if (a.is_zero() || b.is_zero()) return false;
    if (modp::reduce(a.leading()) == 0) return false;
    auto g = modp::gcd(modp::reduce(a), modp::reduce(b));
    return g.size() == 1;
}

}  // namespace corrdyn::algebra
