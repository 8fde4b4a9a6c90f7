#include "corrdyn/algebra/factor.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>

#include "corrdyn/algebra/modp.hpp"

namespace corrdyn::algebra {

namespace {

using WPoly = std::vector<ZPoly>;  // coefficients in w, each a polynomial in z

void trim(WPoly& p) {
    while (!p.empty() && p.back().is_zero()) p.pop_back();
}

ZPoly content_w(const WPoly& p) {
    ZPoly g;
    for (const auto& c : p) {
        g = gcd(g, c);
        if (g.degree() == 0 && g.leading() == 1) break;
    }
    return g;
}

WPoly divide_all(const WPoly& p, const ZPoly& c) {
    WPoly out;
    out.reserve(p.size());
    for (const auto& x : p) out.push_back(*exact_divide(x, c));
    return out;
}

WPoly primitive_w(const WPoly& p) {
    if (p.empty()) return {};
    ZPoly c = content_w(p);
    if (sgn(c.leading()) < 0) c = -c;
    if (c.degree() == 0 && c.leading() == 1) return p;
    return divide_all(p, c);
}

// lc(b)^(da - db + 1) * a mod b over Z[z][w].
WPoly pseudo_remainder(WPoly a, const WPoly& b) {
    const std::size_t db = b.size() - 1;
    const ZPoly& lb = b.back();
    while (!a.empty() && a.size() - 1 >= db) {
        ZPoly t = a.back();
        const std::size_t shift = a.size() - 1 - db;
        for (auto& x : a) x = x * lb;
        for (std::size_t i = 0; i <= db; ++i) a[shift + i] = a[shift + i] - t * b[i];
        a.pop_back();
        trim(a);
    }
    return a;
}

// Evaluates p at z = z0 and reduces mod the prime: a polynomial in w.
modp::Poly reduce_at(const BiPoly& p, std::uint64_t z0) {
    modp::Poly out(static_cast<std::size_t>(p.deg_w() + 1), 0);
    for (int j = 0; j <= p.deg_w(); ++j) {
        std::uint64_t acc = 0;
        for (int i = p.deg_z(); i >= 0; --i) acc = modp::add(modp::mul(acc, z0), modp::reduce(p.coeff(i, j)));
        out[static_cast<std::size_t>(j)] = acc;
    }
    return out;
}

constexpr std::array<std::uint64_t, 3> kProbePoints = {1000003, 7919, 2305843009213};

// Proves that a and b share no factor of positive w-degree.
bool coprime_in_w_mod_p(const BiPoly& a, const BiPoly& b) {
    for (std::uint64_t z0 : kProbePoints) {
        modp::Poly pa = reduce_at(a, z0);
        if (pa.back() == 0) continue;
        modp::Poly pb = reduce_at(b, z0);
        modp::trim(pb);
        if (modp::gcd(pa, pb).size() == 1) return true;
    }
    return false;
}

}  // namespace

bool squarefree_in_w_mod_p(const BiPoly& p) {
    if (p.deg_w() <= 0) return false;
    for (std::uint64_t z0 : kProbePoints) {
        modp::Poly pw = reduce_at(p, z0);
        if (pw.back() == 0) continue;
        if (modp::gcd(pw, modp::derivative(pw)).size() == 1) return true;
    }
    return false;
}

std::optional<BiPoly> exact_divide(const BiPoly& a, const BiPoly& b) {
    if (b.is_zero()) throw std::invalid_argument("exact_divide: zero divisor");
    if (a.is_zero()) return BiPoly{};
    if (a.deg_w() < b.deg_w() || a.deg_z() < b.deg_z()) return std::nullopt;
    WPoly rem = a.in_w();
    const WPoly den = b.in_w();
    const std::size_t db = den.size() - 1;
    WPoly q(rem.size() - db);
    for (std::size_t k = rem.size() - db; k-- > 0;) {
        const ZPoly& top = rem[k + db];
        if (top.is_zero()) continue;
        auto t = exact_divide(top, den[db]);
        if (!t) return std::nullopt;
        for (std::size_t i = 0; i <= db; ++i) rem[k + i] = rem[k + i] - (*t) * den[i];
        q[k] = std::move(*t);
    }
    for (const auto& r : rem)
        if (!r.is_zero()) return std::nullopt;
    return BiPoly::from_w(q);
}

bool divides(const BiPoly& d, const BiPoly& p) {
    if (d.is_zero()) throw std::invalid_argument("divides: zero divisor");
    if (p.is_zero()) return true;
    return exact_divide(p, primitive_part(d)).has_value();
}

BiPoly gcd(const BiPoly& a, const BiPoly& b) {
    if (a.is_zero()) return primitive_part(b);
    if (b.is_zero()) return primitive_part(a);
    WPoly A = a.in_w(), B = b.in_w();
    ZPoly ca = content_w(A), cb = content_w(B);
    ZPoly c = gcd(ca, cb);
    BiPoly cpoly = BiPoly::from_w({c});
    if (a.deg_w() == 0 || b.deg_w() == 0) return primitive_part(cpoly);
    WPoly u = divide_all(A, ca), v = divide_all(B, cb);
    if (u.size() < v.size()) std::swap(u, v);
    if (coprime_in_w_mod_p(BiPoly::from_w(u), BiPoly::from_w(v))) return primitive_part(cpoly);
    while (!v.empty()) {
        WPoly r = pseudo_remainder(u, v);
        u = std::move(v);
        v = primitive_w(r);
    }
    return primitive_part(cpoly * BiPoly::from_w(primitive_w(u)));
}

SquarefreeDecomposition normalize(const BiPoly& p) {
    if (p.is_zero()) throw std::invalid_argument("normalize: zero polynomial");
    SquarefreeDecomposition out;

    WPoly A = p.in_w();
    ZPoly cz = content_w(A);
    for (auto& [f, m] : squarefree(cz)) out.factors.push_back({primitive_part(BiPoly::from_w({f})), m});

    if (p.deg_w() >= 1) {
        BiPoly pw = primitive_part(BiPoly::from_w(divide_all(A, cz)));
        // Factors free of z (pure w content).
        ZPoly cw = content_w(pw.in_z());
        if (cw.degree() > 0) {
            for (auto& [f, m] : squarefree(cw)) out.factors.push_back({primitive_part(BiPoly::from_z({f})), m});
            pw = primitive_part(*exact_divide(pw, BiPoly::from_z({cw})));
        }
        if (squarefree_in_w_mod_p(pw)) {
            out.factors.push_back({pw, 1});
        } else {
            BiPoly c = gcd(pw, pw.d_dw());
            BiPoly rest = *exact_divide(pw, c);
            int i = 1;
            while (c.deg_w() > 0) {
                BiPoly y = gcd(rest, c);
                BiPoly f = *exact_divide(rest, y);
                if (f.deg_w() > 0) out.factors.push_back({primitive_part(f), i});
                rest = y;
                c = *exact_divide(c, y);
                ++i;
            }
            if (rest.deg_w() > 0) out.factors.push_back({primitive_part(rest), i});
        }
    }

    std::sort(out.factors.begin(), out.factors.end(), [](const Factor& x, const Factor& y) {
        if (x.poly == y.poly) return x.multiplicity < y.multiplicity;
        return x.poly < y.poly;
    });

    mpz_class lead = 1;
    for (const auto& f : out.factors) {
        mpz_class l;
        mpz_pow_ui(l.get_mpz_t(), f.poly.leading().get_mpz_t(), static_cast<unsigned long>(f.multiplicity));
        lead *= l;
    }
    mpz_divexact(out.unit.get_mpz_t(), p.leading().get_mpz_t(), lead.get_mpz_t());
    return out;
}

}  // namespace corrdyn::algebra
