#include "corrdyn/algebra/resultant.hpp"

#include <stdexcept>

#include "corrdyn/error.hpp"

namespace corrdyn::algebra {

namespace {

// 0, 1, -1, 2, -2, ... keeps node magnitudes small.
std::vector<mpz_class> centered_nodes(int count) {
    std::vector<mpz_class> out;
    out.reserve(static_cast<std::size_t>(count));
    for (int k = 0; static_cast<int>(out.size()) < count; ++k) {
        if (k == 0) {
            out.emplace_back(0);
            continue;
        }
        out.emplace_back(k);
        if (static_cast<int>(out.size()) < count) out.emplace_back(-k);
    }
    return out;
}

mpz_class bareiss_determinant(std::vector<std::vector<mpz_class>> a) {
    const std::size_t n = a.size();
    if (n == 0) return 1;
    int sign = 1;
    mpz_class prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (sgn(a[k][k]) == 0) {
            std::size_t r = k + 1;
            while (r < n && sgn(a[r][k]) == 0) ++r;
            if (r == n) return 0;
            std::swap(a[k], a[r]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                mpz_class t = a[i][j] * a[k][k] - a[i][k] * a[k][j];
                mpz_divexact(a[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
            a[i][k] = 0;
        }
        prev = a[k][k];
    }
    mpz_class det = a[n - 1][n - 1];
    return sign < 0 ? mpz_class(-det) : det;
}

}  // namespace

mpz_class sylvester_resultant(const ZPoly& p, int m, const ZPoly& q, int n) {
    if (m < 0 || n < 0) throw std::invalid_argument("sylvester_resultant: negative formal degree");
    if (p.degree() > m || q.degree() > n) throw std::invalid_argument("sylvester_resultant: degree exceeds formal degree");
    if (m == 0 && n == 0) return 1;
    const std::size_t size = static_cast<std::size_t>(m + n);
    std::vector<std::vector<mpz_class>> s(size, std::vector<mpz_class>(size));
    // Rows hold coefficients from the highest formal degree down.
    for (int r = 0; r < n; ++r)
        for (int k = 0; k <= m; ++k) s[static_cast<std::size_t>(r)][static_cast<std::size_t>(r + k)] = p.coeff(m - k);
    for (int r = 0; r < m; ++r)
        for (int k = 0; k <= n; ++k) s[static_cast<std::size_t>(n + r)][static_cast<std::size_t>(r + k)] = q.coeff(n - k);
    return bareiss_determinant(std::move(s));
}

ZPoly interpolate(std::span<const mpz_class> nodes, std::span<const mpz_class> values) {
    const std::size_t n = nodes.size();
    if (values.size() != n) throw std::invalid_argument("interpolate: size mismatch");
    if (n == 0) return {};
    // Newton divided differences.
    std::vector<mpq_class> dd(values.begin(), values.end());
    for (std::size_t level = 1; level < n; ++level)
        for (std::size_t i = n - 1; i >= level; --i) {
            dd[i] = (dd[i] - dd[i - 1]) / mpq_class(nodes[i] - nodes[i - level]);
            if (i == level) break;
        }
    // Horner expansion of the Newton form into monomials.
    std::vector<mpq_class> poly{dd[n - 1]};
    for (std::size_t k = n - 1; k-- > 0;) {
        std::vector<mpq_class> next(poly.size() + 1);
        for (std::size_t i = 0; i < poly.size(); ++i) {
            next[i + 1] += poly[i];
            next[i] -= poly[i] * mpq_class(nodes[k]);
        }
        next[0] += dd[k];
        poly = std::move(next);
    }
    std::vector<mpz_class> out;
    out.reserve(poly.size());
    for (auto& c : poly) {
        c.canonicalize();
        if (c.get_den() != 1) throw std::logic_error("interpolate: non-integral interpolant");
        out.push_back(c.get_num());
    }
    return ZPoly(std::move(out));
}

BiPoly resultant_middle(const BiPoly& p, const BiPoly& q) {
    if (p.is_zero() || q.is_zero()) throw DomainError("malformed_component", "resultant of a zero polynomial");
    const int m = p.deg_w();
    const int n = q.deg_z();
    if (m < 1 || n < 1) throw DomainError("malformed_component", "component does not involve the eliminated variable");

    const int dx = p.deg_z() * n;
    const int dz = q.deg_w() * m;
    const auto xs = centered_nodes(dx + 1);
    const auto zs = centered_nodes(dz + 1);

    std::vector<ZPoly> q_at;
    q_at.reserve(zs.size());
    for (const auto& b : zs) q_at.push_back(q.at_w(b));

    // rows_by_x[a] = R(x_a, z) as a polynomial in z
    std::vector<ZPoly> rows_by_x;
    rows_by_x.reserve(xs.size());
    std::vector<mpz_class> vals(zs.size());
    for (const auto& a : xs) {
        ZPoly pa = p.at_z(a);
        for (std::size_t k = 0; k < zs.size(); ++k) vals[k] = sylvester_resultant(pa, m, q_at[k], n);
        rows_by_x.push_back(interpolate(zs, vals));
    }

    std::vector<ZPoly> coeffs_in_z;
    coeffs_in_z.reserve(static_cast<std::size_t>(dz + 1));
    std::vector<mpz_class> col(xs.size());
    for (int k = 0; k <= dz; ++k) {
        for (std::size_t i = 0; i < xs.size(); ++i) col[i] = rows_by_x[i].coeff(k);
        coeffs_in_z.push_back(interpolate(xs, col));
    }
    return BiPoly::from_w(coeffs_in_z);
}

ZPoly discriminant_w(const BiPoly& p) {
    if (p.is_zero()) throw DomainError("malformed_component", "discriminant of the zero polynomial");
    const int m = p.deg_w();
    if (m < 1) throw DomainError("malformed_component", "discriminant requires positive w-degree");
    const BiPoly dp = p.d_dw();
    const int bound = std::max(p.deg_z(), 0) * (2 * m - 1);
    const auto zs = centered_nodes(bound + 1);
    std::vector<mpz_class> vals;
    vals.reserve(zs.size());
    for (const auto& z0 : zs) vals.push_back(sylvester_resultant(p.at_z(z0), m, dp.at_z(z0), m - 1));
    return interpolate(zs, vals);
}

}  // namespace corrdyn::algebra
