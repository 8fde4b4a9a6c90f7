#include "corrdyn/algebra/bipoly.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace corrdyn::algebra {

namespace {
const mpz_class kZero = 0;
}

BiPoly::BiPoly(int dz, int dw, std::vector<mpz_class> data) : dz_(dz), dw_(dw), data_(std::move(data)) { trim(); }

BiPoly::BiPoly(const std::vector<std::vector<mpz_class>>& rows) {
    int dz = static_cast<int>(rows.size()) - 1;
    int dw = -1;
    for (const auto& r : rows) dw = std::max(dw, static_cast<int>(r.size()) - 1);
    if (dz < 0 || dw < 0) return;
    dz_ = dz;
    dw_ = dw;
    data_.assign(static_cast<std::size_t>(dz + 1) * static_cast<std::size_t>(dw + 1), 0);
    for (int i = 0; i <= dz; ++i)
        for (std::size_t j = 0; j < rows[static_cast<std::size_t>(i)].size(); ++j)
            data_[idx(i, static_cast<int>(j))] = rows[static_cast<std::size_t>(i)][j];
    trim();
}

BiPoly BiPoly::constant(const mpz_class& c) { return BiPoly({{c}}); }
BiPoly BiPoly::z() { return monomial(1, 1, 0); }
BiPoly BiPoly::w() { return monomial(1, 0, 1); }

BiPoly BiPoly::monomial(const mpz_class& c, int i, int j) {
    std::vector<mpz_class> d(static_cast<std::size_t>(i + 1) * static_cast<std::size_t>(j + 1));
    d.back() = c;
    return BiPoly(i, j, std::move(d));
}

void BiPoly::trim() {
    if (data_.empty()) {
        dz_ = dw_ = -1;
        return;
    }
    int nz = -1, nw = -1;
    for (int i = 0; i <= dz_; ++i)
        for (int j = 0; j <= dw_; ++j)
            if (sgn(data_[idx(i, j)]) != 0) {
                nz = std::max(nz, i);
                nw = std::max(nw, j);
            }
    if (nz < 0) {
        data_.clear();
        dz_ = dw_ = -1;
        return;
    }
    if (nz == dz_ && nw == dw_) return;
    std::vector<mpz_class> d(static_cast<std::size_t>(nz + 1) * static_cast<std::size_t>(nw + 1));
    for (int i = 0; i <= nz; ++i)
        for (int j = 0; j <= nw; ++j) d[static_cast<std::size_t>(i) * static_cast<std::size_t>(nw + 1) + static_cast<std::size_t>(j)] = std::move(data_[idx(i, j)]);
    dz_ = nz;
    dw_ = nw;
    data_ = std::move(d);
}

const mpz_class& BiPoly::coeff(int i, int j) const {
    if (i < 0 || j < 0 || i > dz_ || j > dw_) return kZero;
    return data_[idx(i, j)];
}

bool BiPoly::fits_double() const {
    for (const auto& c : data_)
        if (mpz_sizeinbase(c.get_mpz_t(), 2) > 1000) return false;
    return true;
}

const mpz_class& BiPoly::leading() const {
    if (is_zero()) throw std::logic_error("leading coefficient of zero polynomial");
    for (int i = dz_; i >= 0; --i)
        if (sgn(data_[idx(i, dw_)]) != 0) return data_[idx(i, dw_)];
    throw std::logic_error("untrimmed polynomial");
}

BiPoly BiPoly::swapped() const {
    if (is_zero()) return {};
    std::vector<mpz_class> d(data_.size());
    for (int i = 0; i <= dz_; ++i)
        for (int j = 0; j <= dw_; ++j) d[static_cast<std::size_t>(j) * static_cast<std::size_t>(dz_ + 1) + static_cast<std::size_t>(i)] = data_[idx(i, j)];
    return BiPoly(dw_, dz_, std::move(d));
}

BiPoly BiPoly::d_dz() const {
    if (dz_ <= 0) return {};
    std::vector<mpz_class> d(static_cast<std::size_t>(dz_) * static_cast<std::size_t>(dw_ + 1));
    for (int i = 1; i <= dz_; ++i)
        for (int j = 0; j <= dw_; ++j) d[static_cast<std::size_t>(i - 1) * static_cast<std::size_t>(dw_ + 1) + static_cast<std::size_t>(j)] = data_[idx(i, j)] * i;
    return BiPoly(dz_ - 1, dw_, std::move(d));
}

BiPoly BiPoly::d_dw() const { return swapped().d_dz().swapped(); }

std::vector<ZPoly> BiPoly::in_w() const {
    std::vector<ZPoly> out;
    for (int j = 0; j <= dw_; ++j) {
        std::vector<mpz_class> col(static_cast<std::size_t>(dz_ + 1));
        for (int i = 0; i <= dz_; ++i) col[static_cast<std::size_t>(i)] = data_[idx(i, j)];
        out.emplace_back(std::move(col));
    }
    return out;
}

BiPoly BiPoly::from_w(const std::vector<ZPoly>& coeffs_in_w) {
    int dw = static_cast<int>(coeffs_in_w.size()) - 1;
    int dz = -1;
    for (const auto& c : coeffs_in_w) dz = std::max(dz, c.degree());
    if (dw < 0 || dz < 0) return {};
    std::vector<mpz_class> d(static_cast<std::size_t>(dz + 1) * static_cast<std::size_t>(dw + 1));
    for (int j = 0; j <= dw; ++j) {
        const auto& c = coeffs_in_w[static_cast<std::size_t>(j)].coeffs();
        for (std::size_t i = 0; i < c.size(); ++i) d[i * static_cast<std::size_t>(dw + 1) + static_cast<std::size_t>(j)] = c[i];
    }
    return BiPoly(dz, dw, std::move(d));
}

std::vector<ZPoly> BiPoly::in_z() const { return swapped().in_w(); }
BiPoly BiPoly::from_z(const std::vector<ZPoly>& coeffs_in_z) { return from_w(coeffs_in_z).swapped(); }

ZPoly BiPoly::at_z(const mpz_class& z0) const {
    std::vector<mpz_class> out(static_cast<std::size_t>(std::max(dw_ + 1, 0)));
    for (int j = 0; j <= dw_; ++j) {
        mpz_class acc = 0;
        for (int i = dz_; i >= 0; --i) acc = acc * z0 + data_[idx(i, j)];
        out[static_cast<std::size_t>(j)] = acc;
    }
    return ZPoly(std::move(out));
}

ZPoly BiPoly::at_w(const mpz_class& w0) const { return swapped().at_z(w0); }

ZPoly BiPoly::on_diagonal() const {
    if (is_zero()) return {};
    std::vector<mpz_class> out(static_cast<std::size_t>(dz_ + dw_ + 1));
    for (int i = 0; i <= dz_; ++i)
        for (int j = 0; j <= dw_; ++j) out[static_cast<std::size_t>(i + j)] += data_[idx(i, j)];
    return ZPoly(std::move(out));
}

BiPoly operator+(const BiPoly& a, const BiPoly& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    int dz = std::max(a.dz_, b.dz_), dw = std::max(a.dw_, b.dw_);
    std::vector<mpz_class> d(static_cast<std::size_t>(dz + 1) * static_cast<std::size_t>(dw + 1));
    auto at = [dw](int i, int j) { return static_cast<std::size_t>(i) * static_cast<std::size_t>(dw + 1) + static_cast<std::size_t>(j); };
    for (int i = 0; i <= a.dz_; ++i)
        for (int j = 0; j <= a.dw_; ++j) d[at(i, j)] += a.data_[a.idx(i, j)];
    for (int i = 0; i <= b.dz_; ++i)
        for (int j = 0; j <= b.dw_; ++j) d[at(i, j)] += b.data_[b.idx(i, j)];
    return BiPoly(dz, dw, std::move(d));
}

BiPoly BiPoly::operator-() const {
    BiPoly r = *this;
    for (auto& x : r.data_) x = -x;
    return r;
}

BiPoly operator-(const BiPoly& a, const BiPoly& b) { return a + (-b); }

BiPoly operator*(const BiPoly& a, const BiPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    int dz = a.dz_ + b.dz_, dw = a.dw_ + b.dw_;
    std::vector<mpz_class> d(static_cast<std::size_t>(dz + 1) * static_cast<std::size_t>(dw + 1));
    for (int i = 0; i <= a.dz_; ++i)
        for (int j = 0; j <= a.dw_; ++j) {
            const mpz_class& x = a.data_[a.idx(i, j)];
            if (sgn(x) == 0) continue;
            for (int k = 0; k <= b.dz_; ++k)
                for (int l = 0; l <= b.dw_; ++l) {
                    const mpz_class& y = b.data_[b.idx(k, l)];
                    if (sgn(y) == 0) continue;
                    mpz_addmul(d[static_cast<std::size_t>(i + k) * static_cast<std::size_t>(dw + 1) + static_cast<std::size_t>(j + l)].get_mpz_t(), x.get_mpz_t(), y.get_mpz_t());
                }
        }
    return BiPoly(dz, dw, std::move(d));
}

BiPoly operator*(const mpz_class& s, const BiPoly& a) {
    BiPoly r = a;
    for (auto& x : r.data_) x *= s;
    r.trim();
    return r;
}

bool operator<(const BiPoly& a, const BiPoly& b) {
    if (a.dw_ != b.dw_) return a.dw_ < b.dw_;
    if (a.dz_ != b.dz_) return a.dz_ < b.dz_;
    for (std::size_t k = a.data_.size(); k-- > 0;) {
        int c = cmp(a.data_[k], b.data_[k]);
        if (c != 0) return c < 0;
    }
    return false;
}

BiPoly pow(const BiPoly& p, int e) {
    if (e < 0) throw std::invalid_argument("negative exponent");
    BiPoly r = BiPoly::constant(1), base = p;
    while (e) {
        if (e & 1) r = r * base;
        e >>= 1;
        if (e) base = base * base;
    }
    return r;
}

mpz_class content(const BiPoly& p) {
    mpz_class g = 0;
    for (int i = 0; i <= p.deg_z(); ++i)
        for (int j = 0; j <= p.deg_w(); ++j) {
            mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), p.coeff(i, j).get_mpz_t());
            if (g == 1) return g;
        }
    return g;
}

BiPoly primitive_part(const BiPoly& p) {
    if (p.is_zero()) return {};
    mpz_class g = content(p);
    if (sgn(p.leading()) < 0) g = -g;
    if (g == 1) return p;
    std::vector<std::vector<mpz_class>> rows(static_cast<std::size_t>(p.deg_z() + 1), std::vector<mpz_class>(static_cast<std::size_t>(p.deg_w() + 1)));
    for (int i = 0; i <= p.deg_z(); ++i)
        for (int j = 0; j <= p.deg_w(); ++j)
            mpz_divexact(rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)].get_mpz_t(), p.coeff(i, j).get_mpz_t(), g.get_mpz_t());
    return BiPoly(rows);
}

}  // namespace corrdyn::algebra
