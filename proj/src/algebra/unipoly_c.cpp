#include "corrdyn/algebra/unipoly_c.hpp"

#include <algorithm>
#include <cmath>

namespace corrdyn::algebra {

UniPolyC::UniPolyC(std::vector<cplx> coeffs) : c_(std::move(coeffs)) {
    double m = 0;
    for (const auto& x : c_) m = std::max(m, std::abs(x));
    if (m == 0) {
        c_.clear();
        return;
    }
    while (std::abs(c_.back()) <= 1e-12 * m) c_.pop_back();
}

cplx UniPolyC::operator()(cplx x) const {
    cplx acc = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
}

UniPolyC specialize(const BiPoly& p, Var which, cplx value) {
    if (p.is_zero()) return {};
    const BiPoly& q = which == Var::First ? p : p.swapped();
    std::vector<cplx> out(static_cast<std::size_t>(q.deg_w() + 1));
    for (int j = 0; j <= q.deg_w(); ++j) {
        cplx acc = 0;
        for (int i = q.deg_z(); i >= 0; --i) acc = acc * value + q.coeff(i, j).get_d();
        out[static_cast<std::size_t>(j)] = acc;
    }
    return UniPolyC(std::move(out));
}

}  // namespace corrdyn::algebra
