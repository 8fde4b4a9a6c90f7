#include "corrdyn/projpoint.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace corrdyn {

ProjPoint::ProjPoint(cplx a, cplx b) {
    double m = std::max(std::abs(a), std::abs(b));
    if (!(m > 0) || !std::isfinite(m)) throw std::invalid_argument("ProjPoint: degenerate homogeneous pair");
    a_ = a / m;
    b_ = b / m;
    // Snap the larger coordinate's modulus to exactly 1.
    if (std::abs(a_) >= std::abs(b_)) a_ /= std::abs(a_);
    else b_ /= std::abs(b_);
}

ProjPoint ProjPoint::from_sphere(double t, double phi) {
    t = std::clamp(t, -1.0, 1.0);
    // |z|^2 = (1 + t) / (1 - t), written homogeneously as [sqrt(1 + t) e^(i phi) : sqrt(1 - t)].
    return {std::polar(std::sqrt(1 + t), phi), std::sqrt(1 - t)};
}

cplx ProjPoint::to_affine() const {
    if (is_infinity()) return {std::numeric_limits<double>::infinity(), 0};
    return a_ / b_;
}

std::array<double, 3> ProjPoint::sphere() const {
    double n = std::norm(a_) + std::norm(b_);
    cplx ab = a_ * std::conj(b_);
    return {2 * ab.real() / n, 2 * ab.imag() / n, (std::norm(a_) - std::norm(b_)) / n};
}

double chordal(const ProjPoint& x, const ProjPoint& y) {
    double num = std::abs(x.a() * y.b() - x.b() * y.a());
    double den = std::sqrt((std::norm(x.a()) + std::norm(x.b())) * (std::norm(y.a()) + std::norm(y.b())));
    return std::min(1.0, num / den);
}

ProjPoint rotate_from_origin(const ProjPoint& center, const ProjPoint& p) {
    double n = std::sqrt(std::norm(center.a()) + std::norm(center.b()));
    cplx a = center.a() / n, b = center.b() / n;
    // U = [[conj(b), a], [-conj(a), b]] is unitary with U [0 : 1] = [a : b].
    return {std::conj(b) * p.a() + a * p.b(), -std::conj(a) * p.a() + b * p.b()};
}

ProjPoint offset(const ProjPoint& center, double rho, double theta) {
    double t = rho / std::sqrt(std::max(1e-300, 1 - rho * rho));
    return rotate_from_origin(center, ProjPoint::affine(std::polar(t, theta)));
}

}  // namespace corrdyn
