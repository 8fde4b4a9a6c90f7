#pragma once

#include <array>
#include <complex>

namespace corrdyn {

using cplx = std::complex<double>;

// A point [a : b] of the Riemann sphere, affine coordinate z = a / b.
// Stored normalized so that max(|a|, |b|) = 1.
class ProjPoint {
public:
    ProjPoint() : a_(0), b_(1) {}
    ProjPoint(cplx a, cplx b);

    static ProjPoint affine(cplx z) { return {z, 1.0}; }
    static ProjPoint infinity() { return {1.0, 0.0}; }
    // Point of the unit sphere at height t in [-1, 1] (t = 1 is infinity) and longitude phi.
    static ProjPoint from_sphere(double t, double phi);

    cplx a() const noexcept { return a_; }
    cplx b() const noexcept { return b_; }
    bool is_infinity() const noexcept { return b_ == cplx(0); }
    // a / b; infinite components when the point is infinity.
    cplx to_affine() const;

    // Chart 0 is the affine coordinate z, chart 1 the coordinate 1/z; the
    // chosen chart is the one where the coordinate has modulus <= 1.
    int chart() const noexcept { return std::abs(a_) <= std::abs(b_) ? 0 : 1; }
    cplx chart_coordinate() const noexcept { return chart() == 0 ? a_ / b_ : b_ / a_; }

    // Image on the unit sphere of R^3; Euclidean distance there is twice the chordal distance.
    std::array<double, 3> sphere() const;

private:
    cplx a_, b_;
};

// |a_x b_y - b_x a_y| / (|x| |y|): the Fubini-Study chord, diameter 1.
double chordal(const ProjPoint& x, const ProjPoint& y);

// The unitary Moebius map sending 0 to `center`, applied to `p`.
ProjPoint rotate_from_origin(const ProjPoint& center, const ProjPoint& p);

// Point at chordal distance rho (< 1) from center in direction angle theta.
ProjPoint offset(const ProjPoint& center, double rho, double theta);

}  // namespace corrdyn
