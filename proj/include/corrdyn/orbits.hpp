#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "corrdyn/corresp.hpp"
#include "corrdyn/projpoint.hpp"

namespace corrdyn {

// Which copy of which component a step of an orbit follows. Copies 1..m of a
// component with multiplicity m are distinct branches.
struct BranchIndex {
    int component = 0;
    int copy = 1;
    friend auto operator<=>(const BranchIndex&, const BranchIndex&) = default;
};

struct BranchImage {
    ProjPoint point;
    BranchIndex index;
    double deriv_sph = 0;  // |dw/dz| (1 + |z|^2) / (1 + |w|^2); +inf at a critical fiber
    bool simple_in_w = true;
    bool simple_in_z = true;
    bool regular() const noexcept { return simple_in_w && simple_in_z; }
};

// Double-precision copy of a correspondence's component equations, evaluated
// in whichever affine charts keep both coordinates inside the unit disc.
class FiberSolver {
public:
    explicit FiberSolver(const Correspondence& f);

    // All lambda0 images of x with their branch data; ordered by component,
    // then by (chart, argument, modulus) of the image, then copy number.
    // Throws DomainError("fiber_solve_failed") when a root misses the 1e-10
    // relative residual bound.
    std::vector<BranchImage> images(const ProjPoint& x) const;

    long lambda0() const noexcept { return lambda0_; }

private:
    struct Comp {
        int dz, dw, multiplicity;
        std::vector<double> c;  // c[i * (dw + 1) + j]
    };
    std::vector<Comp> comps_;
    long lambda0_ = 0;
};

std::vector<BranchImage> forward_images(const Correspondence& f, const ProjPoint& x);

struct Orbit {
    int start_id = 0;
    long orbit_id = 0;
    std::vector<ProjPoint> points;     // n + 1 points
    std::vector<BranchIndex> indices;  // n indices
    std::vector<double> derivs;        // spherical derivative of each step
    // False when the orbit met a critical fiber and was re-traced from a
    // jittered start.
    bool regular = true;
    double weight = 1;  // inverse sampling probability
    std::size_t length() const noexcept { return indices.size(); }
};

struct SampleDiagnostics {
    long enumerated_starts = 0;
    long sampled_starts = 0;
    long perturbed = 0;
    long dropped = 0;
};

inline constexpr double kJitter = 1e-9;

// Orbits of depth n from each start. A start is fully enumerated when
// lambda0^n fits in its share of the budget (budget / #starts, at least 1),
// otherwise that many branch paths are drawn uniformly over the image list.
// Deterministic in (f, starts, n, budget, seed), independent of threads.
std::vector<Orbit> sample_orbits(const Correspondence& f, const std::vector<ProjPoint>& starts, int n, long budget,
                                 std::uint64_t seed, SampleDiagnostics* diagnostics = nullptr);

// CSV: start_id,orbit_id,step,re,im,chart,component,copy,deriv_sph,regular
void write_orbits_csv(std::ostream& os, const std::vector<Orbit>& orbits);

}  // namespace corrdyn
