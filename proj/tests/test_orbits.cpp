#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "corrdyn/numeric/parallel.hpp"
#include "corrdyn/orbits.hpp"
#include "support.hpp"

using namespace corrdyn;
using corrdyn::testing::random_correspondence;

namespace {

ProjPoint inverted(const ProjPoint& p) { return ProjPoint(p.b(), p.a()); }

// Conjugate of f by z -> 1/z on both factors.
Correspondence inverted(const Correspondence& f) {
    std::vector<Component> comps;
    for (const auto& c : f.components()) {
        const BiPoly& p = c.equation;
        BiPoly q;
        for (int i = 0; i <= p.deg_z(); ++i)
            for (int j = 0; j <= p.deg_w(); ++j)
                if (p.coeff(i, j) != 0) q = q + BiPoly::monomial(p.coeff(i, j), p.deg_z() - i, p.deg_w() - j);
        comps.push_back({algebra::primitive_part(q), c.multiplicity});
    }
    return Correspondence::from_components(std::move(comps));
}

std::vector<ProjPoint> points_of(const std::vector<BranchImage>& imgs) {
    std::vector<ProjPoint> out;
    for (const auto& b : imgs) out.push_back(b.point);
    return out;
}

ProjPoint random_point(std::mt19937_64& g) { return ProjPoint::affine(corrdyn::testing::random_complex(g)); }

}  // namespace

TEST_CASE("chordal metric examples") {
    CHECK(chordal(ProjPoint::affine(0), ProjPoint::infinity()) == doctest::Approx(1.0));
    CHECK(chordal(ProjPoint::affine({0.3, -2}), ProjPoint::affine({0.3, -2})) == doctest::Approx(0.0));
    for (double t : {0.5, 3.0, 40.0}) {
        CHECK(chordal(ProjPoint::affine(t), ProjPoint::affine(-t)) == doctest::Approx(2 * t / (1 + t * t)));
    }
}

TEST_CASE("forward_images examples") {
    auto f = parse_correspondence("w^2 - z^2 - 1");
    auto imgs = forward_images(f, ProjPoint::affine(0));
    REQUIRE(imgs.size() == 2);
    CHECK(corrdyn::testing::same_multiset(points_of(imgs), {ProjPoint::affine(1), ProjPoint::affine(-1)}, 1e-12));
    for (const auto& b : imgs) {
        CHECK(b.deriv_sph == doctest::Approx(0.0));
        CHECK(b.simple_in_w);
        CHECK_FALSE(b.simple_in_z);
    }

    auto sq = parse_correspondence("w - z^2");
    auto s = forward_images(sq, ProjPoint::affine(2));
    REQUIRE(s.size() == 1);
    CHECK(chordal(s[0].point, ProjPoint::affine(4)) < 1e-14);
    CHECK(s[0].deriv_sph == doctest::Approx(4.0 * 5.0 / 17.0));

    auto chain = compose(f, f).chain;
    auto c = forward_images(chain, ProjPoint::affine(0));
    REQUIRE(c.size() == 4);
    std::multiset<std::pair<int, int>> idx;
    for (const auto& b : c) {
        CHECK(std::abs(std::abs(b.point.to_affine()) - std::sqrt(2.0)) < 1e-12);
        idx.insert({b.index.component, b.index.copy});
    }
    CHECK(idx.count({0, 1}) == 2);
    CHECK(idx.count({0, 2}) == 2);
}

TEST_CASE("forward_images handles infinity in both factors") {
    auto sq = parse_correspondence("w - z^2");
    auto imgs = forward_images(sq, ProjPoint::infinity());
    REQUIRE(imgs.size() == 1);
    CHECK(imgs[0].point.is_infinity());
    // z -> 1/z^2 style pole: w z - 1 sends 0 to infinity
    auto inv = parse_correspondence("w*z - 1");
    auto at0 = forward_images(inv, ProjPoint::affine(0));
    REQUIRE(at0.size() == 1);
    CHECK(at0[0].point.is_infinity());
    CHECK(at0[0].deriv_sph == doctest::Approx(1.0));
}

TEST_CASE("critical fibers are flagged, not errors") {
    auto f = parse_correspondence("w^2 - z");
    auto imgs = forward_images(f, ProjPoint::affine(0));
    REQUIRE(imgs.size() == 2);
    for (const auto& b : imgs) {
        CHECK_FALSE(b.simple_in_w);
        CHECK(std::isinf(b.deriv_sph));
    }
    // w = z^2 at z = 0 is simple in w but not in z
    auto g = forward_images(parse_correspondence("w - z^2"), ProjPoint::affine(0));
    CHECK(g[0].simple_in_w);
    CHECK_FALSE(g[0].simple_in_z);
    CHECK_FALSE(g[0].regular());
}

TEST_CASE("property: fiber count equals lambda0 and matches the oracle") {
    std::mt19937_64 g(31);
    for (int t = 0; t < 100; ++t) {
        auto f = random_correspondence(g);
        auto x = corrdyn::testing::random_complex(g);
        auto imgs = forward_images(f, ProjPoint::affine(x));
        CHECK(static_cast<long>(imgs.size()) == f.lambda0());
        CHECK(corrdyn::testing::same_multiset(points_of(imgs), corrdyn::testing::to_points(corrdyn::testing::oracle_fiber(f, x)), 1e-8));
        for (const auto& b : imgs) {
            CHECK(b.deriv_sph >= 0);
            CHECK(std::isfinite(b.deriv_sph) == b.simple_in_w);
        }
    }
}

TEST_CASE("property: adjoint symmetry") {
    std::mt19937_64 g(37);
    for (int t = 0; t < 40; ++t) {
        auto f = random_correspondence(g);
        auto fa = adjoint(f);
        ProjPoint x = random_point(g);
        for (const auto& b : forward_images(f, x)) {
            if (!b.regular()) continue;
            double best = 1;
            for (const auto& back : forward_images(fa, b.point)) best = std::min(best, chordal(back.point, x));
            CHECK(best < 1e-8);
        }
    }
}

TEST_CASE("property: chart invariance under z -> 1/z") {
    std::mt19937_64 g(41);
    for (int t = 0; t < 40; ++t) {
        auto f = random_correspondence(g);
        auto fi = inverted(f);
        ProjPoint x = random_point(g);
        auto a = forward_images(f, x);
        auto b = forward_images(fi, inverted(x));
        REQUIRE(a.size() == b.size());
        for (const auto& img : a) {
            // match the inverted image and compare derivatives
            double best = 1;
            double deriv = -1;
            for (const auto& other : b) {
                double d = chordal(inverted(img.point), other.point);
                if (d < best) {
                    best = d;
                    deriv = other.deriv_sph;
                }
            }
            CHECK(best < 1e-10);
            if (std::isfinite(img.deriv_sph)) CHECK(std::abs(deriv - img.deriv_sph) <= 1e-10 * std::max(1.0, img.deriv_sph));
        }
        ProjPoint y = random_point(g);
        CHECK(std::abs(chordal(x, y) - chordal(inverted(x), inverted(y))) < 1e-14);
    }
}

TEST_CASE("sample_orbits: single-valued map gives one orbit per start") {
    auto f = parse_correspondence("w - 2*z");
    std::vector<ProjPoint> starts = {ProjPoint::affine(0.1), ProjPoint::affine({0.3, -0.2}), ProjPoint::infinity()};
    SampleDiagnostics diag;
    auto orbits = sample_orbits(f, starts, 5, 30, 1, &diag);
    REQUIRE(orbits.size() == 3);
    CHECK(diag.enumerated_starts == 3);
    for (std::size_t s = 0; s < 2; ++s) {
        const auto& o = orbits[s];
        CHECK(o.start_id == static_cast<int>(s));
        REQUIRE(o.points.size() == 6);
        for (int k = 0; k <= 5; ++k)
            CHECK(chordal(o.points[static_cast<std::size_t>(k)], ProjPoint::affine(std::pow(2.0, k) * starts[s].to_affine())) < 1e-12);
    }
    for (const auto& p : orbits[2].points) CHECK(p.is_infinity());
}

TEST_CASE("sample_orbits: two-valued example from 0 enumerates 8 orbits") {
    auto f = parse_correspondence("w^2 - z^2 - 1");
    SampleDiagnostics diag;
    auto orbits = sample_orbits(f, {ProjPoint::affine(0)}, 3, 8, 9, &diag);
    REQUIRE(orbits.size() == 8);
    // 0 is critical for the z-projection, so every orbit is re-traced from a jittered start
    CHECK(diag.perturbed == 8);
    std::set<std::vector<BranchIndex>> seqs;
    for (const auto& o : orbits) {
        seqs.insert(o.indices);
        CHECK(o.weight == 1.0);
        CHECK_FALSE(o.regular);
        for (int r = 1; r <= 3; ++r) {
            auto z = o.points[static_cast<std::size_t>(r)].to_affine();
            CHECK(std::abs(z.imag()) < 1e-8);
            CHECK(std::abs(std::abs(z.real()) - std::sqrt(static_cast<double>(r))) < 1e-8);
        }
    }
    // index sequences coincide (one component), points differ by sign pattern
    CHECK(seqs.size() == 1);
    std::set<std::vector<int>> signs;
    for (const auto& o : orbits) {
        std::vector<int> s;
        for (int r = 1; r <= 3; ++r) s.push_back(o.points[static_cast<std::size_t>(r)].to_affine().real() > 0);
        signs.insert(s);
    }
    CHECK(signs.size() == 8);
}

TEST_CASE("sample_orbits: square root from 1") {
    auto f = parse_correspondence("w^2 - z");
    auto orbits = sample_orbits(f, {ProjPoint::affine(1)}, 2, 100, 3);
    REQUIRE(orbits.size() == 4);
    std::vector<ProjPoint> last;
    for (const auto& o : orbits) last.push_back(o.points[2]);
    std::vector<ProjPoint> expect = {ProjPoint::affine(1), ProjPoint::affine(-1), ProjPoint::affine({0, 1}), ProjPoint::affine({0, -1})};
    CHECK(corrdyn::testing::same_multiset(last, expect, 1e-12));
}

TEST_CASE("sample_orbits: critical starts are re-traced once from a jittered point") {
    auto f = parse_correspondence("w^2 - z");
    SampleDiagnostics diag;
    auto orbits = sample_orbits(f, {ProjPoint::affine(0)}, 1, 10, 5, &diag);
    CHECK(diag.perturbed == 2);
    CHECK(diag.dropped == 0);
    REQUIRE(orbits.size() == 2);
    for (const auto& o : orbits) {
        CHECK_FALSE(o.regular);
        CHECK(chordal(o.points[0], ProjPoint::affine(0)) == doctest::Approx(kJitter).epsilon(1e-3));
    }
}

TEST_CASE("sample_orbits: random branch draws are seeded and weighted") {
    auto f = parse_correspondence("w^2 - z^2 - 1");
    std::vector<ProjPoint> starts = {ProjPoint::affine(0.5), ProjPoint::affine({0.1, 0.7})};
    SampleDiagnostics diag;
    auto a = sample_orbits(f, starts, 10, 20, 42, &diag);
    CHECK(diag.sampled_starts == 2);
    REQUIRE(a.size() == 20);
    for (const auto& o : a) CHECK(o.weight == doctest::Approx(1024.0));

    numeric::set_default_threads(1);
    auto b = sample_orbits(f, starts, 10, 20, 42);
    numeric::set_default_threads(3);
    auto c = sample_orbits(f, starts, 10, 20, 42);
    numeric::set_default_threads(0);
    std::ostringstream sb, sc;
    write_orbits_csv(sb, b);
    write_orbits_csv(sc, c);
    CHECK(sb.str() == sc.str());
    auto d = sample_orbits(f, starts, 10, 20, 43);
    std::ostringstream sd;
    write_orbits_csv(sd, d);
    CHECK(sd.str() != sb.str());
}

TEST_CASE("property: orbit steps satisfy the component equation") {
    std::mt19937_64 g(43);
    for (int t = 0; t < 10; ++t) {
        auto f = random_correspondence(g);
        std::vector<ProjPoint> starts = {random_point(g), random_point(g)};
        auto orbits = sample_orbits(f, starts, 4, 20, static_cast<std::uint64_t>(t));
        for (const auto& o : orbits) {
            REQUIRE(o.indices.size() + 1 == o.points.size());
            for (std::size_t s = 0; s < o.indices.size(); ++s) {
                const auto& comp = f.components()[static_cast<std::size_t>(o.indices[s].component)];
                CHECK(o.indices[s].copy <= comp.multiplicity);
                // Chordal fiber check: the recorded image is among the component's roots.
                auto single = Correspondence::from_components({{comp.equation, 1}});
                double best = 1;
                for (const auto& b : forward_images(single, o.points[s])) best = std::min(best, chordal(b.point, o.points[s + 1]));
                CHECK(best < 1e-12);
            }
        }
    }
}

TEST_CASE("property: level-2 multiset equals images under the composite") {
    std::mt19937_64 g(47);
    for (int t = 0; t < 15; ++t) {
        auto f = random_correspondence(g);
        ProjPoint x = random_point(g);
        auto orbits = sample_orbits(f, {x}, 2, 1000, 1);
        REQUIRE(static_cast<long>(orbits.size()) == f.lambda0() * f.lambda0());
        std::vector<ProjPoint> level2;
        for (const auto& o : orbits) level2.push_back(o.points[2]);
        auto composite = compose(f, f).chain;
        CHECK(corrdyn::testing::same_multiset(level2, points_of(forward_images(composite, x)), 1e-8));
    }
}

TEST_CASE("orbit CSV layout") {
    auto f = parse_correspondence("w - 2*z");
    auto orbits = sample_orbits(f, {ProjPoint::affine(1)}, 2, 1, 0);
    std::ostringstream os;
    write_orbits_csv(os, orbits);
    std::istringstream is(os.str());
    std::string line;
    std::getline(is, line);
    CHECK(line == "start_id,orbit_id,step,re,im,chart,component,copy,deriv_sph,regular");
    std::getline(is, line);
    CHECK(line == "0,0,0,1,0,0,,,,1");
    int rows = 1;
    while (std::getline(is, line)) ++rows;
    CHECK(rows == 3);
}
