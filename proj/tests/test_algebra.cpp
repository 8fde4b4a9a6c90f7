#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "corrdyn/algebra/factor.hpp"
#include "corrdyn/algebra/resultant.hpp"
#include "corrdyn/algebra/text.hpp"
#include "corrdyn/algebra/unipoly_c.hpp"
#include "corrdyn/error.hpp"
#include "support.hpp"

using namespace corrdyn;
using namespace corrdyn::algebra;
using corrdyn::testing::poly;
using cd = std::complex<double>;

namespace {

// Res_y(p, q)(x0, z0) = lc_y(p)(x0)^deg_y(q) * prod over roots y_i of p(x0, .) of q(y_i, z0).
cd product_over_roots(const BiPoly& p, const BiPoly& q, cd x0, cd z0) {
    std::vector<cd> py(static_cast<std::size_t>(p.deg_w() + 1));
    for (int j = 0; j <= p.deg_w(); ++j) {
        cd acc = 0;
        for (int i = p.deg_z(); i >= 0; --i) acc = acc * x0 + p.coeff(i, j).get_d();
        py[static_cast<std::size_t>(j)] = acc;
    }
    cd lead = py.back();
    cd prod = std::pow(lead, q.deg_z());
    for (cd y : corrdyn::testing::dk_roots(py)) prod *= corrdyn::testing::eval(q, y, z0);
    return prod;
}

void check_resultant_oracle(const BiPoly& p, const BiPoly& q, const BiPoly& r, std::uint64_t seed) {
    std::mt19937_64 g(seed);
    for (int t = 0; t < 20; ++t) {
        cd x0 = corrdyn::testing::random_complex(g), z0 = corrdyn::testing::random_complex(g);
        cd expect = product_over_roots(p, q, x0, z0);
        cd got = corrdyn::testing::eval(r, x0, z0);
        CHECK(std::abs(got - expect) <= 1e-8 * std::max(1.0, std::abs(expect)));
    }
}

bool equal_up_to_sign(const BiPoly& a, const BiPoly& b) { return a == b || a == -b; }

}  // namespace

TEST_CASE("parse and print round trip") {
    BiPoly p = poly("w^2 - z^2 - 1");
    CHECK(p.deg_z() == 2);
    CHECK(p.deg_w() == 2);
    CHECK(to_string(p) == "w^2 - z^2 - 1");
    CHECK(to_string(poly("(w - z^2)^2")) == "w^2 - 2*z^2*w + z^4");
    CHECK(to_string(poly("z - x^2", "x", "z"), {"x", "z"}) == "z - x^2");
    CHECK(poly("2z*w") == poly("2*z*w"));
    CHECK(to_string(poly("3")) == "3");
}

TEST_CASE("parser rejects floats and unknown symbols, clears denominators") {
    CHECK_THROWS_AS(parse_poly("w - 0.5*z"), DomainError);
    CHECK_THROWS_AS(parse_poly("w - q"), DomainError);
    CHECK_THROWS_AS(parse_poly("w - (z"), DomainError);
    CHECK_THROWS_AS(parse_poly("w / z"), DomainError);
    auto r = parse_poly("w - z^2/2 + 1/3");
    CHECK(r.scale == 6);
    CHECK(r.poly == poly("6*w - 3*z^2 + 2"));
}

TEST_CASE("zero polynomial is unique and degrees have no phantoms") {
    BiPoly z = poly("w - w");
    CHECK(z.is_zero());
    CHECK(z.deg_z() == -1);
    CHECK(z == BiPoly{});
    BiPoly p = poly("z^3*w - z^3*w + w^2");
    CHECK(p.deg_z() == 0);
    CHECK(p.deg_w() == 2);
}

TEST_CASE("resultant_middle: linear elimination is substitution") {
    BiPoly p = poly("y - x", "x", "y");
    BiPoly q = poly("z - y^2", "y", "z");
    BiPoly r = resultant_middle(p, q);
    CHECK(equal_up_to_sign(r, poly("z - x^2", "x", "z")));
}

TEST_CASE("resultant_middle: two-valued example squared against product over roots") {
    BiPoly p = poly("y^2 - x^2 - 1", "x", "y");
    BiPoly q = poly("z^2 - y^2 - 1", "y", "z");
    BiPoly r = resultant_middle(p, q);
    check_resultant_oracle(p, q, r, 11);
    CHECK(equal_up_to_sign(r, poly("(z^2 - x^2 - 2)^2", "x", "z")));
}

TEST_CASE("resultant_middle: square root then square") {
    BiPoly p = poly("y^2 - x", "x", "y");
    BiPoly q = poly("z - y^2", "y", "z");
    BiPoly r = resultant_middle(p, q);
    check_resultant_oracle(p, q, r, 12);
    CHECK(equal_up_to_sign(r, poly("(z - x)^2", "x", "z")));
}

TEST_CASE("resultant_middle rejects inputs free of the eliminated variable") {
    CHECK_THROWS_AS(resultant_middle(poly("x^2 - 1", "x", "y"), poly("z - y", "y", "z")), DomainError);
    CHECK_THROWS_AS(resultant_middle(poly("y - x", "x", "y"), poly("z - 1", "y", "z")), DomainError);
    CHECK_THROWS_AS(resultant_middle(BiPoly{}, poly("z - y", "y", "z")), DomainError);
}

TEST_CASE("resultant_middle is deterministic") {
    BiPoly p = poly("3*y^2*x - x^2 + y - 2", "x", "y");
    BiPoly q = poly("z^2*y - y^2 + 5*z", "y", "z");
    CHECK(resultant_middle(p, q) == resultant_middle(p, q));
}

TEST_CASE("resultant on random inputs matches the product formula") {
    std::mt19937_64 g(2024);
    for (int t = 0; t < 10; ++t) {
        BiPoly p = corrdyn::testing::random_poly(g, 2, 2);
        BiPoly q = corrdyn::testing::random_poly(g, 2, 2);
        if (p.deg_w() < 1 || q.deg_z() < 1 || sgn(p.coeff(p.deg_z() >= 0 ? 0 : 0, p.deg_w())) == 0) continue;
        check_resultant_oracle(p, q, resultant_middle(p, q), 100 + static_cast<std::uint64_t>(t));
    }
}

TEST_CASE("property: resultant multiplicativity in the first argument") {
    std::mt19937_64 g(7);
    int checked = 0;
    for (int t = 0; t < 30; ++t) {
        BiPoly p1 = corrdyn::testing::random_poly(g, 1, 2, 2);
        BiPoly p2 = corrdyn::testing::random_poly(g, 2, 1, 2);
        BiPoly q = corrdyn::testing::random_poly(g, 2, 2, 2);
        if (p1.deg_w() < 1 || p2.deg_w() < 1 || q.deg_z() < 1) continue;
        BiPoly lhs = resultant_middle(p1 * p2, q);
        BiPoly rhs = resultant_middle(p1, q) * resultant_middle(p2, q);
        CHECK(equal_up_to_sign(lhs, rhs));
        ++checked;
    }
    CHECK(checked >= 15);
}

TEST_CASE("property: resultant degree bounds") {
    std::mt19937_64 g(8);
    for (int t = 0; t < 30; ++t) {
        BiPoly p = corrdyn::testing::random_poly(g, 1 + t % 3, 1 + t % 2, 3);
        BiPoly q = corrdyn::testing::random_poly(g, 1 + t % 2, 1 + (t / 2) % 3, 3);
        if (p.deg_w() < 1 || q.deg_z() < 1) continue;
        BiPoly r = resultant_middle(p, q);
        CHECK(r.deg_z() <= p.deg_z() * q.deg_z());
        CHECK(r.deg_w() <= q.deg_w() * p.deg_w());
    }
}

TEST_CASE("normalize examples") {
    auto a = normalize(poly("(w - z)^2"));
    REQUIRE(a.factors.size() == 1);
    CHECK(a.factors[0].poly == poly("w - z"));
    CHECK(a.factors[0].multiplicity == 2);

    auto b = normalize(poly("6*(z^2 - w^2 - 2)^2"));
    REQUIRE(b.factors.size() == 1);
    CHECK(b.factors[0].poly == poly("w^2 - z^2 + 2"));
    CHECK(b.factors[0].multiplicity == 2);
    CHECK(b.unit == 6);

    BiPoly c = poly("(w - z)*(w + z)");
    auto dc = normalize(c);
    BiPoly prod = BiPoly::constant(dc.unit);
    for (const auto& f : dc.factors) {
        CHECK(f.multiplicity == 1);
        prod = prod * pow(f.poly, f.multiplicity);
    }
    CHECK(prod == c);
}

TEST_CASE("normalize separates pure content factors") {
    auto d = normalize(poly("(z - 1)^3*(w - z^2)^2*(w + 1)"));
    int total = 0;
    for (const auto& f : d.factors) total += f.multiplicity * (f.poly.deg_w() + f.poly.deg_z());
    CHECK(total == 3 + 2 * 3 + 1);
    bool found = false;
    for (const auto& f : d.factors)
        if (f.poly == poly("z - 1")) found = f.multiplicity == 3;
    CHECK(found);
}

TEST_CASE("property: normalize round trip and pairwise coprime squarefree factors") {
    std::mt19937_64 g(99);
    for (int t = 0; t < 25; ++t) {
        BiPoly a = corrdyn::testing::random_poly(g, 1, 1, 2);
        BiPoly b = corrdyn::testing::random_poly(g, 1, 1, 2);
        if (a.is_zero() || b.is_zero()) continue;
        BiPoly p = mpz_class(1 + t % 4) * pow(a, 1 + t % 3) * b;
        auto d = normalize(p);
        BiPoly prod = BiPoly::constant(d.unit);
        for (const auto& f : d.factors) prod = prod * pow(f.poly, f.multiplicity);
        CHECK(prod == p);
        for (std::size_t i = 0; i < d.factors.size(); ++i) {
            CHECK(content(d.factors[i].poly) == 1);
            auto self = normalize(d.factors[i].poly);
            CHECK(self.factors.size() == 1);
            CHECK(self.factors[0].multiplicity == 1);
            for (std::size_t j = i + 1; j < d.factors.size(); ++j) {
                BiPoly gg = gcd(d.factors[i].poly, d.factors[j].poly);
                CHECK(gg.deg_z() <= 0);
                CHECK(gg.deg_w() <= 0);
            }
        }
    }
}

TEST_CASE("discriminant_w") {
    // w^2 - z^2 - 1: branch points at z = +-i.
    ZPoly d1 = discriminant_w(poly("w^2 - z^2 - 1"));
    CHECK(primitive_part(d1) == ZPoly({1, 0, 1}));
    // Oracle: p(i, .) = w^2 has a double root.
    auto sp = specialize(poly("w^2 - z^2 - 1"), Var::First, cd(0, 1));
    auto rts = corrdyn::testing::dk_roots(sp.coeffs());
    CHECK(std::abs(rts[0] - rts[1]) < 1e-6);

    ZPoly d2 = discriminant_w(poly("w - z^2"));
    CHECK(d2.degree() == 0);
    CHECK(d2.leading() != 0);

    ZPoly d3 = discriminant_w(poly("w^2 - z"));
    CHECK(primitive_part(d3) == ZPoly({0, 1}));
    auto s3 = specialize(poly("w^2 - z"), Var::First, cd(0, 0));
    auto r3 = corrdyn::testing::dk_roots(std::vector<cd>(s3.coeffs()));
    CHECK(std::abs(r3[0] - r3[1]) < 1e-6);

    CHECK_THROWS_AS(discriminant_w(BiPoly{}), DomainError);
}

TEST_CASE("specialize") {
    auto a = specialize(poly("w^2 - z^2 - 1"), Var::First, 0.0);
    REQUIRE(a.degree() == 2);
    CHECK(std::abs(a.coeffs()[0] - cd(-1)) < 1e-15);
    CHECK(std::abs(a.coeffs()[1]) < 1e-15);
    CHECK(std::abs(a.coeffs()[2] - cd(1)) < 1e-15);

    auto b = specialize(poly("w^2 - z^2 - 1"), Var::First, cd(0, 1));
    REQUIRE(b.degree() == 2);
    CHECK(std::abs(b.coeffs()[0]) < 1e-15);

    auto c = specialize(poly("z - x^2", "x", "z"), Var::First, 2.0);
    REQUIRE(c.degree() == 1);
    CHECK(std::abs(c.coeffs()[0] - cd(-4)) < 1e-15);
    CHECK(std::abs(c.coeffs()[1] - cd(1)) < 1e-15);

    auto d = specialize(poly("w - z^2"), Var::Second, 9.0);
    REQUIRE(d.degree() == 2);
    CHECK(std::abs(d(3.0)) < 1e-12);
}

TEST_CASE("divides") {
    BiPoly diag = poly("w - z");
    CHECK(divides(diag, poly("(w - z)*(w + z)")));
    CHECK_FALSE(divides(diag, poly("w^2 - z^2 - 2")));
    // Composition of w = z^2 with its adjoint eliminates to (z - x)^2.
    BiPoly r = resultant_middle(poly("y^2 - x", "x", "y"), poly("z - y^2", "y", "z"));
    CHECK(divides(diag, r));
    CHECK(divides(poly("2*w - 2*z"), poly("w^2 - z^2")));
    CHECK_FALSE(divides(poly("z - 1"), poly("w - 1")));
    CHECK(divides(poly("z - 1"), poly("z*w - w")));
}

TEST_CASE("property: specialization commutes with elimination") {
    // Roots in z of Res_y(p, q)(x0, .) equal the two-step images through p then q.
    std::mt19937_64 g(5);
    int checked = 0;
    for (int t = 0; t < 15; ++t) {
        BiPoly p = corrdyn::testing::random_poly(g, 2, 2, 3);
        BiPoly q = corrdyn::testing::random_poly(g, 2, 2, 3);
        if (p.deg_w() != 2 || q.deg_z() != 2 || q.deg_w() != 2) continue;
        BiPoly r = resultant_middle(p, q);
        cd x0 = corrdyn::testing::random_complex(g);
        auto rz = specialize(r, Var::First, x0);
        if (rz.degree() != 4) continue;
        std::vector<ProjPoint> direct, two_step;
        for (cd z : corrdyn::testing::dk_roots(rz.coeffs())) direct.push_back(ProjPoint::affine(z));
        auto py = specialize(p, Var::First, x0);
        for (cd y : corrdyn::testing::dk_roots(py.coeffs())) {
            auto qz = specialize(q, Var::First, y);
            for (cd z : corrdyn::testing::dk_roots(qz.coeffs())) two_step.push_back(ProjPoint::affine(z));
        }
        CHECK(corrdyn::testing::same_multiset(direct, two_step, 1e-8));
        ++checked;
    }
    CHECK(checked >= 5);
}
