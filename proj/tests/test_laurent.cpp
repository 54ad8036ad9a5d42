#include <doctest.h>

#include <random>

#include "fixtures.hpp"
#include "tlms/laurent.hpp"

using namespace tlms;

namespace {

LaurentPoly z(Int a, Int b, Rational c = 1) { return LaurentPoly::monomial(c, Vec{a, b}); }

}  // namespace

TEST_CASE("rationals") {
    CHECK(to_string(Rational(3, 6)) == "1/2");
    CHECK(to_string(Rational(-4)) == "-4");
    CHECK(parse_rational("-2/4") == Rational(-1, 2));
    CHECK(parse_rational("+7") == Rational(7));
    CHECK_THROWS(parse_rational("1/0"));
    CHECK_THROWS(parse_rational("1/"));
    CHECK_THROWS(parse_rational("x"));
    CHECK_THROWS(parse_rational(""));
}

TEST_CASE("Laurent polynomial arithmetic") {
    CHECK(lp_mul(z(1, 0), z(-1, 0)) == LaurentPoly::constant(1));
    CHECK(lp_add(z(1, 0), lp_neg(z(1, 0))).is_zero());
    CHECK(to_string(LaurentPoly{}) == "0");
    CHECK(to_string(lp_add(z(0, 0, Rational(1, 2)), z(1, -1, -3))) == "1/2 * z^(0,0) + -3 * z^(1,-1)");

    LaurentMatrix a = LaurentMatrix::identity(2), b = LaurentMatrix::identity(2);
    a(0, 1) = lp_neg(z(2, -1));
    b(0, 1) = z(2, -1);
    CHECK(mat_mul(a, b) == LaurentMatrix::identity(2));
    CHECK(mat_mul(LaurentMatrix::identity(2), a) == a);
}

TEST_CASE("regularity and restriction") {
    const Cone q = make_cone({Vec{1, 0}, Vec{0, 1}});
    const Cone x = Cone::ray(Vec{1, 0});
    CHECK(is_regular_on(z(1, 1), q));
    CHECK_FALSE(is_regular_on(z(-1, 0), q));
    CHECK(is_regular_on(LaurentPoly::constant(1), q));
    CHECK(restrict_to_perp(z(1, 1), x).is_zero());
    CHECK(restrict_to_perp(z(0, 1), x) == z(0, 1));
    CHECK(restrict_to_perp(lp_add(LaurentPoly::constant(1), z(1, 0)), x) == LaurentPoly::constant(1));
    CHECK_THROWS_AS(restrict_to_perp(z(-1, 0), x), RegularityError);
}

TEST_CASE("rational matrices") {
    const RatMatrix m{{2, 1}, {1, 1}};
    CHECK(det(m) == 1);
    CHECK(inverse(m) == RatMatrix{{1, -1}, {-1, 2}});
    CHECK(rank(RatMatrix{{1, 2}, {2, 4}}) == 1);
    CHECK_THROWS_AS(inverse(RatMatrix{{1, 2}, {2, 4}}), DegenerateInputError);
    CHECK(to_string(RatMatrix{{Rational(1, 2), 0}, {-1, 1}}) == "1/2 0 ; -1 1");
}

TEST_CASE("monomial matrix of the tangent bundle across (0,1)") {
    const MultiSection t = fixtures::tangent_p2();
    const LaurentMatrix g = monomial_matrix(t, 0, 1);
    CHECK(g(0, 0) == z(2, 0));
    CHECK(g(1, 1) == z(1, 0));
    CHECK(g(1, 0) == z(1, 1));
    CHECK(g(0, 1).is_zero());
    const Fan2D square = build_complete_fan_2d({Vec{1, 0}, Vec{0, 1}, Vec{-1, 0}, Vec{0, -1}});
    CHECK_THROWS_AS(monomial_matrix(zero_section(square), 0, 2), NotAdjacentError);
    const MultiSection l = fixtures::line_d1();
    const LaurentMatrix h = monomial_matrix(l, 0, 1);
    CHECK(h(0, 0) == z(1, 0));
}

TEST_CASE("property: restriction is multiplicative, products associate") {
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<Int> d(-2, 2);
    const Cone ray = Cone::ray(Vec{1, 1});
    auto random_regular = [&] {
        LaurentPoly p;
        for (int i = 0; i < 3; ++i) {
            Vec e{d(rng), d(rng)};
            if (pair(e, Vec{1, 1}) < 0) e = -e;
            p.add_term(Rational(d(rng)), e);
        }
        return p;
    };
    auto random_matrix = [&] {
        LaurentMatrix m(2);
        for (std::size_t i = 0; i < 2; ++i)
            for (std::size_t j = 0; j < 2; ++j) m(i, j) = random_regular();
        return m;
    };
    for (int t = 0; t < 300; ++t) {
        const LaurentPoly p = random_regular(), q = random_regular();
        CHECK(restrict_to_perp(lp_mul(p, q), ray) == lp_mul(restrict_to_perp(p, ray), restrict_to_perp(q, ray)));
        const LaurentMatrix a = random_matrix(), b = random_matrix(), c = random_matrix();
        CHECK(mat_mul(mat_mul(a, b), c) == mat_mul(a, mat_mul(b, c)));
    }
}
