#include <doctest.h>

#include <numbers>

#include "heis/core.hpp"
#include "heis/distance.hpp"
#include "support.hpp"

using namespace heis;

TEST_SUITE("core")
{
    TEST_CASE("group law examples")
    {
        const ExactPoint p = mul(ExactPoint{1, 0, 0}, ExactPoint{0, 1, 0});
        CHECK(p == ExactPoint{1, 1, make_rational(1, 2)});
        const ExactPoint q{3, -2, make_rational(5, 7)};
        CHECK(mul(origin<Rational>(), q) == q);
        CHECK(mul(q, inverse(q)) == origin<Rational>());
        CHECK(inverse(Point{1, 2, 3}) == Point{-1, -2, -3});
        CHECK(inverse(Point{}) == Point{});
    }

    TEST_CASE("exact group axioms on random rational triples")
    {
        for (int i = 0; i < 1000; ++i) {
            const ExactPoint p = test::random_exact_point();
            const ExactPoint q = test::random_exact_point();
            const ExactPoint r = test::random_exact_point();
            REQUIRE(mul(mul(p, q), r) == mul(p, mul(q, r)));
            REQUIRE(mul(inverse(p), p) == origin<Rational>());
            REQUIRE(mul(p, origin<Rational>()) == p);
        }
    }

    TEST_CASE("floating associativity within 1e-12")
    {
        for (int i = 0; i < 1000; ++i) {
            const Point p = test::random_point(10);
            const Point q = test::random_point(10);
            const Point r = test::random_point(10);
            REQUIRE(test::max_diff(mul(mul(p, q), r), mul(p, mul(q, r))) <= 1e-12);
        }
    }

    TEST_CASE("rotation")
    {
        const Point r = rotate(std::numbers::pi / 2, {1, 0, 5});
        CHECK(r.x == doctest::Approx(0).epsilon(1e-15));
        CHECK(r.y == doctest::Approx(-1));
        CHECK(r.z == 5);
        CHECK(rotate(0.0, Point{1, 2, 3}) == Point{1, 2, 3});
        for (int i = 0; i < 200; ++i) {
            const double a = test::uniform(-4, 4);
            const double b = test::uniform(-4, 4);
            const Point p = test::random_point(3);
            REQUIRE(test::max_diff(rotate(a, rotate(b, p)), rotate(a + b, p)) <= 1e-12);
            // automorphism
            const Point q = test::random_point(3);
            REQUIRE(test::max_diff(rotate(a, mul(p, q)), mul(rotate(a, p), rotate(a, q))) <= 1e-12);
        }
    }

    TEST_CASE("dilation")
    {
        CHECK(dilate(2.0, Point{1, 1, 1}) == Point{2, 2, 4});
        CHECK(dilate(1.0, Point{1, 2, 3}) == Point{1, 2, 3});
        CHECK_THROWS_AS(dilate(0.0, Point{}), std::invalid_argument);
        CHECK_THROWS_AS(dilate(-1.0, Point{}), std::invalid_argument);
        for (int i = 0; i < 100; ++i) {
            const Rational r = abs(test::random_rational()) + 1;
            const Rational s = abs(test::random_rational()) + make_rational(1, 3);
            const ExactPoint p = test::random_exact_point();
            const ExactPoint q = test::random_exact_point();
            REQUIRE(dilate(r, dilate(s, p)) == dilate(Rational(r * s), p));
            REQUIRE(dilate(r, mul(p, q)) == mul(dilate(r, p), dilate(r, q)));
        }
    }

    TEST_CASE("isometries")
    {
        const Point p{0.3, -0.7, 1.1};
        CHECK(apply_isometry(Isometry::identity(), p) == p);
        CHECK(apply_isometry({Point{}, 0.8}, p) == rotate(0.8, p));
        for (int i = 0; i < 200; ++i) {
            const Isometry a{test::random_point(2), test::uniform(-3, 3)};
            const Isometry b{test::random_point(2), test::uniform(-3, 3)};
            const Point q = test::random_point(2);
            const Point w = test::random_point(2);
            REQUIRE(test::max_diff(apply_isometry(compose(a, b), q), apply_isometry(a, apply_isometry(b, q))) <= 1e-12);
            REQUIRE(test::max_diff(apply_isometry(inverse(a), apply_isometry(a, q)), q) <= 1e-12);
            // distances are preserved
            REQUIRE(std::abs(distance(apply_isometry(a, q), apply_isometry(a, w)) - distance(q, w)) <= 1e-9);
        }
    }

    TEST_CASE("tangent vectors")
    {
        CHECK(sr_norm({1, 0, 0}) == 1);
        CHECK(sr_norm({3, 4, 0}) == 5);
        CHECK_THROWS_AS(sr_norm({1, 0, 0.1}), std::invalid_argument);
        CHECK(TangentVec{1, 2, 0}.horizontal());
        CHECK_FALSE(TangentVec{1, 2, 3}.horizontal());
        const TangentVec v{0.6, -0.8, 0};
        CHECK(sr_norm(dilate_vector(3.0, v)) == doctest::Approx(3.0 * sr_norm(v)));
        CHECK(dilate_vector(2.0, {1, 1, 1}).c == 4);

        // X1 at (x, y, z) is d/dx - (y/2) d/dz
        const Point base{2, 4, 1};
        const AmbientVec x1 = to_ambient(base, {1, 0, 0});
        CHECK(x1.dx == 1);
        CHECK(x1.dy == 0);
        CHECK(x1.dz == -2);
        const AmbientVec x2 = to_ambient(base, {0, 1, 0});
        CHECK(x2.dz == 1);
        for (int i = 0; i < 100; ++i) {
            const Point b = test::random_point(3);
            const TangentVec t{test::uniform(-1, 1), test::uniform(-1, 1), test::uniform(-1, 1)};
            const TangentVec back = to_frame(b, to_ambient(b, t));
            REQUIRE(std::abs(back.a - t.a) + std::abs(back.b - t.b) + std::abs(back.c - t.c) <= 1e-14);
        }
    }
}
