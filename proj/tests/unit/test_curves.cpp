#include <doctest.h>

#include <cmath>

#include "heis/curves.hpp"
#include "heis/geodesics.hpp"
#include "support.hpp"

using namespace heis;

namespace {

// One-sided five-point stencils at the first sample.
double first_derivative_start(const std::vector<double>& f, double h)
{
    return (-25 * f[0] + 48 * f[1] - 36 * f[2] + 16 * f[3] - 3 * f[4]) / (12 * h);
}

double second_derivative_start(const std::vector<double>& f, double h)
{
    return (35 * f[0] - 104 * f[1] + 114 * f[2] - 56 * f[3] + 11 * f[4]) / (12 * h * h);
}

Rational second_derivative(const std::vector<Rational>& c, const Rational& t)
{
    Rational sum = 0;
    Rational power = 1;
    for (std::size_t k = 2; k < c.size(); ++k) {
        sum += c[k] * static_cast<long>(k * (k - 1)) * power;
        power *= t;
    }
    return sum;
}

} // namespace

TEST_SUITE("curves")
{
    TEST_CASE("profile evaluation and domain")
    {
        const ThetaProfile p({1, 2, 3}); // 1 + 2t + 3t^2
        CHECK(p.theta(2) == 17);
        CHECK(p.derivative(1, 2) == 14);
        CHECK(p.derivative(2, 5) == 6);
        CHECK(p.derivative(3, 5) == 0);
        const ThetaProfile bounded({0, 1}, 0.5);
        CHECK_THROWS_AS(characteristic_deviation(bounded, 0.6), std::domain_error);
        CHECK_THROWS_AS(geodesic_curvature(bounded, -0.5), std::domain_error);
        CHECK_THROWS_AS(integrate_curve(bounded, 0.5, 0.01), std::domain_error);
        CHECK_THROWS_AS(integrate_curve(p, 1.0, 0.0), std::invalid_argument);
        CHECK_THROWS_AS(integrate_curve(p, 1.0, -1e-3), std::invalid_argument);
    }

    TEST_CASE("characteristic deviation and geodesic curvature")
    {
        const ThetaProfile affine({0.4, 1.7});
        CHECK(characteristic_deviation(affine, 3.0) == 1.7);
        CHECK(geodesic_curvature(affine, 3.0) == 0);
        CHECK(characteristic_deviation(ThetaProfile({0.9}), 1.0) == 0);
        CHECK(geodesic_curvature(ThetaProfile({0, 0, 1}), 0.0) == 2);
        const double a = 0.3;
        const double b = -1.4;
        const ThetaProfile quad({0, a, b / 2});
        for (double t : {-1.0, 0.0, 0.5, 2.0}) {
            CHECK(geodesic_curvature(quad, t) == doctest::Approx(b).epsilon(1e-15));
        }
    }

    TEST_CASE("t_end = 0 gives a single sample")
    {
        const Point start{1, 2, 3};
        const Trajectory tr = integrate_curve(ThetaProfile({0, 1}), 0.0, 0.1, start);
        REQUIRE(tr.samples.size() == 1);
        CHECK(tr.samples[0].point == start);
        CHECK(tr.samples[0].t == 0);
    }

    TEST_CASE("integrator matches closed-form geodesics")
    {
        const double theta0 = 0.7;
        const Trajectory line = integrate_curve(ThetaProfile({theta0}), 1.0, 1e-3);
        const Point end = line.samples.back().point;
        CHECK(std::abs(end.x - std::cos(theta0)) <= 1e-12);
        CHECK(std::abs(end.y - std::sin(theta0)) <= 1e-12);
        CHECK(std::abs(end.z) <= 1e-12);
        CHECK(line.local_order >= 5);
        CHECK(line.method == "rk4");

        for (double omega : {-6.0, -0.5, 0.5, 2.0}) {
            const GeodesicParams g{omega, -1.1, {}};
            const Trajectory tr = integrate_curve(geodesic_profile(g), 1.0, 1e-3);
            for (const auto& s : tr.samples) {
                REQUIRE(test::max_diff(s.point, geodesic_point(g, s.t)) <= 1e-10);
            }
        }
    }

    TEST_CASE("trajectory invariants on random profiles")
    {
        for (int i = 0; i < 10; ++i) {
            const ThetaProfile p(test::random_coeffs(4));
            const Trajectory tr = integrate_curve(p, 1.0, 1e-3, test::random_point());
            for (std::size_t k = 1; k < tr.samples.size(); ++k) {
                REQUIRE(tr.samples[k].t > tr.samples[k - 1].t);
            }
            CHECK(unit_speed_residual(tr) <= 1e-8);
            CHECK(horizontality_residual(tr) <= 1e-8);
            CHECK(tr.error_estimate <= 1e-12);
        }
    }

    TEST_CASE("z'(0) and z''(0) vanish")
    {
        for (int i = 0; i < 5; ++i) {
            const ThetaProfile p(test::random_coeffs(4));
            const double h = 1e-4;
            const Trajectory tr = integrate_curve(p, 4 * h, h);
            std::vector<double> z;
            for (const auto& s : tr.samples) {
                z.push_back(s.point.z);
            }
            CHECK(std::abs(first_derivative_start(z, h)) <= 1e-10);
            CHECK(std::abs(second_derivative_start(z, h)) <= 1e-10);
        }
    }

    TEST_CASE("radial identity holds along integrated curves")
    {
        for (int i = 0; i < 5; ++i) {
            std::vector<double> c = test::random_coeffs(3);
            c[1] = 0.5 + std::abs(c[1]); // h not identically zero
            const ThetaProfile p(c);
            const Trajectory tr = integrate_curve(p, 1.0, 1e-3, test::random_point());
            CHECK(radial_identity_residual(tr, p, 0.1) <= 1e-7);
        }
    }

    TEST_CASE("characteristic deviation equals finite-difference planar turning rate")
    {
        const ThetaProfile p({0.2, 0.8, -0.6, 0.3});
        const PlanarCurve pc = project(integrate_curve(p, 1.0, 1e-3));
        for (std::size_t i : {std::size_t{0}, std::size_t{1}, std::size_t{250}, std::size_t{999}, std::size_t{1000}}) {
            const PlanarJet j = planar_derivatives(pc, i);
            const double fd = j.dx * j.ddy - j.dy * j.ddx;
            REQUIRE(std::abs(fd - characteristic_deviation(p, pc.samples[i].t)) <= 1e-6);
        }
    }

    TEST_CASE("planar curvature")
    {
        const double omega = 2.5;
        const PlanarCurve circle = project(integrate_curve(ThetaProfile({0.3, omega}), 2.0, 1e-3));
        const PlanarCurve line = project(integrate_curve(ThetaProfile({0.3}), 2.0, 1e-3));
        for (double t : {0.0, 0.4567, 1.0, 2.0}) {
            CHECK(std::abs(planar_curvature(circle, t) - omega) <= 1e-6);
            CHECK(std::abs(planar_curvature(line, t)) <= 1e-9);
        }
        // circle of radius 1/omega
        const double cx = circle.samples[0].px - std::sin(0.3) / omega;
        const double cy = circle.samples[0].py + std::cos(0.3) / omega;
        for (const auto& s : circle.samples) {
            REQUIRE(std::abs(std::hypot(s.px - cx, s.py - cy) - 1 / omega) <= 1e-10);
        }
        CHECK_THROWS_AS(planar_curvature(circle, 2.5), std::domain_error);
        CHECK_THROWS_AS(planar_curvature(circle, -0.1), std::domain_error);

        for (int i = 0; i < 20; ++i) {
            const ThetaProfile p(test::random_coeffs(4));
            const PlanarCurve pc = project(integrate_curve(p, 1.0, 1e-3));
            for (int k = 0; k <= 20; ++k) {
                const double t = k / 20.0 - (k == 20 ? 0 : 1.3e-4);
                const double tt = std::max(t, 0.0);
                REQUIRE(std::abs(planar_curvature(pc, tt) - characteristic_deviation(p, tt)) <= 1e-6);
            }
        }
    }

    TEST_CASE("projection is unit speed")
    {
        const ThetaProfile p({0.1, -0.4, 0.9});
        const PlanarCurve pc = project(integrate_curve(p, 1.0, 1e-3));
        for (std::size_t i = 0; i < pc.samples.size(); i += 97) {
            const PlanarJet j = planar_derivatives(pc, i);
            REQUIRE(std::abs(std::hypot(j.dx, j.dy) - 1) <= 1e-8);
        }
    }

    TEST_CASE("dilations")
    {
        const ThetaProfile p({0, 0, 1});
        const Trajectory tr = integrate_curve(p, 1.0, 1e-3);
        const auto [same, same_profile] = dilate_curve(tr, p, 1.0);
        CHECK(same.samples.back().point == tr.samples.back().point);
        CHECK(same_profile.coeffs() == p.coeffs());

        const auto [xi, xi_profile] = dilate_curve(tr, p, 2.0);
        CHECK(geodesic_curvature(xi_profile, 0.0) == 0.5);
        CHECK(xi.samples.back().t == doctest::Approx(2.0));
        CHECK(unit_speed_residual(xi) <= 1e-8);
        CHECK_THROWS_AS(dilate_curve(tr, p, 0.0), std::invalid_argument);

        // k_r(r t) = k(t) / r^2 exactly on coefficients
        for (int i = 0; i < 20; ++i) {
            std::vector<Rational> jet;
            for (int k = 0; k < 5; ++k) {
                jet.push_back(test::random_rational());
            }
            const Rational r = abs(test::random_rational()) + make_rational(1, 2);
            const std::vector<Rational> d = dilate_jet(jet, r);
            for (std::size_t k = 0; k < jet.size(); ++k) {
                Rational rk = 1;
                for (std::size_t m = 0; m < k; ++m) {
                    rk *= r;
                }
                REQUIRE(d[k] * rk == jet[k]);
            }
            const Rational t = test::random_rational();
            REQUIRE(second_derivative(d, r * t) == second_derivative(jet, t) / (r * r));
        }
    }
}
