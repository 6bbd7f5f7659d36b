#include <doctest.h>

#include <cmath>
#include <numbers>

#include "heis/analysis.hpp"
#include "heis/series.hpp"
#include "support.hpp"

using namespace heis;

namespace {

// Romberg table on composite trapezoids: an independent high-resolution quadrature.
template <typename F>
double romberg(const F& f, double a, double b)
{
    constexpr int levels = 16;
    double table[levels][levels];
    double h = b - a;
    table[0][0] = 0.5 * h * (f(a) + f(b));
    for (int i = 1; i < levels; ++i) {
        h /= 2;
        double sum = 0;
        for (long k = 1; k < (1L << i); k += 2) {
            sum += f(a + k * h);
        }
        table[i][0] = 0.5 * table[i - 1][0] + h * sum;
        double factor = 1;
        for (int j = 1; j <= i; ++j) {
            factor *= 4;
            table[i][j] = table[i][j - 1] + (table[i][j - 1] - table[i - 1][j - 1]) / (factor - 1);
        }
    }
    return table[levels - 1][levels - 1];
}

Trajectory apply(const Isometry& iso, const Trajectory& tr)
{
    Trajectory out = tr;
    for (auto& s : out.samples) {
        s.point = apply_isometry(iso, s.point);
        s.theta -= iso.angle;
    }
    return out;
}

} // namespace

TEST_SUITE("analysis")
{
    TEST_CASE("fresnel integrals")
    {
        const auto [c0, s0] = fresnel(0.0);
        CHECK(c0 == 0);
        CHECK(s0 == 0);
        for (double t : {0.3, 1.0, 2.7, 6.0}) {
            const auto [c, s] = fresnel(t);
            const auto [cn, sn] = fresnel(-t);
            CHECK(cn == -c);
            CHECK(sn == -s);
        }
        for (double t : {1.0, 2.0, 4.0}) {
            const auto [c, s] = fresnel(t);
            CHECK(std::abs(c - romberg([](double u) { return std::cos(u * u); }, 0.0, t)) <= 1e-10);
            CHECK(std::abs(s - romberg([](double u) { return std::sin(u * u); }, 0.0, t)) <= 1e-10);
        }
    }

    TEST_CASE("Euler spiral matching")
    {
        const auto traj = [](std::vector<double> c, double t_end = 1.0) {
            return project(integrate_curve(ThetaProfile(std::move(c)), t_end, 1e-3));
        };
        const SpiralMatch m = match_euler_spiral(traj({0, 0, 1}), 2.0);
        CHECK(m.a == doctest::Approx(1));
        CHECK(std::abs(m.b) <= 1e-9);
        CHECK_FALSE(m.reflect);
        CHECK(m.residual <= 1e-7);

        const SpiralMatch neg = match_euler_spiral(traj({0, 0, -1}), -2.0);
        CHECK(neg.reflect);
        CHECK(neg.residual <= 1e-7);

        const SpiralMatch shifted = match_euler_spiral(traj({0, 1, 1}), 2.0);
        CHECK(std::abs(shifted.b - 0.5) <= 1e-9);
        CHECK(std::abs(shifted.c + 0.25) <= 1e-9);
        CHECK(shifted.residual <= 1e-7);

        for (int i = 0; i < 10; ++i) {
            const double k = test::uniform(0.5, 5) * (i % 2 ? 1 : -1);
            const double theta0 = test::uniform(-3, 3);
            const double h0 = test::uniform(-2, 2);
            const SpiralMatch r = match_euler_spiral(traj({theta0, h0, k / 2}, 2.0), k);
            CHECK(r.residual <= 1e-6);
            CHECK(r.a == doctest::Approx(std::sqrt(std::abs(k) / 2)));
        }

        CHECK_THROWS_AS(match_euler_spiral(traj({0, 1}), 0.0), std::invalid_argument);
    }

    TEST_CASE("constant turning rate projects to a circle")
    {
        for (double h : {-3.0, -0.5, 0.25, 1.0, 4.0}) {
            const PlanarCurve pc = project(integrate_curve(ThetaProfile({0.7, h}), 3.0, 1e-3));
            const CircleMatch c = match_circle(pc, h);
            CHECK(c.radius == doctest::Approx(1 / std::abs(h)));
            CHECK(c.residual <= 1e-8);
        }
        const PlanarCurve line = project(integrate_curve(ThetaProfile({0.7}), 1.0, 1e-3));
        CHECK_THROWS_AS(match_circle(line, 0.0), std::invalid_argument);
    }

    TEST_CASE("isometry reconstruction")
    {
        const ThetaProfile p({0.2, 1.0, -0.7, 0.4});
        const Trajectory z1 = integrate_curve(p, 1.0, 1e-3, {0.1, 0.2, 0.3});

        const Reconstruction same = reconstruct_isometry(z1, z1);
        CHECK(same.isometry.angle == 0);
        CHECK(test::max_diff(same.isometry.translation, Point{}) <= 1e-15);
        CHECK(same.residual == 0);

        for (int i = 0; i < 10; ++i) {
            const Isometry known{test::random_point(2), test::uniform(-3, 3)};
            const Reconstruction rec = reconstruct_isometry(z1, apply(known, z1));
            CHECK(std::abs(rec.isometry.angle - known.angle) <= 1e-12);
            CHECK(test::max_diff(rec.isometry.translation, known.translation) <= 1e-12);
            CHECK(rec.residual <= 1e-9);
        }

        // same turning-rate profile, random start points and headings
        for (int i = 0; i < 10; ++i) {
            std::vector<double> c1 = p.coeffs();
            std::vector<double> c2 = p.coeffs();
            c1[0] = test::uniform(-3, 3);
            c2[0] = test::uniform(-3, 3);
            const Trajectory a = integrate_curve(ThetaProfile(c1), 1.0, 1e-4, test::random_point());
            const Trajectory b = integrate_curve(ThetaProfile(c2), 1.0, 1e-4, test::random_point());
            CHECK(reconstruct_isometry(a, b).residual <= 1e-8);
        }

        // different profiles are detected by the residual
        const Trajectory other = integrate_curve(ThetaProfile({0.2, 1.0, 0.7}), 1.0, 1e-3);
        CHECK(reconstruct_isometry(z1, other).residual > 1e-3);

        const Trajectory coarse = integrate_curve(p, 1.0, 2e-3);
        CHECK_THROWS_AS(reconstruct_isometry(z1, coarse), std::invalid_argument);
    }

    TEST_CASE("reconstruction residual does not grow when the step is halved")
    {
        const ThetaProfile p({0.0, 0.5, 1.5, -1.0});
        std::vector<double> c2 = p.coeffs();
        c2[0] = 2.0;
        double previous = -1;
        for (double step : {1e-2, 5e-3, 2.5e-3, 1.25e-3}) {
            const Trajectory a = integrate_curve(p, 1.0, step, {0.5, -0.5, 0.2});
            const Trajectory b = integrate_curve(ThetaProfile(c2), 1.0, step, {-1.0, 0.3, 0.9});
            const double res = reconstruct_isometry(a, b).residual;
            if (previous >= 0) {
                CHECK(res <= std::max(previous / 2, 1e-12));
            }
            previous = res;
        }
    }

    TEST_CASE("sixth-order fit agrees with the exact coefficient")
    {
        for (double k : {1.0, 2.0, 5.0}) {
            const std::vector<Rational> jet{0, 0, Rational(k / 2)};
            const double exact = to_double(distance_sq_series(jet, 8)[6]);
            const FitReport fit = fit_distance_expansion(ThetaProfile({0, 0, k / 2}), kSixthOrderWindowMin,
                                                         kSixthOrderWindowMax, kSixthOrderPowers);
            CHECK(std::abs(fit.coefficient(6) - exact) / std::abs(exact) <= 0.02);
        }
        CHECK_THROWS_AS(fit_distance_expansion(ThetaProfile({0}), 0.5, 0.1, {6}), std::invalid_argument);
    }
}
