#include "heis/distance.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>

#include "heis/detail/trig.hpp"
#include "heis/series.hpp"

namespace heis {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kSeriesCutoff = 1e-2;
constexpr int kSeriesOrder = 13;

// Odd Taylor coefficients of psi up to u^13, from the exact series.
const std::array<double, kSeriesOrder + 1>& psi_coefficients()
{
    static const auto table = [] {
        std::array<double, kSeriesOrder + 1> c{};
        const PowerSeries s = psi_series(kSeriesOrder);
        for (int i = 0; i <= kSeriesOrder; ++i) {
            c[static_cast<std::size_t>(i)] = to_double(s[i]);
        }
        return c;
    }();
    return table;
}

double psi_unchecked(double u)
{
    if (std::abs(u) < kSeriesCutoff) {
        const auto& c = psi_coefficients();
        const double u2 = u * u;
        double acc = 0;
        for (int i = kSeriesOrder; i >= 1; i -= 2) {
            acc = acc * u2 + c[static_cast<std::size_t>(i)];
        }
        return acc * u;
    }
    const double s = std::sin(u);
    return detail::a_minus_sin(2.0 * u) / (8.0 * s * s);
}

double psi_derivative_unchecked(double u)
{
    if (std::abs(u) < kSeriesCutoff) {
        const auto& c = psi_coefficients();
        const double u2 = u * u;
        double acc = 0;
        for (int i = kSeriesOrder; i >= 1; i -= 2) {
            acc = acc * u2 + static_cast<double>(i) * c[static_cast<std::size_t>(i)];
        }
        return acc;
    }
    const double s = std::sin(u);
    return (s - u * std::cos(u)) / (2.0 * s * s * s);
}

} // namespace

double psi(double u)
{
    if (!(std::abs(u) < kPi)) {
        throw std::domain_error("psi: |u| must be < pi");
    }
    return psi_unchecked(u);
}

double psi_derivative(double u)
{
    if (!(std::abs(u) < kPi)) {
        throw std::domain_error("psi_derivative: |u| must be < pi");
    }
    return psi_derivative_unchecked(u);
}

double invert_psi(double v, double tol)
{
    if (!(tol > 0)) {
        throw std::invalid_argument("invert_psi: tolerance must be positive");
    }
    if (std::isnan(v)) {
        throw std::invalid_argument("invert_psi: NaN argument");
    }
    if (v == 0) {
        return 0;
    }
    const double target = std::abs(v);
    const double sign = v < 0 ? -1.0 : 1.0;
    const double accept = tol * std::max(1.0, target);

    double lo = 0;
    double hi = kPi; // psi(hi) is +inf for the exact pi; never evaluated
    double u;
    if (target < 0.1) {
        u = 6.0 * target - 28.8 * target * target * target;
    } else if (target > 1.0) {
        // sin^2 u ~ pi / (4 v) near u = pi
        u = kPi - std::asin(std::sqrt(kPi / (4.0 * target)));
    } else {
        u = 0.5 * kPi;
    }
    u = std::clamp(u, 0.0, std::nextafter(kPi, 0.0));
    if (u <= lo) {
        u = 0.5 * hi;
    }

    double residual = std::numeric_limits<double>::infinity();
    for (int iter = 0; iter < kPsiMaxIterations; ++iter) {
        residual = psi_unchecked(u) - target;
        if (std::abs(residual) <= accept) {
            return sign * u;
        }
        if (residual < 0) {
            lo = u;
        } else {
            hi = u;
        }
        double next = u - residual / psi_derivative_unchecked(u);
        if (!std::isfinite(next) || next <= lo || next >= hi) {
            next = 0.5 * (lo + hi);
        }
        if (std::abs(next - u) <= 4.0 * std::numeric_limits<double>::epsilon() * std::max(u, 1e-300)
            || hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * hi) {
            return sign * next;
        }
        u = next;
    }
    throw ConvergenceError("invert_psi: no convergence within the iteration cap", residual);
}

double distance_from_origin(const Point& p)
{
    const double r2 = p.x * p.x + p.y * p.y;
    const double v = p.z / r2;
    if (r2 == 0 || !std::isfinite(v)) {
        return 2.0 * std::sqrt(kPi * std::abs(p.z));
    }
    const double u = invert_psi(v);
    const double sinc = (u == 0) ? 1.0 : std::sin(u) / u;
    return std::sqrt(r2) / std::abs(sinc);
}

double distance(const Point& p, const Point& q)
{
    return distance_from_origin(mul(inverse(p), q));
}

} // namespace heis
