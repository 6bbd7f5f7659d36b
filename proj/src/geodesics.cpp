#include "heis/geodesics.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "heis/detail/trig.hpp"

namespace heis {

Point geodesic_point(const GeodesicParams& g, double t)
{
    const double a = g.omega * t;
    const double c0 = std::cos(g.theta0);
    const double s0 = std::sin(g.theta0);
    Point p;
    if (g.omega == 0 || std::abs(a) < kGeodesicTaylorThreshold) {
        const double a2 = a * a;
        // sin(a)/a, (cos(a) - 1)/a and (a - sin(a))/a^2, four terms each.
        const double sinc = 1 - a2 / 6 * (1 - a2 / 20 * (1 - a2 / 42));
        const double cosm = -a / 2 * (1 - a2 / 12 * (1 - a2 / 30 * (1 - a2 / 56)));
        const double zfac = a / 6 * (1 - a2 / 20 * (1 - a2 / 42 * (1 - a2 / 72)));
        p.x = t * (c0 * sinc + s0 * cosm);
        p.y = t * (s0 * sinc - c0 * cosm);
        p.z = 0.5 * t * t * zfac;
    } else {
        const double half = 0.5 * a;
        const double chord = 2.0 * std::sin(half) / g.omega;
        p.x = chord * std::cos(g.theta0 + half);
        p.y = chord * std::sin(g.theta0 + half);
        p.z = detail::a_minus_sin(a) / (2.0 * g.omega * g.omega);
    }
    return mul(g.base, p);
}

double minimality_horizon(const GeodesicParams& g)
{
    if (g.omega == 0) {
        return std::numeric_limits<double>::infinity();
    }
    return 2.0 * std::numbers::pi / std::abs(g.omega);
}

ThetaProfile geodesic_profile(const GeodesicParams& g)
{
    return ThetaProfile({g.theta0, g.omega});
}

} // namespace heis
