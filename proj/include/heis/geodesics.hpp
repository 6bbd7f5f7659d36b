#pragma once

#include "heis/core.hpp"
#include "heis/curves.hpp"

namespace heis {

/// Arc-length geodesic t -> base * gamma(t), where gamma leaves the origin with
/// heading theta0 and its projection turns at constant rate omega.
struct GeodesicParams {
    double omega = 0;
    double theta0 = 0;
    Point base{};
};

/// Below this |omega t| the closed form is replaced by its Taylor expansion.
inline constexpr double kGeodesicTaylorThreshold = 1e-6;

Point geodesic_point(const GeodesicParams& g, double t);

/// 2 pi / |omega| (the projection closes one full circle), +inf for omega = 0.
double minimality_horizon(const GeodesicParams& g);

/// theta(t) = omega t + theta0.
ThetaProfile geodesic_profile(const GeodesicParams& g);

} // namespace heis
