#pragma once

#include <utility>
#include <vector>

#include "heis/core.hpp"
#include "heis/curves.hpp"
#include "heis/fit.hpp"

namespace heis {

/// Fits d^2(zeta(0), zeta(t)) - t^2 against sum_p c_p t^p on n_samples evenly
/// spaced times in [t_min, t_max]; each sample integrates the curve from the
/// origin with the given RK4 step.
FitReport fit_distance_expansion(const ThetaProfile& profile, double t_min, double t_max,
                                 const std::vector<int>& powers, double step = 1e-3, int n_samples = 40);

/// Window and nuisance powers used for the sixth-order coefficient.
inline constexpr double kSixthOrderWindowMin = 0.05;
inline constexpr double kSixthOrderWindowMax = 0.5;
inline const std::vector<int> kSixthOrderPowers{6, 7, 8};

struct Reconstruction {
    Isometry isometry{};
    /// Max Euclidean coordinate distance between zeta2(t) and isometry(zeta1(t)).
    double residual = 0;
};

/// Recovers the isometry carrying zeta1 onto zeta2 from the t = 0 data alone
/// (rotate the heading difference away, then left-translate the start point)
/// and measures the mismatch along the whole grid. Throws
/// std::invalid_argument when the time grids differ.
Reconstruction reconstruct_isometry(const Trajectory& zeta1, const Trajectory& zeta2);

/// (int_0^t cos(u^2) du, int_0^t sin(u^2) du), adaptive Simpson to 1e-10 absolute.
std::pair<double, double> fresnel(double t);

struct SpiralMatch {
    double a = 0;
    double b = 0;
    double c = 0;
    bool reflect = false;
    double residual = 0;
};

/// Writes the heading as sigma ((a t + b)^2 + c), sigma = sign(k), a = sqrt(|k| / 2),
/// using the initial heading and turning rate read off the planar samples, and
/// compares the samples with
///   P(0) + (1/a) diag(1, sigma) Rot(c) (F(a t + b) - F(b)),  F = fresnel.
/// Throws std::invalid_argument for k = 0 or fewer than six samples.
SpiralMatch match_euler_spiral(const PlanarCurve& pc, double k_const);

struct CircleMatch {
    double center_x = 0;
    double center_y = 0;
    double radius = 0;
    double residual = 0; ///< max | |P(t) - center| - radius |
};

/// Circle of radius 1/|h| tangent to the curve at its first sample, on the side
/// given by sign(h). Throws std::invalid_argument for h = 0.
CircleMatch match_circle(const PlanarCurve& pc, double h);

} // namespace heis
