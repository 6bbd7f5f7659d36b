#pragma once

#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "heis/core.hpp"
#include "heis/rational.hpp"

namespace heis {

/// Heading polynomial theta(t) = sum_i coeffs[i] t^i of a unit-speed horizontal
/// curve, valid on (-half_width, half_width). theta' is the characteristic
/// deviation h and theta'' the geodesic curvature k.
class ThetaProfile {
public:
    ThetaProfile() = default;
    explicit ThetaProfile(std::vector<double> coeffs,
                          double half_width = std::numeric_limits<double>::infinity());

    static ThetaProfile from_exact(const std::vector<Rational>& coeffs,
                                   double half_width = std::numeric_limits<double>::infinity());

    const std::vector<double>& coeffs() const { return coeffs_; }
    double half_width() const { return half_width_; }
    bool in_domain(double t) const { return std::abs(t) < half_width_; }

    /// order-th derivative of theta at t (order 0 is theta itself).
    double derivative(int order, double t) const;
    double theta(double t) const { return derivative(0, t); }

    /// theta(t / r), on (-r T, r T).
    ThetaProfile rescaled(double r) const;

private:
    std::vector<double> coeffs_;
    double half_width_ = std::numeric_limits<double>::infinity();
};

struct TrajectorySample {
    double t = 0;
    Point point{};
    double theta = 0;
};

struct Trajectory {
    std::vector<TrajectorySample> samples;
    double step = 0;
    std::string method = "rk4";
    int local_order = 5;
    /// Richardson estimate of the endpoint error from a step-halved rerun.
    double error_estimate = 0;
};

struct PlanarSample {
    double t = 0;
    double px = 0;
    double py = 0;
};

struct PlanarCurve {
    std::vector<PlanarSample> samples;
};

/// Integrates x' = cos theta, y' = sin theta, z' = (x sin theta - y cos theta) / 2
/// from `start` with fixed-step classical RK4. The step is shrunk so that an
/// integer number of steps lands on t_end exactly.
Trajectory integrate_curve(const ThetaProfile& profile, double t_end, double step,
                           const Point& start = {});

/// h(t) = theta'(t). Throws std::domain_error outside the profile domain.
double characteristic_deviation(const ThetaProfile& profile, double t);

/// k(t) = theta''(t). Throws std::domain_error outside the profile domain.
double geodesic_curvature(const ThetaProfile& profile, double t);

PlanarCurve project(const Trajectory& traj);

/// Derivatives of a uniformly sampled planar curve at sample i: centered
/// five-point stencils inside, one-sided O(h^4) stencils near the ends.
/// Needs at least six samples.
struct PlanarJet {
    double dx = 0;
    double dy = 0;
    double ddx = 0;
    double ddy = 0;
};
PlanarJet planar_derivatives(const PlanarCurve& pc, std::size_t i);

/// Signed Euclidean curvature (x'y'' - y'x'') / (x'^2 + y'^2)^{3/2}; positive
/// means counterclockwise turning. Between samples the stencil values are
/// interpolated with a cubic through the four nearest samples.
double planar_curvature(const PlanarCurve& pc, double t);

/// xi_r(t) = delta_r(zeta(t / r)) together with theta_r(t) = theta(t / r).
std::pair<Trajectory, ThetaProfile> dilate_curve(const Trajectory& traj, const ThetaProfile& profile,
                                                 double r);

/// Exact coefficients of theta(t / r).
std::vector<Rational> dilate_jet(const std::vector<Rational>& coeffs, const Rational& r);

// ---------------------------------------------------------------------------
// residual checks along an integrated trajectory

/// max |x'^2 + y'^2 - 1| using the planar stencils.
double unit_speed_residual(const Trajectory& traj);

/// max |z' - (x y' - y x') / 2| with all derivatives from stencils.
double horizontality_residual(const Trajectory& traj);

/// Relative mismatch between x^2 + y^2 and 4 int_0^t int_0^u (-theta' z' + 1/2) ds du,
/// the double integral evaluated by Simpson's rule on (t - s) f(s). Checked on even
/// sample indices with t in [t_min, t_end].
double radial_identity_residual(const Trajectory& traj, const ThetaProfile& profile, double t_min);

} // namespace heis
