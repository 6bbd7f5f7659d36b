#include "heis/curves.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

namespace heis {

ThetaProfile::ThetaProfile(std::vector<double> coeffs, double half_width)
    : coeffs_(std::move(coeffs)), half_width_(half_width)
{
    if (!(half_width_ > 0)) {
        throw std::invalid_argument("profile half width must be positive");
    }
    for (double c : coeffs_) {
        if (!std::isfinite(c)) {
            throw std::invalid_argument("profile coefficients must be finite");
        }
    }
    if (coeffs_.empty()) {
        coeffs_.push_back(0.0);
    }
}

ThetaProfile ThetaProfile::from_exact(const std::vector<Rational>& coeffs, double half_width)
{
    std::vector<double> c;
    c.reserve(coeffs.size());
    for (const auto& q : coeffs) {
        c.push_back(to_double(q));
    }
    return ThetaProfile(std::move(c), half_width);
}

double ThetaProfile::derivative(int order, double t) const
{
    // Horner on the order-th derivative polynomial.
    double acc = 0;
    for (int i = static_cast<int>(coeffs_.size()) - 1; i >= order; --i) {
        double falling = 1;
        for (int j = 0; j < order; ++j) {
            falling *= static_cast<double>(i - j);
        }
        acc = acc * t + falling * coeffs_[static_cast<std::size_t>(i)];
    }
    return acc;
}

ThetaProfile ThetaProfile::rescaled(double r) const
{
    if (!(r > 0)) {
        throw std::invalid_argument("rescale factor must be positive");
    }
    std::vector<double> c(coeffs_.size());
    double scale = 1;
    for (std::size_t i = 0; i < c.size(); ++i) {
        c[i] = coeffs_[i] * scale;
        scale /= r;
    }
    return ThetaProfile(std::move(c), half_width_ * r);
}

namespace {

using State = std::array<double, 3>;

State rhs(const ThetaProfile& profile, double t, const State& s)
{
    const double th = profile.theta(t);
    const double c = std::cos(th);
    const double sn = std::sin(th);
    return {c, sn, 0.5 * (s[0] * sn - s[1] * c)};
}

State axpy(const State& s, double h, const State& k)
{
    return {s[0] + h * k[0], s[1] + h * k[1], s[2] + h * k[2]};
}

std::vector<TrajectorySample> rk4(const ThetaProfile& profile, double t_end, std::size_t n,
                                  const Point& start)
{
    const double h = t_end / static_cast<double>(n);
    std::vector<TrajectorySample> out;
    out.reserve(n + 1);
    State s{start.x, start.y, start.z};
    out.push_back({0.0, start, profile.theta(0.0)});
    for (std::size_t i = 0; i < n; ++i) {
        const double t = h * static_cast<double>(i);
        const State k1 = rhs(profile, t, s);
        const State k2 = rhs(profile, t + 0.5 * h, axpy(s, 0.5 * h, k1));
        const State k3 = rhs(profile, t + 0.5 * h, axpy(s, 0.5 * h, k2));
        const State k4 = rhs(profile, t + h, axpy(s, h, k3));
        for (int j = 0; j < 3; ++j) {
            s[j] += h / 6.0 * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]);
        }
        const double t_next = (i + 1 == n) ? t_end : h * static_cast<double>(i + 1);
        out.push_back({t_next, {s[0], s[1], s[2]}, profile.theta(t_next)});
    }
    return out;
}

void check_domain(const ThetaProfile& profile, double t)
{
    if (!profile.in_domain(t)) {
        throw std::domain_error("time outside the profile domain");
    }
}

} // namespace

Trajectory integrate_curve(const ThetaProfile& profile, double t_end, double step, const Point& start)
{
    if (!(step > 0) || !std::isfinite(step)) {
        throw std::invalid_argument("integration step must be positive");
    }
    if (!(t_end >= 0) || !profile.in_domain(t_end)) {
        throw std::domain_error("t_end outside [0, profile half width)");
    }
    Trajectory traj;
    if (t_end == 0) {
        traj.samples.push_back({0.0, start, profile.theta(0.0)});
        traj.step = step;
        return traj;
    }
    const auto n = static_cast<std::size_t>(std::max(1.0, std::ceil(t_end / step - 1e-9)));
    traj.samples = rk4(profile, t_end, n, start);
    traj.step = t_end / static_cast<double>(n);

    const auto fine = rk4(profile, t_end, 2 * n, start);
    const Point& a = traj.samples.back().point;
    const Point& b = fine.back().point;
    traj.error_estimate =
        std::max({std::abs(a.x - b.x), std::abs(a.y - b.y), std::abs(a.z - b.z)}) / 15.0;
    return traj;
}

double characteristic_deviation(const ThetaProfile& profile, double t)
{
    check_domain(profile, t);
    return profile.derivative(1, t);
}

double geodesic_curvature(const ThetaProfile& profile, double t)
{
    check_domain(profile, t);
    return profile.derivative(2, t);
}

PlanarCurve project(const Trajectory& traj)
{
    PlanarCurve pc;
    pc.samples.reserve(traj.samples.size());
    for (const auto& s : traj.samples) {
        pc.samples.push_back({s.t, s.point.x, s.point.y});
    }
    return pc;
}

namespace {

// First and second derivative of uniformly spaced values f at index i.
template <typename Get>
std::pair<double, double> stencil(Get f, std::size_t i, std::size_t n, double h)
{
    if (n < 6) {
        throw std::invalid_argument("finite-difference stencils need at least 6 samples");
    }
    if (i >= 2 && i + 2 < n) {
        const double d1 = (f(i - 2) - 8.0 * f(i - 1) + 8.0 * f(i + 1) - f(i + 2)) / (12.0 * h);
        const double d2 =
            (-f(i - 2) + 16.0 * f(i - 1) - 30.0 * f(i) + 16.0 * f(i + 1) - f(i + 2)) / (12.0 * h * h);
        return {d1, d2};
    }
    // One-sided: 5-point first derivative, 6-point second derivative, both O(h^4).
    const bool forward = i < 2;
    auto g = [&](std::size_t k) { return forward ? f(i + k) : f(i - k); };
    const double sign = forward ? 1.0 : -1.0;
    const double d1 =
        sign * (-25.0 * g(0) + 48.0 * g(1) - 36.0 * g(2) + 16.0 * g(3) - 3.0 * g(4)) / (12.0 * h);
    const double d2 = (45.0 * g(0) - 154.0 * g(1) + 214.0 * g(2) - 156.0 * g(3) + 61.0 * g(4) - 10.0 * g(5)) /
                      (12.0 * h * h);
    return {d1, d2};
}

double spacing(const PlanarCurve& pc)
{
    if (pc.samples.size() < 6) {
        throw std::invalid_argument("finite-difference stencils need at least 6 samples");
    }
    return (pc.samples.back().t - pc.samples.front().t) / static_cast<double>(pc.samples.size() - 1);
}

double curvature_at(const PlanarCurve& pc, std::size_t i)
{
    const PlanarJet j = planar_derivatives(pc, i);
    const double speed_sq = j.dx * j.dx + j.dy * j.dy;
    return (j.dx * j.ddy - j.dy * j.ddx) / (speed_sq * std::sqrt(speed_sq));
}

} // namespace

PlanarJet planar_derivatives(const PlanarCurve& pc, std::size_t i)
{
    const double h = spacing(pc);
    const std::size_t n = pc.samples.size();
    auto [dx, ddx] = stencil([&](std::size_t k) { return pc.samples[k].px; }, i, n, h);
    auto [dy, ddy] = stencil([&](std::size_t k) { return pc.samples[k].py; }, i, n, h);
    return {dx, dy, ddx, ddy};
}

double planar_curvature(const PlanarCurve& pc, double t)
{
    const double h = spacing(pc);
    const double t0 = pc.samples.front().t;
    const double t1 = pc.samples.back().t;
    if (t < t0 - 1e-12 * h || t > t1 + 1e-12 * h) {
        throw std::domain_error("planar_curvature: time outside the sample range");
    }
    const std::size_t n = pc.samples.size();
    const double pos = (t - t0) / h;
    const double nearest = std::round(pos);
    if (std::abs(pos - nearest) < 1e-9) {
        return curvature_at(pc, std::min(n - 1, static_cast<std::size_t>(nearest)));
    }
    // Cubic Lagrange interpolation through four neighbouring samples.
    auto base = static_cast<std::ptrdiff_t>(std::floor(pos)) - 1;
    base = std::clamp<std::ptrdiff_t>(base, 0, static_cast<std::ptrdiff_t>(n) - 4);
    double value = 0;
    for (std::ptrdiff_t a = 0; a < 4; ++a) {
        double w = 1;
        for (std::ptrdiff_t b = 0; b < 4; ++b) {
            if (b != a) {
                w *= (pos - static_cast<double>(base + b)) / static_cast<double>(a - b);
            }
        }
        value += w * curvature_at(pc, static_cast<std::size_t>(base + a));
    }
    return value;
}

std::pair<Trajectory, ThetaProfile> dilate_curve(const Trajectory& traj, const ThetaProfile& profile,
                                                 double r)
{
    if (!(r > 0)) {
        throw std::invalid_argument("dilation factor must be positive");
    }
    Trajectory out;
    out.step = traj.step * r;
    out.method = traj.method;
    out.local_order = traj.local_order;
    out.error_estimate = traj.error_estimate * std::max(r, r * r);
    out.samples.reserve(traj.samples.size());
    for (const auto& s : traj.samples) {
        out.samples.push_back({s.t * r, dilate(r, s.point), s.theta});
    }
    return {std::move(out), profile.rescaled(r)};
}

std::vector<Rational> dilate_jet(const std::vector<Rational>& coeffs, const Rational& r)
{
    if (sgn(r) <= 0) {
        throw std::invalid_argument("dilation factor must be positive");
    }
    std::vector<Rational> out(coeffs.size());
    Rational scale = 1;
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        out[i] = coeffs[i] * scale;
        scale /= r;
    }
    return out;
}

double unit_speed_residual(const Trajectory& traj)
{
    const PlanarCurve pc = project(traj);
    double worst = 0;
    for (std::size_t i = 0; i < pc.samples.size(); ++i) {
        const PlanarJet j = planar_derivatives(pc, i);
        worst = std::max(worst, std::abs(j.dx * j.dx + j.dy * j.dy - 1.0));
    }
    return worst;
}

double horizontality_residual(const Trajectory& traj)
{
    const PlanarCurve pc = project(traj);
    const double h = spacing(pc);
    const std::size_t n = traj.samples.size();
    double worst = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const PlanarJet j = planar_derivatives(pc, i);
        const double dz = stencil([&](std::size_t k) { return traj.samples[k].point.z; }, i, n, h).first;
        const Point& p = traj.samples[i].point;
        worst = std::max(worst, std::abs(dz - 0.5 * (p.x * j.dy - p.y * j.dx)));
    }
    return worst;
}

double radial_identity_residual(const Trajectory& traj, const ThetaProfile& profile, double t_min)
{
    const std::size_t n = traj.samples.size();
    if (n < 3) {
        throw std::invalid_argument("radial identity check needs at least 3 samples");
    }
    const double h = traj.step;
    // Work on L_{start^-1} o zeta, which leaves from the origin.
    const Point& p0 = traj.samples.front().point;
    std::vector<double> f(n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto& s = traj.samples[i];
        const double rx = s.point.x - p0.x;
        const double ry = s.point.y - p0.y;
        const double dz = 0.5 * (rx * std::sin(s.theta) - ry * std::cos(s.theta));
        f[i] = -profile.derivative(1, s.t) * dz + 0.5;
    }
    // Cumulative Simpson for F0 = int f and F1 = int s f; int_0^t (t - s) f = t F0 - F1.
    double f0 = 0;
    double f1 = 0;
    double worst = 0;
    for (std::size_t m = 2; m < n; m += 2) {
        const double ta = traj.samples[m - 2].t;
        const double tb = traj.samples[m - 1].t;
        const double tc = traj.samples[m].t;
        f0 += h / 3.0 * (f[m - 2] + 4.0 * f[m - 1] + f[m]);
        f1 += h / 3.0 * (ta * f[m - 2] + 4.0 * tb * f[m - 1] + tc * f[m]);
        if (tc < t_min) {
            continue;
        }
        const Point& p = traj.samples[m].point;
        const double dx = p.x - p0.x;
        const double dy = p.y - p0.y;
        const double lhs = dx * dx + dy * dy;
        const double rhs = 4.0 * (tc * f0 - f1);
        worst = std::max(worst, std::abs(lhs - rhs) / std::max(lhs, 1e-300));
    }
    return worst;
}

} // namespace heis
