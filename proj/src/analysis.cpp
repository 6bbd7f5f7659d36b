#include "heis/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "heis/distance.hpp"

namespace heis {

FitReport fit_distance_expansion(const ThetaProfile& profile, double t_min, double t_max,
                                 const std::vector<int>& powers, double step, int n_samples)
{
    if (!(t_min > 0) || !(t_max > t_min)) {
        throw std::invalid_argument("fit window must satisfy 0 < t_min < t_max");
    }
    if (n_samples < 2) {
        throw std::invalid_argument("need at least two samples");
    }
    std::vector<FitSample> samples;
    samples.reserve(static_cast<std::size_t>(n_samples));
    for (int i = 0; i < n_samples; ++i) {
        const double t = t_min + (t_max - t_min) * i / (n_samples - 1);
        const Trajectory traj = integrate_curve(profile, t, step);
        const double d = distance(traj.samples.front().point, traj.samples.back().point);
        samples.push_back({t, d * d});
    }
    return fit_taylor(samples, {0.0, 0.0, 1.0}, powers);
}

Reconstruction reconstruct_isometry(const Trajectory& zeta1, const Trajectory& zeta2)
{
    const auto& s1 = zeta1.samples;
    const auto& s2 = zeta2.samples;
    if (s1.empty() || s1.size() != s2.size()) {
        throw std::invalid_argument("trajectories must share a nonempty time grid");
    }
    for (std::size_t i = 0; i < s1.size(); ++i) {
        if (std::abs(s1[i].t - s2[i].t) > 1e-12 * std::max(1.0, std::abs(s1[i].t))) {
            throw std::invalid_argument("trajectories must share a time grid");
        }
    }
    // R_alpha turns headings by -alpha.
    const double alpha = s1.front().theta - s2.front().theta;
    const Point u = mul(s2.front().point, rotate(alpha, inverse(s1.front().point)));
    Reconstruction out;
    out.isometry = {u, alpha};
    for (std::size_t i = 0; i < s1.size(); ++i) {
        const Point p = apply_isometry(out.isometry, s1[i].point);
        const Point& q = s2[i].point;
        out.residual = std::max(out.residual, std::hypot(p.x - q.x, p.y - q.y, p.z - q.z));
    }
    return out;
}

namespace {

template <typename F>
double adaptive_simpson(const F& f, double a, double b, double fa, double fm, double fb, double whole, double tol,
                        int depth)
{
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double diff = left + right - whole;
    if (depth <= 0 || std::abs(diff) <= 15.0 * tol) {
        return left + right + diff / 15.0;
    }
    return adaptive_simpson(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           adaptive_simpson(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

template <typename F>
double integrate(const F& f, double a, double b, double tol)
{
    // Split into unit pieces so the oscillation is resolved before refinement starts.
    const int pieces = std::max(1, static_cast<int>(std::ceil(std::abs(b - a) * (1.0 + std::abs(b) + std::abs(a)))));
    const double h = (b - a) / pieces;
    double sum = 0;
    for (int i = 0; i < pieces; ++i) {
        const double lo = a + i * h;
        const double hi = (i + 1 == pieces) ? b : lo + h;
        const double flo = f(lo);
        const double fhi = f(hi);
        const double fm = f(0.5 * (lo + hi));
        const double whole = (hi - lo) / 6.0 * (flo + 4.0 * fm + fhi);
        sum += adaptive_simpson(f, lo, hi, flo, fm, fhi, whole, tol / pieces, 50);
    }
    return sum;
}

} // namespace

std::pair<double, double> fresnel(double t)
{
    if (t == 0) {
        return {0.0, 0.0};
    }
    const double sign = t < 0 ? -1.0 : 1.0;
    const double end = std::abs(t);
    constexpr double tol = 1e-13;
    const double c = integrate([](double u) { return std::cos(u * u); }, 0.0, end, tol);
    const double s = integrate([](double u) { return std::sin(u * u); }, 0.0, end, tol);
    return {sign * c, sign * s};
}

namespace {

struct StartData {
    double heading;
    double rate;
};

// Heading and turning rate at the first sample for a profile with constant
// second derivative k, read at sample 2 where the centered stencil applies.
StartData start_data(const PlanarCurve& pc, double k)
{
    const PlanarJet j = planar_derivatives(pc, 2);
    const double speed2 = j.dx * j.dx + j.dy * j.dy;
    const double dt = pc.samples[2].t - pc.samples[0].t;
    const double rate = (j.dx * j.ddy - j.dy * j.ddx) / speed2 - k * dt;
    const double heading = std::atan2(j.dy, j.dx) - rate * dt - 0.5 * k * dt * dt;
    return {heading, rate};
}

} // namespace

SpiralMatch match_euler_spiral(const PlanarCurve& pc, double k_const)
{
    if (k_const == 0) {
        throw std::invalid_argument("k = 0 projects to a circle or a line, not an Euler spiral");
    }
    if (pc.samples.size() < 6) {
        throw std::invalid_argument("need at least six samples");
    }
    const StartData start = start_data(pc, k_const);
    const double sigma = k_const > 0 ? 1.0 : -1.0;
    SpiralMatch m;
    m.reflect = sigma < 0;
    m.a = std::sqrt(std::abs(k_const) / 2.0);
    m.b = sigma * start.rate / (2.0 * m.a);
    m.c = sigma * start.heading - m.b * m.b;

    const PlanarSample& p0 = pc.samples.front();
    const auto [cb, sb] = fresnel(m.b);
    const double cos_c = std::cos(m.c);
    const double sin_c = std::sin(m.c);
    for (const PlanarSample& p : pc.samples) {
        const auto [cf, sf] = fresnel(m.a * (p.t - p0.t) + m.b);
        const double fx = cf - cb;
        const double fy = sf - sb;
        const double px = p0.px + (cos_c * fx - sin_c * fy) / m.a;
        const double py = p0.py + sigma * (sin_c * fx + cos_c * fy) / m.a;
        m.residual = std::max(m.residual, std::hypot(p.px - px, p.py - py));
    }
    return m;
}

CircleMatch match_circle(const PlanarCurve& pc, double h)
{
    if (h == 0) {
        throw std::invalid_argument("h = 0 projects to a line");
    }
    if (pc.samples.size() < 6) {
        throw std::invalid_argument("need at least six samples");
    }
    const StartData start = start_data(pc, 0.0);
    const PlanarSample& p0 = pc.samples.front();
    CircleMatch out;
    out.radius = 1.0 / std::abs(h);
    out.center_x = p0.px - std::sin(start.heading) / h;
    out.center_y = p0.py + std::cos(start.heading) / h;
    for (const PlanarSample& p : pc.samples) {
        const double r = std::hypot(p.px - out.center_x, p.py - out.center_y);
        out.residual = std::max(out.residual, std::abs(r - out.radius));
    }
    return out;
}

} // namespace heis
