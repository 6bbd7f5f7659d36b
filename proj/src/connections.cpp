#include "heis/connections.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <stdexcept>

#include <Eigen/Dense>

#include "heis/distance.hpp"

namespace heis {

EpsMetric::EpsMetric(double epsilon) : epsilon_(epsilon)
{
    if (!(epsilon > 0) || !std::isfinite(epsilon)) {
        throw std::invalid_argument("eps must be positive and finite");
    }
}

ConnectionTable christoffel_table(const EpsMetric& /*eps*/)
{
    const TangentVec zero{};
    return ConnectionTable(zero, {0, 0, 0.5}, {0, 0, -0.5}, zero);
}

ConnectionTable tanaka_webster_table()
{
    return {};
}

ExactConnection koszul_table(const Rational& eps)
{
    if (sgn(eps) <= 0) {
        throw std::invalid_argument("eps must be positive");
    }
    // Orthonormal frame E = (X1, X2, eps X3); [E1, E2] = X3 = (1/eps) E3, the rest vanish.
    Rational c[3][3][3];
    for (auto& a : c) {
        for (auto& b : a) {
            for (auto& v : b) {
                v = 0;
            }
        }
    }
    c[0][1][2] = 1 / eps;
    c[1][0][2] = -1 / eps;

    // 2 g(nabla_{Ei} Ej, Ek) = g([Ei,Ej],Ek) + g([Ek,Ei],Ej) - g([Ej,Ek],Ei)
    const Rational scale[3] = {Rational(1), Rational(1), eps}; // E_i = scale_i X_i
    ExactConnection table;
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            Rational on_x[3];
            for (int k = 0; k < 3; ++k) {
                const Rational gamma = (c[i][j][k] + c[k][i][j] - c[j][k][i]) / 2;
                // E_k component -> X_k coefficient, and nabla_{Xi} Xj = nabla_{Ei} Ej / (s_i s_j).
                on_x[k] = gamma * scale[k] / (scale[i] * scale[j]);
            }
            table[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = {on_x[0], on_x[1], on_x[2]};
        }
    }
    return table;
}

double eps_inner(const TangentVec& u, const TangentVec& v, const EpsMetric& eps)
{
    const double e = eps.epsilon();
    return u.a * v.a + u.b * v.b + u.c * v.c / (e * e);
}

double eps_norm(const TangentVec& v, const EpsMetric& eps)
{
    return std::sqrt(eps_inner(v, v, eps));
}

CovariantDerivative covariant_acceleration(const ConnectionTable& table, const ThetaProfile& profile,
                                           double t, const Point& at)
{
    if (!profile.in_domain(t)) {
        throw std::domain_error("time outside the profile domain");
    }
    const double th = profile.theta(t);
    const double rate = profile.derivative(1, t);
    const double v[2] = {std::cos(th), std::sin(th)};
    TangentVec out{-v[1] * rate, v[0] * rate, 0.0};
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            const TangentVec& e = table(i + 1, j + 1);
            const double w = v[i] * v[j];
            out.a += w * e.a;
            out.b += w * e.b;
            out.c += w * e.c;
        }
    }
    return {out, at};
}

CovariantDerivative lc_cov_deriv(const ThetaProfile& profile, double t, const EpsMetric& eps, const Point& at)
{
    return covariant_acceleration(christoffel_table(eps), profile, t, at);
}

CovariantDerivative tw_cov_deriv(const ThetaProfile& profile, double t, const Point& at)
{
    return covariant_acceleration(tanaka_webster_table(), profile, t, at);
}

// ---------------------------------------------------------------------------

double eps_hamiltonian(const EpsMetric& eps, const Covector& h)
{
    const double e = eps.epsilon();
    return 0.5 * (h[0] * h[0] + h[1] * h[1] + e * e * h[2] * h[2]);
}

namespace {

using FlowState = std::array<double, 6>;

FlowState flow_rhs(double e2, const FlowState& s)
{
    const double x = s[0];
    const double y = s[1];
    const double h1 = s[3];
    const double h2 = s[4];
    const double h3 = s[5];
    return {h1, h2, -0.5 * y * h1 + 0.5 * x * h2 + e2 * h3, -h2 * h3, h1 * h3, 0.0};
}

FlowState flow_steps(double e2, FlowState s, double h, std::size_t n)
{
    auto add = [](const FlowState& a, double k, const FlowState& b) {
        FlowState r;
        for (std::size_t i = 0; i < 6; ++i) {
            r[i] = a[i] + k * b[i];
        }
        return r;
    };
    for (std::size_t step = 0; step < n; ++step) {
        const FlowState k1 = flow_rhs(e2, s);
        const FlowState k2 = flow_rhs(e2, add(s, 0.5 * h, k1));
        const FlowState k3 = flow_rhs(e2, add(s, 0.5 * h, k2));
        const FlowState k4 = flow_rhs(e2, add(s, h, k3));
        for (std::size_t i = 0; i < 6; ++i) {
            s[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        }
    }
    return s;
}

} // namespace

EpsFlowResult integrate_eps_geodesic(const EpsMetric& eps, const Point& start, const Covector& h, double t,
                                     double step)
{
    if (!(step > 0)) {
        throw std::invalid_argument("flow step must be positive");
    }
    if (!(t >= 0)) {
        throw std::invalid_argument("flow time must be nonnegative");
    }
    const double e = eps.epsilon();
    FlowState s{start.x, start.y, start.z, h[0], h[1], h[2]};
    if (t > 0) {
        const auto n = static_cast<std::size_t>(std::max(1.0, std::ceil(t / step - 1e-9)));
        s = flow_steps(e * e, s, t / static_cast<double>(n), n);
    }
    EpsFlowResult r;
    r.end = {s[0], s[1], s[2]};
    r.covector = {s[3], s[4], s[5]};
    r.energy_drift = std::abs(eps_hamiltonian(eps, r.covector) - eps_hamiltonian(eps, h));
    return r;
}

Point eps_geodesic_flow(const EpsMetric& eps, const Point& start, const Covector& h, double t, double step)
{
    return integrate_eps_geodesic(eps, start, h, t, step).end;
}

namespace {

// Unit-time covector of the sub-Riemannian geodesic from the origin to p.
Covector sr_covector(const Point& p)
{
    const double r2 = p.x * p.x + p.y * p.y;
    if (r2 == 0) {
        const double u = std::copysign(std::numbers::pi, p.z);
        return {2.0 * std::sqrt(std::numbers::pi * std::abs(p.z)), 0.0, 2.0 * u};
    }
    const double u = invert_psi(p.z / r2);
    const double sinc = (u == 0) ? 1.0 : std::sin(u) / u;
    const double length = std::sqrt(r2) / std::abs(sinc);
    const double theta0 = std::atan2(p.y, p.x) - u;
    return {length * std::cos(theta0), length * std::sin(theta0), 2.0 * u};
}

std::optional<ShootingResult> newton_shoot(const EpsMetric& eps, const Point& target, Covector lambda, double tol)
{
    const double e2 = eps.epsilon() * eps.epsilon();
    const auto n = static_cast<std::size_t>(std::clamp(std::ceil(64.0 * (1.0 + std::abs(lambda[2]))), 256.0, 20000.0));
    const double h = 1.0 / static_cast<double>(n);

    auto residual = [&](const Covector& l) {
        const FlowState s = flow_steps(e2, {0, 0, 0, l[0], l[1], l[2]}, h, n);
        return Eigen::Vector3d(s[0] - target.x, s[1] - target.y, s[2] - target.z);
    };
    auto as_vec = [](const Covector& l) { return Eigen::Vector3d(l[0], l[1], l[2]); };

    Eigen::Vector3d r = residual(lambda);
    for (int iter = 0; iter < kShootingMaxIterations; ++iter) {
        const double norm = r.cwiseAbs().maxCoeff();
        if (norm <= tol) {
            ShootingResult out;
            out.covector = lambda;
            out.length = std::sqrt(2.0 * eps_hamiltonian(eps, lambda));
            out.residual = norm;
            out.iterations = iter;
            return out;
        }
        const double scale = std::max(as_vec(lambda).cwiseAbs().maxCoeff(), 1e-8);
        Eigen::Matrix3d jac;
        for (std::size_t j = 0; j < 3; ++j) {
            const double d = 1e-6 * scale;
            Covector plus = lambda;
            Covector minus = lambda;
            plus[j] += d;
            minus[j] -= d;
            jac.col(static_cast<Eigen::Index>(j)) = (residual(plus) - residual(minus)) / (2.0 * d);
        }
        Eigen::FullPivLU<Eigen::Matrix3d> lu(jac);
        if (!lu.isInvertible()) {
            return std::nullopt;
        }
        const Eigen::Vector3d delta = lu.solve(-r);
        bool accepted = false;
        double alpha = 1.0;
        for (int tries = 0; tries < 30; ++tries, alpha *= 0.5) {
            Covector trial = lambda;
            for (std::size_t j = 0; j < 3; ++j) {
                trial[j] += alpha * delta(static_cast<Eigen::Index>(j));
            }
            const Eigen::Vector3d rt = residual(trial);
            if (rt.cwiseAbs().maxCoeff() < norm) {
                lambda = trial;
                r = rt;
                accepted = true;
                break;
            }
        }
        if (!accepted) {
            return std::nullopt;
        }
    }
    if (r.cwiseAbs().maxCoeff() <= tol) {
        ShootingResult out;
        out.covector = lambda;
        out.length = std::sqrt(2.0 * eps_hamiltonian(eps, lambda));
        out.residual = r.cwiseAbs().maxCoeff();
        out.iterations = kShootingMaxIterations;
        return out;
    }
    return std::nullopt;
}

} // namespace

ShootingResult shoot_eps_geodesic(const EpsMetric& eps, const Point& p, const Point& q, double tol)
{
    if (!(tol > 0)) {
        throw std::invalid_argument("shooting tolerance must be positive");
    }
    const Point target = mul(inverse(p), q);
    if (target == Point{}) {
        return {};
    }
    const double e2 = eps.epsilon() * eps.epsilon();
    const Covector straight{target.x, target.y, target.z / e2};

    std::optional<ShootingResult> best;
    for (const Covector& guess : {sr_covector(target), straight}) {
        auto r = newton_shoot(eps, target, guess, tol);
        if (r && (!best || r->length < best->length)) {
            best = r;
        }
    }
    if (!best) {
        throw ConvergenceError("eps geodesic shooting did not converge", std::numeric_limits<double>::infinity());
    }
    return *best;
}

double eps_distance(const EpsMetric& eps, const Point& p, const Point& q, double tol)
{
    return shoot_eps_geodesic(eps, p, q, tol).length;
}

std::vector<double> riemannian_fit_times(const EpsMetric& eps)
{
    constexpr int count = 12;
    const double lo = 0.05 * eps.epsilon();
    const double hi = 0.4 * eps.epsilon();
    std::vector<double> out;
    out.reserve(count);
    for (int i = 0; i < count; ++i) {
        out.push_back(lo * std::pow(hi / lo, static_cast<double>(i) / (count - 1)));
    }
    return out;
}

FitReport eps_expansion_check(const ThetaProfile& profile, const EpsMetric& eps, const std::vector<double>& t_samples)
{
    std::vector<FitSample> samples;
    samples.reserve(t_samples.size());
    for (double t : t_samples) {
        const Trajectory traj = integrate_curve(profile, t, t / 200.0);
        const double d = eps_distance(eps, Point{}, traj.samples.back().point);
        samples.push_back({t, d * d});
    }
    return fit_taylor(samples, {0.0, 0.0, 1.0}, {4, 5, 6});
}

} // namespace heis
