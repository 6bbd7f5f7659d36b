#pragma once

#include <array>
#include <vector>

#include "heis/core.hpp"
#include "heis/curves.hpp"
#include "heis/fit.hpp"

namespace heis {

/// Left-invariant Riemannian metric g_eps with (X1, X2, eps X3) orthonormal.
class EpsMetric {
public:
    /// Throws std::invalid_argument unless eps > 0 and finite.
    explicit EpsMetric(double epsilon);
    double epsilon() const { return epsilon_; }

private:
    double epsilon_;
};

/// nabla_{Xi} Xj for i, j in {1, 2}, as frame coefficients.
class ConnectionTable {
public:
    ConnectionTable() = default;
    ConnectionTable(const TangentVec& e11, const TangentVec& e12, const TangentVec& e21, const TangentVec& e22)
        : entries_{{{e11, e12}, {e21, e22}}}
    {
    }
    /// 1-based indices.
    const TangentVec& operator()(int i, int j) const
    {
        return entries_.at(static_cast<std::size_t>(i - 1)).at(static_cast<std::size_t>(j - 1));
    }

private:
    std::array<std::array<TangentVec, 2>, 2> entries_{};
};

/// Levi-Civita connection of g_eps on horizontal frame pairs:
/// nabla X1 X1 = nabla X2 X2 = 0, nabla_{X1} X2 = X3 / 2 = -nabla_{X2} X1.
/// The entries do not depend on eps.
ConnectionTable christoffel_table(const EpsMetric& eps);

/// Tanaka-Webster connection on horizontal frame pairs (all zero).
ConnectionTable tanaka_webster_table();

/// nabla_{Xi} Xj for i, j in {1, 2, 3} (0-based storage), as exact frame
/// coefficients, evaluated from the Koszul formula and the brackets
/// [X1, X2] = X3, [Xi, X3] = 0 on the orthonormal frame (X1, X2, eps X3).
using ExactConnection = std::array<std::array<ExactTangentVec, 3>, 3>;
ExactConnection koszul_table(const Rational& eps);

/// g_eps(u, v) on frame coefficients.
double eps_inner(const TangentVec& u, const TangentVec& v, const EpsMetric& eps);
double eps_norm(const TangentVec& v, const EpsMetric& eps);

struct CovariantDerivative {
    TangentVec components{};
    Point base{};
};

/// nabla_{zeta'} zeta' for zeta' = cos(theta) X1 + sin(theta) X2, expanded
/// through `table`: (d/dt of the coefficients) + sum v_i v_j nabla_{Xi} Xj.
CovariantDerivative covariant_acceleration(const ConnectionTable& table, const ThetaProfile& profile,
                                           double t, const Point& at);

/// Levi-Civita of g_eps. Throws std::domain_error outside the profile domain.
CovariantDerivative lc_cov_deriv(const ThetaProfile& profile, double t, const EpsMetric& eps,
                                 const Point& at = {});

/// Tanaka-Webster. Throws std::domain_error outside the profile domain.
CovariantDerivative tw_cov_deriv(const ThetaProfile& profile, double t, const Point& at = {});

// ---------------------------------------------------------------------------
// geodesics of g_eps

/// Covector as its pairings (h1, h2, h3) with (X1, X2, X3).
using Covector = std::array<double, 3>;

/// H = (h1^2 + h2^2 + eps^2 h3^2) / 2.
double eps_hamiltonian(const EpsMetric& eps, const Covector& h);

struct EpsFlowResult {
    Point end{};
    Covector covector{};
    double energy_drift = 0;
};

/// RK4 integration of the normal geodesic equations
///   q' = h1 X1 + h2 X2 + eps^2 h3 X3,  h1' = -h2 h3,  h2' = h1 h3,  h3' = 0.
/// Throws std::invalid_argument for step <= 0 or t < 0.
EpsFlowResult integrate_eps_geodesic(const EpsMetric& eps, const Point& start, const Covector& h, double t,
                                     double step);

Point eps_geodesic_flow(const EpsMetric& eps, const Point& start, const Covector& h, double t, double step);

struct ShootingResult {
    double length = 0;
    Covector covector{}; ///< initial covector of the unit-time geodesic
    double residual = 0;
    int iterations = 0;
};

inline constexpr double kShootingTolerance = 1e-13;
inline constexpr int kShootingMaxIterations = 50;

/// Two-point boundary problem for g_eps, solved by damped Newton on the initial
/// covector with a central-difference Jacobian. Starts from the sub-Riemannian
/// normal covector and from the straight-line covector; keeps the shorter
/// converged geodesic. Throws ConvergenceError if neither converges.
ShootingResult shoot_eps_geodesic(const EpsMetric& eps, const Point& p, const Point& q,
                                  double tol = kShootingTolerance);

double eps_distance(const EpsMetric& eps, const Point& p, const Point& q, double tol = kShootingTolerance);

/// Twelve geometrically spaced times in eps * [0.05, 0.4].
std::vector<double> riemannian_fit_times(const EpsMetric& eps);

/// Samples d_eps^2(zeta(0), zeta(t)) along the curve leaving the origin and
/// fits t^2 + c4 t^4 + c5 t^5 + c6 t^6. report.coefficient(4) approximates -h(0)^2 / 12.
FitReport eps_expansion_check(const ThetaProfile& profile, const EpsMetric& eps, const std::vector<double>& t_samples);

} // namespace heis
