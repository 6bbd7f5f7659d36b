#pragma once

#include <stdexcept>

#include "heis/core.hpp"

namespace heis {

/// Raised when an iterative solver hits its iteration cap.
class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& what, double residual)
        : std::runtime_error(what), residual_(residual)
    {
    }
    double residual() const { return residual_; }

private:
    double residual_;
};

/// psi(u) = (u / sin^2 u - cot u) / 4 on (-pi, pi); odd and strictly increasing.
/// Throws std::domain_error for |u| >= pi.
double psi(double u);

/// psi'(u) = (sin u - u cos u) / (2 sin^3 u).
double psi_derivative(double u);

inline constexpr double kPsiTolerance = 1e-15;
inline constexpr int kPsiMaxIterations = 200;

/// phi(v): the u in (-pi, pi) with psi(u) = v, to |psi(u) - v| <= tol max(1, |v|)
/// or until u is pinned down to a few ulps. Bracketed Newton with bisection
/// fallback. Throws std::invalid_argument for tol <= 0 and ConvergenceError
/// after kPsiMaxIterations.
double invert_psi(double v, double tol = kPsiTolerance);

/// Sub-Riemannian distance from the origin:
/// sqrt(x^2 + y^2) / |sinc(phi(z / (x^2 + y^2)))|, and 2 sqrt(pi |z|) on the z-axis.
double distance_from_origin(const Point& p);

/// d(p, q) = distance_from_origin(p^-1 * q).
double distance(const Point& p, const Point& q);

} // namespace heis
