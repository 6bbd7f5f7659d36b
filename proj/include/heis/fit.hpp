#pragma once

#include <map>
#include <span>
#include <utility>
#include <vector>

namespace heis {

struct CoefficientEstimate {
    double estimate = 0;
    double std_error = 0;
};

struct FitReport {
    std::map<int, CoefficientEstimate> coefficients;
    std::pair<double, double> window{0, 0};
    std::vector<int> model_powers;
    double residual_norm = 0;

    /// Estimate of the t^power coefficient; throws std::out_of_range if not fitted.
    double coefficient(int power) const { return coefficients.at(power).estimate; }
};

struct FitSample {
    double t = 0;
    double value = 0;
};

/// Least-squares fit of value - fixed_part(t) against sum_p c_p t^p.
/// fixed_part holds polynomial coefficients (fixed_part[i] multiplies t^i).
/// Standard errors come from the normal equations. Needs at least
/// powers.size() + 2 samples at distinct positive times; throws
/// std::invalid_argument otherwise and std::runtime_error when the design
/// matrix is rank deficient.
FitReport fit_taylor(std::span<const FitSample> samples, const std::vector<double>& fixed_part,
                     std::vector<int> powers);

} // namespace heis
