#include "heis/fit.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <Eigen/Dense>

namespace heis {

FitReport fit_taylor(std::span<const FitSample> samples, const std::vector<double>& fixed_part,
                     std::vector<int> powers)
{
    std::sort(powers.begin(), powers.end());
    if (powers.empty() || std::adjacent_find(powers.begin(), powers.end()) != powers.end()) {
        throw std::invalid_argument("fit_taylor: powers must be distinct and nonempty");
    }
    const auto n = static_cast<Eigen::Index>(samples.size());
    const auto p = static_cast<Eigen::Index>(powers.size());
    if (n < p + 2) {
        throw std::invalid_argument("fit_taylor: need at least powers + 2 samples");
    }
    std::vector<double> times;
    for (const auto& s : samples) {
        if (!(s.t > 0) || !std::isfinite(s.value)) {
            throw std::invalid_argument("fit_taylor: times must be positive and values finite");
        }
        times.push_back(s.t);
    }
    std::sort(times.begin(), times.end());
    if (std::adjacent_find(times.begin(), times.end()) != times.end()) {
        throw std::invalid_argument("fit_taylor: sample times must be distinct");
    }

    Eigen::MatrixXd design(n, p);
    Eigen::VectorXd rhs(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const auto& s = samples[static_cast<std::size_t>(i)];
        double fixed = 0;
        for (auto k = fixed_part.size(); k-- > 0;) {
            fixed = fixed * s.t + fixed_part[k];
        }
        rhs(i) = s.value - fixed;
        for (Eigen::Index j = 0; j < p; ++j) {
            design(i, j) = std::pow(s.t, powers[static_cast<std::size_t>(j)]);
        }
    }
    // Column equilibration: t^p columns differ by orders of magnitude.
    const Eigen::VectorXd norms = design.colwise().norm();
    for (Eigen::Index j = 0; j < p; ++j) {
        if (norms(j) == 0) {
            throw std::runtime_error("fit_taylor: zero column in design matrix");
        }
        design.col(j) /= norms(j);
    }
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design);
    qr.setThreshold(1e-13);
    if (qr.rank() < p) {
        throw std::runtime_error("fit_taylor: rank-deficient design matrix");
    }
    const Eigen::VectorXd scaled = qr.solve(rhs);
    const Eigen::VectorXd resid = rhs - design * scaled;
    const double rss = resid.squaredNorm();
    const double sigma2 = rss / static_cast<double>(n - p);
    const Eigen::MatrixXd cov = (design.transpose() * design).inverse() * sigma2;

    FitReport report;
    report.window = {times.front(), times.back()};
    report.model_powers = powers;
    report.residual_norm = std::sqrt(rss);
    for (Eigen::Index j = 0; j < p; ++j) {
        report.coefficients[powers[static_cast<std::size_t>(j)]] = {
            scaled(j) / norms(j), std::sqrt(std::max(0.0, cov(j, j))) / norms(j)};
    }
    return report;
}

} // namespace heis
