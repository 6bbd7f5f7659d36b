#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "heis/core.hpp"
#include "heis/rational.hpp"

namespace test {

inline std::mt19937_64& rng()
{
    static std::mt19937_64 engine(20261016);
    return engine;
}

inline double uniform(double lo, double hi)
{
    return std::uniform_real_distribution<double>(lo, hi)(rng());
}

inline long uniform_int(long lo, long hi)
{
    return std::uniform_int_distribution<long>(lo, hi)(rng());
}

inline heis::Point random_point(double scale = 1.0)
{
    return {uniform(-scale, scale), uniform(-scale, scale), uniform(-scale, scale)};
}

inline heis::Rational random_rational(long max_num = 9, long max_den = 9)
{
    return heis::make_rational(uniform_int(-max_num, max_num), uniform_int(1, max_den));
}

inline heis::ExactPoint random_exact_point()
{
    return {random_rational(), random_rational(), random_rational()};
}

inline double max_diff(const heis::Point& a, const heis::Point& b)
{
    return std::fmax(std::fabs(a.x - b.x), std::fmax(std::fabs(a.y - b.y), std::fabs(a.z - b.z)));
}

/// Random polynomial heading with coefficients in [-1, 1], degree <= max_degree.
inline std::vector<double> random_coeffs(int max_degree)
{
    std::vector<double> c(static_cast<std::size_t>(max_degree) + 1);
    for (double& v : c) {
        v = uniform(-1.0, 1.0);
    }
    return c;
}

} // namespace test
