#pragma once

#include <cmath>

namespace heis::detail {

/// a - sin(a) without cancellation for small |a|.
inline double a_minus_sin(double a)
{
    if (std::abs(a) < 0.5) {
        // a^3/3! - a^5/5! + ... ; the a^19 term is below 1e-22 relative.
        const double a2 = a * a;
        double term = a * a2 / 6.0;
        double sum = 0;
        for (int k = 3; k < 20; k += 2) {
            sum += term;
            term *= -a2 / static_cast<double>((k + 1) * (k + 2));
        }
        return sum;
    }
    return a - std::sin(a);
}

} // namespace heis::detail
