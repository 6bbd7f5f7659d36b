#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "heis/rational.hpp"

namespace heis {

/// Element of Q[c, s] / (c^2 + s^2 - 1), where c and s stand for cos(theta0)
/// and sin(theta0) of an unknown initial heading. Stored in the canonical form
/// p(s) + c q(s), obtained by rewriting every c^2 as 1 - s^2.
class HeadingScalar {
public:
    HeadingScalar() = default;
    HeadingScalar(long v) : HeadingScalar(Rational(v)) {}
    HeadingScalar(const Rational& v);

    static HeadingScalar cos_heading();
    static HeadingScalar sin_heading();

    /// Coefficients of s^i in the c-free part and in the c part.
    const std::vector<Rational>& plain() const { return plain_; }
    const std::vector<Rational>& with_cos() const { return with_cos_; }

    /// The rational value when no heading symbol survives.
    std::optional<Rational> as_rational() const;

    HeadingScalar& operator+=(const HeadingScalar& o);
    HeadingScalar& operator-=(const HeadingScalar& o);
    HeadingScalar& operator*=(const HeadingScalar& o);

    friend HeadingScalar operator+(HeadingScalar a, const HeadingScalar& b) { return a += b; }
    friend HeadingScalar operator-(HeadingScalar a, const HeadingScalar& b) { return a -= b; }
    friend HeadingScalar operator*(HeadingScalar a, const HeadingScalar& b) { return a *= b; }
    friend HeadingScalar operator-(HeadingScalar a)
    {
        for (auto& v : a.plain_) {
            v = -v;
        }
        for (auto& v : a.with_cos_) {
            v = -v;
        }
        return a;
    }
    friend bool operator==(const HeadingScalar& a, const HeadingScalar& b)
    {
        return a.plain_ == b.plain_ && a.with_cos_ == b.with_cos_;
    }
    friend bool operator==(const HeadingScalar& a, long v) { return a == HeadingScalar(v); }

    std::string str() const;

private:
    void normalize();

    std::vector<Rational> plain_;
    std::vector<Rational> with_cos_;
};

/// Univariate series c_0 + c_1 t + ... + c_N t^N truncated at order N.
/// Binary operations require equal orders; nothing extends N implicitly.
template <typename R>
class TruncatedSeries {
public:
    explicit TruncatedSeries(int order) : coeffs_(checked_size(order), R(0)) {}
    explicit TruncatedSeries(std::vector<R> coeffs) : coeffs_(std::move(coeffs))
    {
        if (coeffs_.empty()) {
            throw std::invalid_argument("series needs at least one coefficient");
        }
    }

    static TruncatedSeries constant(const R& c, int order)
    {
        TruncatedSeries s(order);
        s[0] = c;
        return s;
    }
    static TruncatedSeries variable(int order)
    {
        TruncatedSeries s(order);
        if (order >= 1) {
            s[1] = R(1);
        }
        return s;
    }

    int order() const { return static_cast<int>(coeffs_.size()) - 1; }
    const std::vector<R>& coeffs() const { return coeffs_; }

    R& operator[](int i) { return coeffs_.at(static_cast<std::size_t>(i)); }
    const R& operator[](int i) const { return coeffs_.at(static_cast<std::size_t>(i)); }

    friend bool operator==(const TruncatedSeries& a, const TruncatedSeries& b)
    {
        return a.coeffs_ == b.coeffs_;
    }

private:
    static std::size_t checked_size(int order)
    {
        if (order < 0) {
            throw std::invalid_argument("series order must be nonnegative");
        }
        return static_cast<std::size_t>(order) + 1;
    }

    std::vector<R> coeffs_;
};

using PowerSeries = TruncatedSeries<Rational>;
using HeadingSeries = TruncatedSeries<HeadingScalar>;

namespace detail {

template <typename R>
void require_same_order(const TruncatedSeries<R>& a, const TruncatedSeries<R>& b)
{
    if (a.order() != b.order()) {
        throw std::invalid_argument("series order mismatch");
    }
}

} // namespace detail

template <typename R>
TruncatedSeries<R> operator+(const TruncatedSeries<R>& a, const TruncatedSeries<R>& b)
{
    detail::require_same_order(a, b);
    TruncatedSeries<R> out(a.order());
    for (int i = 0; i <= a.order(); ++i) {
        out[i] = a[i] + b[i];
    }
    return out;
}

template <typename R>
TruncatedSeries<R> operator-(const TruncatedSeries<R>& a, const TruncatedSeries<R>& b)
{
    detail::require_same_order(a, b);
    TruncatedSeries<R> out(a.order());
    for (int i = 0; i <= a.order(); ++i) {
        out[i] = a[i] - b[i];
    }
    return out;
}

template <typename R>
TruncatedSeries<R> operator*(const TruncatedSeries<R>& a, const TruncatedSeries<R>& b)
{
    detail::require_same_order(a, b);
    const int n = a.order();
    TruncatedSeries<R> out(n);
    for (int i = 0; i <= n; ++i) {
        if (a[i] == 0) {
            continue;
        }
        for (int j = 0; i + j <= n; ++j) {
            out[i + j] += a[i] * b[j];
        }
    }
    return out;
}

template <typename R>
TruncatedSeries<R> scale(const TruncatedSeries<R>& a, const R& k)
{
    TruncatedSeries<R> out(a.order());
    for (int i = 0; i <= a.order(); ++i) {
        out[i] = a[i] * k;
    }
    return out;
}

/// Antiderivative vanishing at 0, truncated back to the same order.
template <typename R>
TruncatedSeries<R> integrate(const TruncatedSeries<R>& a)
{
    TruncatedSeries<R> out(a.order());
    for (int i = 1; i <= a.order(); ++i) {
        out[i] = a[i - 1] * R(make_rational(1, i));
    }
    return out;
}

/// Derivative; order drops by one.
template <typename R>
TruncatedSeries<R> derivative(const TruncatedSeries<R>& a)
{
    if (a.order() == 0) {
        throw std::invalid_argument("cannot differentiate an order-0 series");
    }
    TruncatedSeries<R> out(a.order() - 1);
    for (int i = 1; i <= a.order(); ++i) {
        out[i - 1] = a[i] * R(i);
    }
    return out;
}

/// a / t^k; the first k coefficients must vanish. Order drops by k.
template <typename R>
TruncatedSeries<R> shift_down(const TruncatedSeries<R>& a, int k)
{
    if (k < 0 || k > a.order()) {
        throw std::invalid_argument("shift_down: bad shift");
    }
    for (int i = 0; i < k; ++i) {
        if (!(a[i] == 0)) {
            throw std::invalid_argument("shift_down: series is not divisible by t^k");
        }
    }
    TruncatedSeries<R> out(a.order() - k);
    for (int i = k; i <= a.order(); ++i) {
        out[i - k] = a[i];
    }
    return out;
}

/// a * t^k; order grows by k (the product is known exactly to that order).
template <typename R>
TruncatedSeries<R> shift_up(const TruncatedSeries<R>& a, int k)
{
    if (k < 0) {
        throw std::invalid_argument("shift_up: bad shift");
    }
    TruncatedSeries<R> out(a.order() + k);
    for (int i = 0; i <= a.order(); ++i) {
        out[i + k] = a[i];
    }
    return out;
}

/// Drops terms above `order`.
template <typename R>
TruncatedSeries<R> truncate(const TruncatedSeries<R>& a, int order)
{
    if (order > a.order()) {
        throw std::invalid_argument("truncate cannot raise the order");
    }
    TruncatedSeries<R> out(order);
    for (int i = 0; i <= order; ++i) {
        out[i] = a[i];
    }
    return out;
}

/// outer(inner) by Horner's rule. inner must have a zero constant term and
/// outer must be known at least to inner's order.
template <typename R>
TruncatedSeries<R> compose(const PowerSeries& outer, const TruncatedSeries<R>& inner)
{
    if (!(inner[0] == 0)) {
        throw std::invalid_argument("compose: inner series has a nonzero constant term");
    }
    const int n = inner.order();
    if (outer.order() < n) {
        throw std::invalid_argument("compose: outer series is truncated below the inner order");
    }
    TruncatedSeries<R> acc = TruncatedSeries<R>::constant(R(outer[n]), n);
    for (int i = n - 1; i >= 0; --i) {
        acc = acc * inner;
        acc[0] += R(outer[i]);
    }
    return acc;
}

// ---------------------------------------------------------------------------
// rational-only operations

/// a / b with b_0 != 0, by solving for coefficients recursively.
PowerSeries divide(const PowerSeries& a, const PowerSeries& b);

/// Compositional inverse r with s(r(t)) = t, by Lagrange inversion
/// [t^n] r = (1/n) [w^{n-1}] (w / s(w))^n. Needs s_0 = 0 and s_1 != 0.
PowerSeries revert(const PowerSeries& s);

PowerSeries sin_series(int order);
PowerSeries cos_series(int order);
/// sin(u)/u.
PowerSeries sinc_series(int order);

/// Taylor series of psi(u) = (2u - sin 2u) / (4 (1 - cos 2u)) at 0.
PowerSeries psi_series(int order);
/// phi = psi^{-1}.
PowerSeries phi_series(int order);
/// 1 / sinc^2(phi(u)). Needs order >= 4.
PowerSeries inv_sinc2_phi_series(int order);

/// cos(theta(t)) and sin(theta(t)) where theta_0 only enters through the heading
/// symbols: cos(theta0 + s) = c cos s - s_h sin s and so on.
std::pair<HeadingSeries, HeadingSeries> heading_trig(const PowerSeries& theta);

/// Converts a series whose heading symbols have cancelled. Throws
/// std::logic_error naming `what` if any symbol survives.
PowerSeries heading_free(const HeadingSeries& s, const std::string& what);

// ---------------------------------------------------------------------------
// expansions along a curve

/// Exact Taylor data of the curve leaving the origin with heading polynomial
/// theta(t) = sum jet[i] t^i (jet[0] only fixes the symbolic heading).
struct CurveSeries {
    HeadingSeries x;
    HeadingSeries y;
    PowerSeries z;
    PowerSeries radial_sq; ///< x^2 + y^2
};

/// theta as an order-N series from polynomial coefficients.
PowerSeries theta_series(const std::vector<Rational>& jet, int order);

/// Term-by-term integration of x' = cos theta, y' = sin theta, z' = (x y' - y x') / 2.
/// Asserts that z and x^2 + y^2 are free of the heading symbols. Needs order >= 2.
CurveSeries curve_series(const std::vector<Rational>& jet, int order);

/// x^2 + y^2 along the curve. Needs order >= 6.
PowerSeries xy_sq_series(const std::vector<Rational>& jet, int order);

/// Squared sub-Riemannian distance from zeta(0) to zeta(t):
/// (x^2 + y^2) / sinc^2(phi(z / (x^2 + y^2))). Needs order >= 6.
PowerSeries distance_sq_series(const std::vector<Rational>& jet, int order);

inline constexpr int kDefaultSeriesOrder = 8;

/// Coefficients as "p/q" strings.
std::vector<std::string> fraction_strings(const PowerSeries& s);

} // namespace heis
