#include "heis/series.hpp"

#include <sstream>

namespace heis {

// ---------------------------------------------------------------------------
// HeadingScalar

namespace {

using Poly = std::vector<Rational>;

Poly poly_add(const Poly& a, const Poly& b, int sign)
{
    Poly out(std::max(a.size(), b.size()), Rational(0));
    for (std::size_t i = 0; i < a.size(); ++i) {
        out[i] += a[i];
    }
    for (std::size_t i = 0; i < b.size(); ++i) {
        if (sign > 0) {
            out[i] += b[i];
        } else {
            out[i] -= b[i];
        }
    }
    return out;
}

Poly poly_mul(const Poly& a, const Poly& b)
{
    if (a.empty() || b.empty()) {
        return {};
    }
    Poly out(a.size() + b.size() - 1, Rational(0));
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) {
            continue;
        }
        for (std::size_t j = 0; j < b.size(); ++j) {
            out[i + j] += a[i] * b[j];
        }
    }
    return out;
}

void trim(Poly& p)
{
    while (!p.empty() && p.back() == 0) {
        p.pop_back();
    }
}

} // namespace

HeadingScalar::HeadingScalar(const Rational& v)
{
    if (v != 0) {
        plain_.push_back(v);
    }
}

HeadingScalar HeadingScalar::cos_heading()
{
    HeadingScalar h;
    h.with_cos_ = {Rational(1)};
    return h;
}

HeadingScalar HeadingScalar::sin_heading()
{
    HeadingScalar h;
    h.plain_ = {Rational(0), Rational(1)};
    return h;
}

std::optional<Rational> HeadingScalar::as_rational() const
{
    if (!with_cos_.empty() || plain_.size() > 1) {
        return std::nullopt;
    }
    return plain_.empty() ? Rational(0) : plain_[0];
}

HeadingScalar& HeadingScalar::operator+=(const HeadingScalar& o)
{
    plain_ = poly_add(plain_, o.plain_, +1);
    with_cos_ = poly_add(with_cos_, o.with_cos_, +1);
    normalize();
    return *this;
}

HeadingScalar& HeadingScalar::operator-=(const HeadingScalar& o)
{
    plain_ = poly_add(plain_, o.plain_, -1);
    with_cos_ = poly_add(with_cos_, o.with_cos_, -1);
    normalize();
    return *this;
}

HeadingScalar& HeadingScalar::operator*=(const HeadingScalar& o)
{
    // (p1 + c q1)(p2 + c q2) = p1 p2 + (1 - s^2) q1 q2 + c (p1 q2 + q1 p2)
    static const Poly one_minus_s2 = {Rational(1), Rational(0), Rational(-1)};
    Poly p = poly_add(poly_mul(plain_, o.plain_), poly_mul(one_minus_s2, poly_mul(with_cos_, o.with_cos_)), +1);
    Poly q = poly_add(poly_mul(plain_, o.with_cos_), poly_mul(with_cos_, o.plain_), +1);
    plain_ = std::move(p);
    with_cos_ = std::move(q);
    normalize();
    return *this;
}

void HeadingScalar::normalize()
{
    trim(plain_);
    trim(with_cos_);
}

std::string HeadingScalar::str() const
{
    std::ostringstream os;
    bool first = true;
    auto emit = [&](const Poly& p, const char* prefix) {
        for (std::size_t i = 0; i < p.size(); ++i) {
            if (p[i] == 0) {
                continue;
            }
            if (!first) {
                os << " + ";
            }
            first = false;
            os << "(" << to_string(p[i]) << ")" << prefix;
            if (i > 0) {
                os << "s^" << i;
            }
        }
    };
    emit(plain_, "");
    emit(with_cos_, "c");
    if (first) {
        os << "0";
    }
    return os.str();
}

// ---------------------------------------------------------------------------
// rational series

PowerSeries divide(const PowerSeries& a, const PowerSeries& b)
{
    detail::require_same_order(a, b);
    if (b[0] == 0) {
        throw std::invalid_argument("divide: divisor has a zero constant term");
    }
    const int n = a.order();
    PowerSeries q(n);
    for (int k = 0; k <= n; ++k) {
        Rational acc = a[k];
        for (int j = 1; j <= k; ++j) {
            acc -= b[j] * q[k - j];
        }
        q[k] = acc / b[0];
    }
    return q;
}

PowerSeries revert(const PowerSeries& s)
{
    if (s.order() < 1 || s[0] != 0 || s[1] == 0) {
        throw std::invalid_argument("revert: needs s_0 = 0 and s_1 != 0");
    }
    const int n = s.order();
    PowerSeries r(n);
    // g(w) = s(w)/w and h = 1/g, both of order n - 1.
    const PowerSeries g = shift_down(s, 1);
    const PowerSeries h = divide(PowerSeries::constant(Rational(1), n - 1), g);
    PowerSeries power = PowerSeries::constant(Rational(1), n - 1);
    for (int k = 1; k <= n; ++k) {
        power = power * h;
        r[k] = power[k - 1] / k;
    }
    return r;
}

PowerSeries sin_series(int order)
{
    PowerSeries s(order);
    Rational term(1);
    for (int k = 1; k <= order; k += 2) {
        s[k] = term;
        term /= -(k + 1) * (k + 2);
    }
    return s;
}

PowerSeries cos_series(int order)
{
    PowerSeries s(order);
    Rational term(1);
    for (int k = 0; k <= order; k += 2) {
        s[k] = term;
        term /= -(k + 1) * (k + 2);
    }
    return s;
}

PowerSeries sinc_series(int order)
{
    return shift_down(sin_series(order + 1), 1);
}

PowerSeries psi_series(int order)
{
    if (order < 1) {
        throw std::invalid_argument("psi_series: order must be >= 1");
    }
    // Numerator starts at u^3 and denominator at u^2: work two orders higher
    // and cancel u^2 before dividing.
    const int m = order + 2;
    const PowerSeries two_u = scale(PowerSeries::variable(m), Rational(2));
    const PowerSeries num = two_u - compose(sin_series(m), two_u);
    const PowerSeries den =
        scale(PowerSeries::constant(Rational(1), m) - compose(cos_series(m), two_u), Rational(4));
    return divide(shift_down(num, 2), shift_down(den, 2));
}

PowerSeries phi_series(int order)
{
    return revert(psi_series(order));
}

PowerSeries inv_sinc2_phi_series(int order)
{
    if (order < 4) {
        throw std::invalid_argument("inv_sinc2_phi_series: order must be >= 4");
    }
    const PowerSeries sc = compose(sinc_series(order), phi_series(order));
    return divide(PowerSeries::constant(Rational(1), order), sc * sc);
}

std::pair<HeadingSeries, HeadingSeries> heading_trig(const PowerSeries& theta)
{
    const int n = theta.order();
    PowerSeries shifted = theta;
    shifted[0] = 0;
    const PowerSeries cs = compose(cos_series(n), shifted);
    const PowerSeries sn = compose(sin_series(n), shifted);
    const HeadingScalar c = HeadingScalar::cos_heading();
    const HeadingScalar s = HeadingScalar::sin_heading();
    HeadingSeries cos_theta(n);
    HeadingSeries sin_theta(n);
    for (int i = 0; i <= n; ++i) {
        cos_theta[i] = c * HeadingScalar(cs[i]) - s * HeadingScalar(sn[i]);
        sin_theta[i] = s * HeadingScalar(cs[i]) + c * HeadingScalar(sn[i]);
    }
    return {cos_theta, sin_theta};
}

PowerSeries heading_free(const HeadingSeries& s, const std::string& what)
{
    PowerSeries out(s.order());
    for (int i = 0; i <= s.order(); ++i) {
        auto v = s[i].as_rational();
        if (!v) {
            throw std::logic_error(what + ": heading symbols did not cancel at t^" + std::to_string(i) + " ("
                                   + s[i].str() + ")");
        }
        out[i] = *v;
    }
    return out;
}

// ---------------------------------------------------------------------------
// curve expansions

PowerSeries theta_series(const std::vector<Rational>& jet, int order)
{
    PowerSeries th(order);
    for (std::size_t i = 0; i < jet.size() && static_cast<int>(i) <= order; ++i) {
        th[static_cast<int>(i)] = jet[i];
    }
    return th;
}

CurveSeries curve_series(const std::vector<Rational>& jet, int order)
{
    if (order < 2) {
        throw std::invalid_argument("curve_series: order must be >= 2");
    }
    auto [dx, dy] = heading_trig(theta_series(jet, order));
    HeadingSeries x = integrate(dx);
    HeadingSeries y = integrate(dy);
    const HeadingSeries dz = scale(x * dy - y * dx, HeadingScalar(make_rational(1, 2)));
    CurveSeries out{x, y, heading_free(integrate(dz), "z"), heading_free(x * x + y * y, "x^2 + y^2")};
    return out;
}

PowerSeries xy_sq_series(const std::vector<Rational>& jet, int order)
{
    if (order < 6) {
        throw std::invalid_argument("xy_sq_series: order must be >= 6");
    }
    return curve_series(jet, order).radial_sq;
}

PowerSeries distance_sq_series(const std::vector<Rational>& jet, int order)
{
    if (order < 6) {
        throw std::invalid_argument("distance_sq_series: order must be >= 6");
    }
    const CurveSeries cs = curve_series(jet, order);
    // z starts at t^3 and x^2 + y^2 at t^2, so z / (x^2 + y^2) = (z/t^2) / (r^2/t^2)
    // is a genuine series of order N - 2 without constant term.
    const PowerSeries radial_reduced = shift_down(cs.radial_sq, 2);
    const PowerSeries ratio = divide(shift_down(cs.z, 2), radial_reduced);
    const PowerSeries factor = compose(inv_sinc2_phi_series(order - 2), ratio);
    return shift_up(radial_reduced * factor, 2);
}

std::vector<std::string> fraction_strings(const PowerSeries& s)
{
    std::vector<std::string> out;
    out.reserve(s.coeffs().size());
    for (const auto& c : s.coeffs()) {
        out.push_back(to_string(c));
    }
    return out;
}

} // namespace heis
