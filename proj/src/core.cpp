#include "heis/core.hpp"

#include <stdexcept>

namespace heis {

Point rotate(double alpha, const Point& p)
{
    const double c = std::cos(alpha);
    const double s = std::sin(alpha);
    return {c * p.x + s * p.y, -s * p.x + c * p.y, p.z};
}

Point dilate(double r, const Point& p)
{
    if (!(r > 0)) {
        throw std::invalid_argument("dilation factor must be positive");
    }
    return {r * p.x, r * p.y, r * r * p.z};
}

ExactPoint dilate(const Rational& r, const ExactPoint& p)
{
    if (sgn(r) <= 0) {
        throw std::invalid_argument("dilation factor must be positive");
    }
    return {Rational(r * p.x), Rational(r * p.y), Rational(r * r * p.z)};
}

Point apply_isometry(const Isometry& iso, const Point& p)
{
    return mul(iso.translation, rotate(iso.angle, p));
}

Isometry compose(const Isometry& a, const Isometry& b)
{
    // L_ua R_aa L_ub R_ab = L_{ua * R_aa(ub)} R_{aa + ab} since R is an automorphism.
    return {mul(a.translation, rotate(a.angle, b.translation)), a.angle + b.angle};
}

Isometry inverse(const Isometry& iso)
{
    // (L_u R_a)^-1 = R_-a L_u^-1 = L_{R_-a(u^-1)} R_-a
    return {rotate(-iso.angle, inverse(iso.translation)), -iso.angle};
}

double sr_norm(const TangentVec& v)
{
    if (!v.horizontal()) {
        throw std::invalid_argument("sr_norm: vector has a nonzero X3 component");
    }
    return std::hypot(v.a, v.b);
}

TangentVec dilate_vector(double r, const TangentVec& v)
{
    if (!(r > 0)) {
        throw std::invalid_argument("dilation factor must be positive");
    }
    return {r * v.a, r * v.b, r * r * v.c};
}

TangentVec to_frame(const Point& base, const AmbientVec& v)
{
    return {v.dx, v.dy, v.dz + 0.5 * (base.y * v.dx - base.x * v.dy)};
}

AmbientVec to_ambient(const Point& base, const TangentVec& v)
{
    return {v.a, v.b, v.c - 0.5 * base.y * v.a + 0.5 * base.x * v.b};
}

} // namespace heis
