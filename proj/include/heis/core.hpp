#pragma once

#include <cmath>

#include "heis/rational.hpp"

namespace heis {

/// Point (x, y, z) of the Heisenberg group. The scalar is `double` for numeric
/// work and `Rational` when group identities must hold exactly.
template <typename T>
struct BasicPoint {
    T x{0};
    T y{0};
    T z{0};

    friend bool operator==(const BasicPoint&, const BasicPoint&) = default;
};

using Point = BasicPoint<double>;
using ExactPoint = BasicPoint<Rational>;

/// Tangent vector written on the frame X1 = d/dx - (y/2) d/dz,
/// X2 = d/dy + (x/2) d/dz, X3 = d/dz.
template <typename T>
struct BasicTangentVec {
    T a{0};
    T b{0};
    T c{0};

    bool horizontal() const { return c == 0; }

    friend bool operator==(const BasicTangentVec&, const BasicTangentVec&) = default;
};

using TangentVec = BasicTangentVec<double>;
using ExactTangentVec = BasicTangentVec<Rational>;

/// Velocity in ambient coordinates (dx/dt, dy/dt, dz/dt).
struct AmbientVec {
    double dx = 0;
    double dy = 0;
    double dz = 0;
};

/// L_u o R_alpha: rotate about the z-axis by `angle`, then left-translate by `translation`.
struct Isometry {
    Point translation{};
    double angle = 0;

    static Isometry identity() { return {}; }
};

// ---------------------------------------------------------------------------
// group law

template <typename T>
BasicPoint<T> mul(const BasicPoint<T>& p, const BasicPoint<T>& q)
{
    T cross = p.x * q.y - p.y * q.x;
    T z = p.z + q.z + cross / 2;
    return {T(p.x + q.x), T(p.y + q.y), z};
}

template <typename T>
BasicPoint<T> inverse(const BasicPoint<T>& p)
{
    return {T(-p.x), T(-p.y), T(-p.z)};
}

template <typename T>
BasicPoint<T> origin()
{
    return {T(0), T(0), T(0)};
}

/// Rotation about the z-axis with matrix [[cos a, sin a, 0], [-sin a, cos a, 0], [0, 0, 1]].
/// It is a group automorphism that preserves X1, X2, X3.
Point rotate(double alpha, const Point& p);

/// delta_r(x, y, z) = (r x, r y, r^2 z). Throws std::invalid_argument if r <= 0.
Point dilate(double r, const Point& p);
ExactPoint dilate(const Rational& r, const ExactPoint& p);

Point apply_isometry(const Isometry& iso, const Point& p);

/// a o b.
Isometry compose(const Isometry& a, const Isometry& b);
Isometry inverse(const Isometry& iso);

// ---------------------------------------------------------------------------
// tangent vectors

/// Norm of a horizontal vector for the metric making (X1, X2) orthonormal.
/// Throws std::invalid_argument for non-horizontal input.
double sr_norm(const TangentVec& v);

/// Push-forward of a frame vector by delta_r: (r a, r b, r^2 c).
TangentVec dilate_vector(double r, const TangentVec& v);

TangentVec to_frame(const Point& base, const AmbientVec& v);
AmbientVec to_ambient(const Point& base, const TangentVec& v);

} // namespace heis
