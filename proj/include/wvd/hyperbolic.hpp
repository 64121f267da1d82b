#pragma once

#include <array>
#include <cmath>

#include "wvd/geom_error.hpp"

namespace wvd {

// Hyperbolic plane in the hyperboloid model: points are unit timelike vectors
// (x^2 + y^2 - z^2 = -1, z > 0), geodesics are intersections with planes
// through the origin and are stored by their unit spacelike Minkowski normal.
// Both distance bisector families we need become linear in this model, which
// is why it is used internally; disk-model coordinates never appear.

struct Vec3m {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    Vec3m operator+(const Vec3m& o) const { return {x + o.x, y + o.y, z + o.z}; }
    Vec3m operator-(const Vec3m& o) const { return {x - o.x, y - o.y, z - o.z}; }
    Vec3m operator*(double s) const { return {x * s, y * s, z * s}; }
    Vec3m operator/(double s) const { return {x / s, y / s, z / s}; }
    Vec3m operator-() const { return {-x, -y, -z}; }
};

// Minkowski inner product with signature (+, +, -).
inline double mdot(const Vec3m& a, const Vec3m& b) {
    return a.x * b.x + a.y * b.y - a.z * b.z;
}

// Minkowski cross product: orthogonal (in mdot) to both arguments.
inline Vec3m mcross(const Vec3m& a, const Vec3m& b) {
    return {a.y * b.z - a.z * b.y,
            a.z * b.x - a.x * b.z,
            -(a.x * b.y - a.y * b.x)};
}

using HPoint = Vec3m;

struct HGeodesic {
    Vec3m n; // unit spacelike normal; positive side is {q : mdot(q, n) > 0}
};

// Project an arbitrary timelike vector back to the upper hyperboloid sheet.
inline HPoint normalize_point(const Vec3m& v, const Tolerance& tol = {}) {
    const double q = -mdot(v, v);
    if (q <= tol.scaled(v.x * v.x + v.y * v.y + v.z * v.z)) {
        fail(ErrorCode::no_intersection, "normalize_point: direction is not timelike");
    }
    Vec3m p = v / std::sqrt(q);
    if (p.z < 0) p = -p;
    return p;
}

inline HGeodesic normalize_geodesic(const Vec3m& v, const Tolerance& tol = {}) {
    const double q = mdot(v, v);
    if (q <= tol.scaled(v.x * v.x + v.y * v.y + v.z * v.z)) {
        fail(ErrorCode::degenerate_bisector, "normalize_geodesic: normal is not spacelike");
    }
    return {v / std::sqrt(q)};
}

inline bool on_hyperboloid(const HPoint& p, double eps = 1e-9) {
    return p.z > 0 && std::abs(mdot(p, p) + 1.0) <= eps;
}

inline double acosh_clamped(double x, const Tolerance& tol = {}) {
    if (x < 1.0) {
        if (x < 1.0 - tol.clamp_slack) {
            fail(ErrorCode::invalid_sides, "acosh argument below 1");
        }
        return 0.0;
    }
    return std::acosh(x);
}

inline double h_distance(const HPoint& p, const HPoint& q) {
    const double c = -mdot(p, q);
    return std::acosh(c < 1.0 ? 1.0 : c); // roundoff only; c >= 1 holds exactly
}

// |result| is the distance from q to the geodesic; the sign is the side of g
// selected by its normal.
inline double signed_dist_to_geodesic(const HPoint& q, const HGeodesic& g) {
    return std::asinh(mdot(q, g.n));
}

// Geodesic through two distinct points, oriented so the positive side is the
// left of the direction p -> q.
inline HGeodesic geodesic_through(const HPoint& p, const HPoint& q, const Tolerance& tol = {}) {
    const Vec3m c = mcross(p, q);
    if (mdot(c, c) <= tol.scaled(1.0)) {
        fail(ErrorCode::coincident_points, "geodesic_through: coincident points");
    }
    return normalize_geodesic(c, tol);
}

// Orthogonal projection of p onto g (the closest point of the geodesic).
inline HPoint foot_of_perpendicular(const HPoint& p, const HGeodesic& g) {
    return normalize_point(p - g.n * mdot(p, g.n));
}

// The point with equal cosh d / cosh r ratio to both weighted points: a
// geodesic orthogonal to the segment p1 p2, positive side containing p2.
inline HGeodesic cosh_bisector(const HPoint& p1, double r1, const HPoint& p2, double r2,
                               const Tolerance& tol = {}) {
    const Vec3m c = mcross(p1, p2);
    if (mdot(c, c) <= tol.scaled(1.0)) {
        fail(ErrorCode::degenerate_bisector, "cosh_bisector: coincident points");
    }
    const double d = h_distance(p1, p2);
    if (!(r1 > 0.0) || !(r2 > 0.0) || r1 >= d || r2 >= d) {
        fail(ErrorCode::invalid_radii, "cosh_bisector: radii must lie in (0, d(p1,p2))");
    }
    // cosh d(q,p)/cosh r = -mdot(q,p)/cosh r, so the locus is the plane
    // mdot(q, p2/cosh r2 - p1/cosh r1) = 0, and p2 sits on its positive side.
    const Vec3m m = p2 / std::cosh(r2) - p1 / std::cosh(r1);
    return normalize_geodesic(m, tol);
}

namespace detail {

// A point strictly between two disjoint geodesics: midpoint of the common
// perpendicular segment.
inline HPoint between_point(const HGeodesic& g1, const HGeodesic& g2, const Tolerance& tol) {
    const Vec3m u = mcross(g1.n, g2.n); // normal of the common perpendicular
    const HGeodesic perp = normalize_geodesic(u, tol);
    const HPoint f1 = normalize_point(mcross(g1.n, perp.n), tol);
    const HPoint f2 = normalize_point(mcross(g2.n, perp.n), tol);
    return normalize_point(f1 + f2, tol);
}

} // namespace detail

// Between-branch of the locus r1 sinh d(q, g1) = r2 sinh d(q, g2) for two
// disjoint non-asymptotic geodesics: a geodesic orthogonal to their common
// perpendicular. Positive side contains g2.
inline HGeodesic sinh_bisector(const HGeodesic& g1, double r1, const HGeodesic& g2, double r2,
                               const Tolerance& tol = {}) {
    if (!(r1 > 0.0) || !(r2 > 0.0)) {
        fail(ErrorCode::invalid_radii, "sinh_bisector: radii must be positive");
    }
    const double c = mdot(g1.n, g2.n);
    if (std::abs(c) <= 1.0 + tol.scaled(1.0)) {
        fail(ErrorCode::geodesics_intersect, "sinh_bisector: geodesics intersect or are asymptotic");
    }
    // Work with copies whose normals face each other, so that the signed
    // distance to either geodesic is positive in the strip between them.
    Vec3m n1 = g1.n, n2 = g2.n;
    const HPoint mid = detail::between_point(g1, g2, tol);
    if (mdot(mid, n1) < 0) n1 = -n1;
    if (mdot(mid, n2) < 0) n2 = -n2;
    return normalize_geodesic(n1 * r1 - n2 * r2, tol);
}

// Dual point of a hyperbolic weighted face: equal cosh d(O, v)/cosh r over
// the three vertices. `ratio` stores that common value; when it is >= 1 the
// orthogonal circle exists and dual_radius = acosh(ratio) is its radius.
struct PowerCenterH {
    HPoint center;
    double ratio = 1.0;
    double dual_radius = 0.0;
};

inline PowerCenterH hyp_power_center(const std::array<HPoint, 3>& p, const std::array<double, 3>& r,
                                     const Tolerance& tol = {}) {
    // Degeneracy first: all three on one geodesic has no isolated solution.
    {
        const Vec3m c01 = mcross(p[0], p[1]);
        const double q = mdot(c01, c01);
        if (q <= tol.scaled(1.0)) {
            fail(ErrorCode::degenerate_triangle, "hyp_power_center: coincident vertices");
        }
        const HGeodesic g = normalize_geodesic(c01, tol);
        if (std::abs(mdot(p[2], g.n)) <= tol.scaled(1.0)) {
            fail(ErrorCode::degenerate_triangle, "hyp_power_center: vertices on one geodesic");
        }
    }
    const HGeodesic b01 = cosh_bisector(p[0], r[0], p[1], r[1], tol);
    const HGeodesic b12 = cosh_bisector(p[1], r[1], p[2], r[2], tol);
    const Vec3m dir = mcross(b01.n, b12.n);
    if (-mdot(dir, dir) <= tol.scaled(1.0)) {
        fail(ErrorCode::no_intersection, "hyp_power_center: bisectors meet outside the plane");
    }
    PowerCenterH out;
    out.center = normalize_point(dir, tol);
    out.ratio = -mdot(out.center, p[0]) / std::cosh(r[0]);
    out.dual_radius = out.ratio >= 1.0 ? std::acosh(out.ratio) : 0.0;
    return out;
}

// Dual point of a truncated triangle: equal level r sinh d(O, g) over three
// pairwise disjoint boundary geodesics that bound a common region.
struct BoundaryDualPoint {
    HPoint center;
    double level = 0.0; // the common value r_a * sinh d(center, g_a), > 0
};

inline BoundaryDualPoint boundary_dual_point(const std::array<HGeodesic, 3>& g,
                                             const std::array<double, 3>& r,
                                             const Tolerance& tol = {}) {
    for (int i = 0; i < 3; ++i) {
        const double c = mdot(g[i].n, g[(i + 1) % 3].n);
        if (std::abs(c) <= 1.0 + tol.scaled(1.0)) {
            fail(ErrorCode::geodesics_intersect, "boundary_dual_point: geodesics intersect");
        }
    }
    // Orient every normal toward the common region.
    std::array<Vec3m, 3> n{g[0].n, g[1].n, g[2].n};
    for (int i = 0; i < 3; ++i) {
        const HPoint m_next = detail::between_point(g[i], g[(i + 1) % 3], tol);
        const HPoint m_prev = detail::between_point(g[i], g[(i + 2) % 3], tol);
        const double s_next = mdot(m_next, n[i]);
        const double s_prev = mdot(m_prev, n[i]);
        if (s_next * s_prev < 0) {
            fail(ErrorCode::no_intersection, "boundary_dual_point: no common region");
        }
        if (s_next < 0) n[i] = -n[i];
    }
    const HGeodesic b01 = sinh_bisector({n[0]}, r[0], {n[1]}, r[1], tol);
    const HGeodesic b12 = sinh_bisector({n[1]}, r[1], {n[2]}, r[2], tol);
    const Vec3m dir = mcross(b01.n, b12.n);
    if (-mdot(dir, dir) <= tol.scaled(1.0)) {
        fail(ErrorCode::no_intersection, "boundary_dual_point: bisectors do not meet");
    }
    BoundaryDualPoint out;
    out.center = normalize_point(dir, tol);
    out.level = r[0] * mdot(out.center, n[0]);
    if (out.level <= 0) {
        // Cannot happen for disjoint sides (the far half-planes are disjoint),
        // so a non-positive level means the inputs were inconsistent.
        fail(ErrorCode::no_intersection, "boundary_dual_point: non-positive level");
    }
    return out;
}

// Quadrilateral with right angles at A, B, C: given the two perpendicular
// sides AD > BC it returns the remaining sides,
//   cosh AB = tanh AD / tanh BC,   cosh CD = sinh AD / sinh BC.
struct TrirectangleSides {
    double ab = 0.0;
    double cd = 0.0;
};

inline TrirectangleSides trirectangle_solve(double ad, double bc, const Tolerance& tol = {}) {
    if (!(bc > 0.0) || !(ad > bc)) {
        fail(ErrorCode::invalid_sides, "trirectangle_solve: requires AD > BC > 0");
    }
    TrirectangleSides out;
    out.ab = acosh_clamped(std::tanh(ad) / std::tanh(bc), tol);
    out.cd = acosh_clamped(std::sinh(ad) / std::sinh(bc), tol);
    return out;
}

// Right-angled hexagon: any three alternating sides (a, b, c) determine the
// other three. Output component k is the side opposite input component k, so
// the cyclic side order is a, c', b, a', c, b' and applying the map twice
// returns the original triple.
inline std::array<double, 3> hexagon_solve(double a, double b, double c, const Tolerance& tol = {}) {
    if (!(a > 0.0) || !(b > 0.0) || !(c > 0.0)) {
        fail(ErrorCode::invalid_hexagon, "hexagon_solve: sides must be positive");
    }
    const std::array<double, 3> s{a, b, c};
    std::array<double, 3> out{};
    for (int k = 0; k < 3; ++k) {
        const double u = s[(k + 1) % 3], v = s[(k + 2) % 3];
        const double ch = (std::cosh(s[k]) + std::cosh(u) * std::cosh(v)) / (std::sinh(u) * std::sinh(v));
        if (!(ch > 1.0) || !std::isfinite(ch)) {
            fail(ErrorCode::invalid_hexagon, "hexagon_solve: no hexagon with these sides");
        }
        out[k] = std::acosh(ch);
    }
    return out;
}

// Moving frame (point + unit tangent) used to lay out polygons and charts.
struct HFrame {
    HPoint p{0.0, 0.0, 1.0};
    Vec3m u{1.0, 0.0, 0.0};

    HFrame advanced(double t) const {
        const double ch = std::cosh(t), sh = std::sinh(t);
        HFrame f;
        f.p = p * ch + u * sh;
        f.u = p * sh + u * ch;
        // re-orthonormalize to keep long walks from drifting off the model
        f.p = f.p / std::sqrt(-mdot(f.p, f.p));
        f.u = f.u + f.p * mdot(f.u, f.p);
        f.u = f.u / std::sqrt(mdot(f.u, f.u));
        return f;
    }

    // Positive angle turns left (counterclockwise seen from the +z side).
    HFrame turned(double angle) const {
        const Vec3m w = mcross(p, u);
        HFrame f;
        f.p = p;
        f.u = u * std::cos(angle) + w * std::sin(angle);
        return f;
    }

    // Geodesic through p in direction u; positive side is to the left.
    HGeodesic geodesic() const { return {mcross(p, u)}; }
};

// Point at polar coordinates (angle from the +x axis at the origin, distance).
inline HPoint h_polar(double angle, double d) {
    return {std::sinh(d) * std::cos(angle), std::sinh(d) * std::sin(angle), std::cosh(d)};
}

// Rotation by pi about a point (a linear Minkowski isometry).
inline Vec3m point_reflection(const HPoint& m, const Vec3m& v) {
    return -v - m * (2.0 * mdot(v, m));
}

} // namespace wvd
