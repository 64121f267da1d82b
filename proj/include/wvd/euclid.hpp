#pragma once

#include <cmath>

#include "wvd/geom_error.hpp"

namespace wvd {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
    Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
    Vec2 operator*(double s) const { return {x * s, y * s}; }
    Vec2 operator/(double s) const { return {x / s, y / s}; }
};

using Point2 = Vec2;

inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm2(Vec2 a) { return dot(a, a); }
inline double norm(Vec2 a) { return std::sqrt(norm2(a)); }
inline Vec2 perp(Vec2 a) { return {-a.y, a.x}; } // rotate +90 degrees

inline double dist(Point2 a, Point2 b) { return norm(a - b); }
inline double dist2(Point2 a, Point2 b) { return norm2(a - b); }

// A vertex of the weighted configuration: position plus a weight with the
// dimension of a squared length. The kernel places no sign restriction on
// weights; admissibility is the surface layer's business.
struct WeightedPoint {
    Point2 position;
    double weight = 0.0;
};

// The point with equal power to three weighted vertices, together with that
// common power d(center, v)^2 - w_v. When power > 0 the circle of radius
// sqrt(power) around the center meets the three vertex circles orthogonally.
struct PowerCenterE {
    Point2 center;
    double power = 0.0;
};

// Oriented line {p : dot(normal, p) == offset} with unit normal. The
// positive side is where the first argument of radical_line power-dominates.
struct OrientedLine2 {
    Vec2 normal;
    double offset = 0.0;

    double side(Point2 p) const { return dot(normal, p) - offset; }
};

// Solves d(O,a)^2 - W = w_a (and same for b, c) for O and W. Subtracting the
// equations pairwise leaves a 2x2 linear system; W is recovered from vertex a.
inline PowerCenterE power_center(const WeightedPoint& a, const WeightedPoint& b,
                                 const WeightedPoint& c, const Tolerance& tol = {}) {
    const Vec2 ab = a.position - b.position;
    const Vec2 ac = a.position - c.position;

    const double det = 2.0 * cross(ab, ac);
    const double scale = std::max({norm2(ab), norm2(ac), norm2(b.position - c.position)});
    if (std::abs(det) <= 2.0 * tol.scaled(scale)) {
        fail(ErrorCode::degenerate_triangle, "power_center: collinear vertices");
    }

    // 2 (a-b) . O = (|a|^2 - w_a) - (|b|^2 - w_b), same for (a-c)
    const double rhs_ab = (norm2(a.position) - a.weight) - (norm2(b.position) - b.weight);
    const double rhs_ac = (norm2(a.position) - a.weight) - (norm2(c.position) - c.weight);

    PowerCenterE out;
    out.center.x = (rhs_ab * ac.y - rhs_ac * ab.y) / det;
    out.center.y = (rhs_ac * ab.x - rhs_ab * ac.x) / det;
    out.power = dist2(out.center, a.position) - a.weight;
    return out;
}

// Locus of equal power to a and b, perpendicular to segment ab. Positive side
// = points power-closer to a. Note the positive side contains a.position
// itself exactly when |ab|^2 + w_a - w_b > 0, which is the edge-level
// admissibility inequality.
inline OrientedLine2 radical_line(const WeightedPoint& a, const WeightedPoint& b,
                                  const Tolerance& tol = {}) {
    const Vec2 d = a.position - b.position;
    const double len = norm(d);
    if (len <= tol.scaled(std::max(norm(a.position), norm(b.position)))) {
        fail(ErrorCode::coincident_points, "radical_line: coincident centers");
    }
    OrientedLine2 line;
    line.normal = d / len;
    line.offset = ((norm2(a.position) - a.weight) - (norm2(b.position) - b.weight)) / (2.0 * len);
    return line;
}

// Distance from `center` to the line through (p, q), signed positive when
// center lies on the same side as `opposite`.
inline double signed_height(Point2 center, Point2 p, Point2 q, Point2 opposite,
                            const Tolerance& tol = {}) {
    const Vec2 e = q - p;
    const double len = norm(e);
    if (len <= tol.scaled(std::max(norm(p), norm(q)))) {
        fail(ErrorCode::degenerate_edge, "signed_height: zero-length edge");
    }
    const Vec2 n = perp(e) / len;
    const double side_opp = dot(n, opposite - p);
    if (std::abs(side_opp) <= tol.scaled(len)) {
        fail(ErrorCode::degenerate_edge, "signed_height: opposite vertex on the edge line");
    }
    const double h = dot(n, center - p);
    return side_opp > 0 ? h : -h;
}

// d(a,b)^2 - w_a - w_b: zero exactly when the two circles of radius sqrt(w)
// intersect at a right angle. Diagnostic for the disjoint-circles domain.
inline double circles_orthogonal(const WeightedPoint& a, const WeightedPoint& b,
                                 const Tolerance& = {}) {
    if (a.weight <= 0.0 || b.weight <= 0.0) {
        fail(ErrorCode::nonpositive_weight, "circles_orthogonal: weights must be positive");
    }
    return dist2(a.position, b.position) - a.weight - b.weight;
}

// Circumcenter as the zero-weight special case; kept separate so callers that
// mean plain Delaunay do not have to fabricate weights.
inline Point2 circumcenter(Point2 a, Point2 b, Point2 c, const Tolerance& tol = {}) {
    return power_center({a, 0.0}, {b, 0.0}, {c, 0.0}, tol).center;
}

} // namespace wvd
