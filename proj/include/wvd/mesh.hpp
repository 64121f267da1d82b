#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "wvd/euclid.hpp"
#include "wvd/geom_error.hpp"
#include "wvd/hyperbolic.hpp"

namespace wvd {

enum class Geometry { flat, hyperbolic, boundary };

inline const char* to_string(Geometry g) {
    switch (g) {
        case Geometry::flat:       return "flat";
        case Geometry::hyperbolic: return "hyperbolic";
        case Geometry::boundary:   return "boundary";
    }
    return "?";
}

// Intrinsic surface: Delta-complex connectivity plus one positive length per
// edge. Self-gluings and multi-edges are allowed; the structure is oriented
// by construction (twin halfedges traverse the edge in opposite directions).
// Halfedge h = 3*f + c runs from corner c to corner c+1 of face f. For
// geometry `boundary` the lengths are orthogeodesic seam lengths of a
// truncated triangulation and no triangle inequality applies.
struct DeltaTriangulation {
    Geometry geometry = Geometry::flat;
    std::vector<std::array<int, 3>> faces; // vertex label per corner
    std::vector<int> twin;                 // per halfedge
    std::vector<int> edge_of;              // halfedge -> edge id
    std::vector<int> edge_halfedge;        // edge -> one of its halfedges
    std::vector<double> lengths;           // per edge
    int num_vertices = 0;

    int n_faces() const { return static_cast<int>(faces.size()); }
    int n_halfedges() const { return 3 * n_faces(); }
    int n_edges() const { return static_cast<int>(lengths.size()); }

    static int face_of(int h) { return h / 3; }
    static int corner_of(int h) { return h % 3; }
    static int next(int h) { return 3 * (h / 3) + (h % 3 + 1) % 3; }
    static int prev(int h) { return 3 * (h / 3) + (h % 3 + 2) % 3; }

    int tail(int h) const { return faces[face_of(h)][corner_of(h)]; }
    int head(int h) const { return faces[face_of(h)][(corner_of(h) + 1) % 3]; }
    int apex(int h) const { return faces[face_of(h)][(corner_of(h) + 2) % 3]; }

    double len_h(int h) const { return lengths[edge_of[h]]; }

    // Rotation around the tail vertex of h: the next outgoing halfedge.
    int next_out(int h) const { return next(twin[h]); }

    int euler_characteristic() const { return num_vertices - n_edges() + n_faces(); }

    // Edge whose two halfedges lie in one face: two sides of a single
    // triangle are identified (always an isosceles face).
    bool self_glued(int e) const {
        const int h = edge_halfedge[e];
        return face_of(h) == face_of(twin[h]);
    }
};

using HalfedgeRef = std::pair<int, int>; // (face, corner)
using GluingPair = std::pair<HalfedgeRef, HalfedgeRef>;

// Interior angles of a triangle with side lengths (a, b, c); the angle at
// index 0 lies between sides a and c, opposite b, and cyclically.
inline std::array<double, 3> triangle_angles(double a, double b, double c, Geometry geom,
                                             const Tolerance& tol = {}) {
    const double scale = std::max({a, b, c});
    if (!(a > 0) || !(b > 0) || !(c > 0) ||
        a >= b + c - tol.scaled(scale) || b >= c + a - tol.scaled(scale) ||
        c >= a + b - tol.scaled(scale)) {
        fail(ErrorCode::infeasible_face, "triangle_angles: sides violate the triangle inequality");
    }
    // half-angle forms stay well conditioned on thin triangles, where the
    // law-of-cosines quotient loses half its digits near +-1
    std::array<double, 3> out{};
    const double s = 0.5 * (a + b + c);
    if (geom == Geometry::flat) {
        const double fa = s - a, fb = s - b, fc = s - c;
        out[0] = 2.0 * std::atan2(std::sqrt(fa * fc), std::sqrt(s * fb));
        out[1] = 2.0 * std::atan2(std::sqrt(fb * fa), std::sqrt(s * fc));
        out[2] = 2.0 * std::atan2(std::sqrt(fc * fb), std::sqrt(s * fa));
    } else {
        const double hs = std::sinh(s);
        const double fa = std::sinh(s - a), fb = std::sinh(s - b), fc = std::sinh(s - c);
        out[0] = 2.0 * std::atan2(std::sqrt(fa * fc), std::sqrt(hs * fb));
        out[1] = 2.0 * std::atan2(std::sqrt(fb * fa), std::sqrt(hs * fc));
        out[2] = 2.0 * std::atan2(std::sqrt(fc * fb), std::sqrt(hs * fa));
    }
    return out;
}

// Angles of face f at its three corners.
inline std::array<double, 3> corner_angles(const DeltaTriangulation& m, int f,
                                           const Tolerance& tol = {}) {
    const double a = m.lengths[m.edge_of[3 * f + 0]];
    const double b = m.lengths[m.edge_of[3 * f + 1]];
    const double c = m.lengths[m.edge_of[3 * f + 2]];
    return triangle_angles(a, b, c, m.geometry, tol);
}

struct ConeData {
    std::vector<double> angle;     // cone angle per vertex
    std::vector<double> curvature; // 2*pi - angle
};

inline ConeData cone_angles(const DeltaTriangulation& m, const Tolerance& tol = {}) {
    constexpr double two_pi = 6.283185307179586476925286766559;
    ConeData out;
    out.angle.assign(m.num_vertices, 0.0);
    for (int f = 0; f < m.n_faces(); ++f) {
        const auto ang = corner_angles(m, f, tol);
        for (int c = 0; c < 3; ++c) out.angle[m.faces[f][c]] += ang[c];
    }
    out.curvature.resize(m.num_vertices);
    for (int v = 0; v < m.num_vertices; ++v) out.curvature[v] = two_pi - out.angle[v];
    return out;
}

inline double face_area(const DeltaTriangulation& m, int f, const Tolerance& tol = {}) {
    if (m.geometry == Geometry::flat) {
        const double a = m.lengths[m.edge_of[3 * f + 0]];
        const double b = m.lengths[m.edge_of[3 * f + 1]];
        const double c = m.lengths[m.edge_of[3 * f + 2]];
        const double s = 0.5 * (a + b + c);
        return std::sqrt(std::max(0.0, s * (s - a) * (s - b) * (s - c)));
    }
    const auto ang = corner_angles(m, f, tol);
    return 3.14159265358979323846 - ang[0] - ang[1] - ang[2]; // angle defect
}

inline double total_area(const DeltaTriangulation& m, const Tolerance& tol = {}) {
    double sum = 0.0;
    for (int f = 0; f < m.n_faces(); ++f) sum += face_area(m, f, tol);
    return sum;
}

// Planar or hyperboloid chart of the two faces adjacent to an edge, with the
// shared edge from v_i at the origin to v_j on the positive first axis and
// the apexes v_k (above) and v_l (below). Identified mesh vertices appear as
// distinct chart points.
struct HingeChart {
    bool hyperbolic = false;
    std::array<Point2, 4> e{};  // chart positions (flat): i, j, k, l
    std::array<HPoint, 4> h{};  // chart positions (hyperbolic)
    std::array<int, 4> vertex{};
    int halfedge_a = -1; // i -> j, in face_k
    int halfedge_b = -1; // j -> i, in face_l
    int face_k = -1;
    int face_l = -1;
    bool self_glued = false;
    double scale = 0.0; // longest of the five edge lengths
};

inline HingeChart unfold_hinge(const DeltaTriangulation& m, int e, const Tolerance& tol = {}) {
    const int ha = m.edge_halfedge[e];
    const int hb = m.twin[ha];

    HingeChart chart;
    chart.hyperbolic = m.geometry != Geometry::flat;
    chart.halfedge_a = ha;
    chart.halfedge_b = hb;
    chart.face_k = DeltaTriangulation::face_of(ha);
    chart.face_l = DeltaTriangulation::face_of(hb);
    chart.self_glued = chart.face_k == chart.face_l;
    chart.vertex = {m.tail(ha), m.head(ha), m.apex(ha), m.apex(hb)};

    const double l_ij = m.len_h(ha);
    const double l_jk = m.len_h(DeltaTriangulation::next(ha));
    const double l_ki = m.len_h(DeltaTriangulation::prev(ha));
    const double l_il = m.len_h(DeltaTriangulation::next(hb));
    const double l_lj = m.len_h(DeltaTriangulation::prev(hb));
    chart.scale = std::max({l_ij, l_jk, l_ki, l_il, l_lj});

    // angle at v_i inside each face
    const double alpha = triangle_angles(l_ij, l_jk, l_ki, m.geometry, tol)[0];
    const double beta = triangle_angles(l_ij, l_lj, l_il, m.geometry, tol)[0];

    if (!chart.hyperbolic) {
        chart.e[0] = {0.0, 0.0};
        chart.e[1] = {l_ij, 0.0};
        chart.e[2] = {l_ki * std::cos(alpha), l_ki * std::sin(alpha)};
        chart.e[3] = {l_il * std::cos(beta), -l_il * std::sin(beta)};
    } else {
        chart.h[0] = {0.0, 0.0, 1.0};
        chart.h[1] = h_polar(0.0, l_ij);
        chart.h[2] = h_polar(alpha, l_ki);
        chart.h[3] = h_polar(-beta, l_il);
    }
    return chart;
}

namespace detail {

// Combinatorial part of the 2-2 flip: rewires the hinge of edge e to the
// other diagonal and installs the supplied length. Callers are responsible
// for the geometric validity of the switch.
inline void rewire_hinge(DeltaTriangulation& m, int e, double new_len) {
    const int a0 = m.edge_halfedge[e], b0 = m.twin[a0];
    const int a1 = DeltaTriangulation::next(a0), a2 = DeltaTriangulation::prev(a0);
    const int b1 = DeltaTriangulation::next(b0), b2 = DeltaTriangulation::prev(b0);
    const int vi = m.tail(a0), vj = m.head(a0);
    const int vk = m.apex(a0), vl = m.apex(b0);
    const int fa = DeltaTriangulation::face_of(a0), fb = DeltaTriangulation::face_of(b0);

    // New faces (k,i,l) and (l,j,k); outer halfedges move slots:
    //   old k->i (a2) -> a0,  old i->l (b1) -> a1,
    //   old l->j (b2) -> b0,  old j->k (a1) -> b1,
    // and the new diagonal l->k / k->l occupies a2 / b2.
    const std::array<int, 4> old_slot{a1, a2, b1, b2};
    const std::array<int, 4> new_slot{b1, a0, a1, b0};
    auto relocated = [&](int h) {
        for (int s = 0; s < 4; ++s)
            if (old_slot[s] == h) return new_slot[s];
        return h;
    };
    std::array<int, 4> old_twin{}, old_edge{};
    for (int s = 0; s < 4; ++s) {
        old_twin[s] = m.twin[old_slot[s]];
        old_edge[s] = m.edge_of[old_slot[s]];
    }
    for (int s = 0; s < 4; ++s) {
        const int dst = new_slot[s];
        const int partner = relocated(old_twin[s]);
        m.twin[dst] = partner;
        m.twin[partner] = dst;
        m.edge_of[dst] = old_edge[s];
        m.edge_halfedge[old_edge[s]] = dst;
    }
    m.twin[a2] = b2;
    m.twin[b2] = a2;
    m.edge_of[a2] = e;
    m.edge_of[b2] = e;
    m.edge_halfedge[e] = a2;
    // corner labels written relative to the slot positions of a0 / b0
    const int ca = DeltaTriangulation::corner_of(a0);
    const int cb = DeltaTriangulation::corner_of(b0);
    m.faces[fa][ca] = vk;
    m.faces[fa][(ca + 1) % 3] = vi;
    m.faces[fa][(ca + 2) % 3] = vl;
    m.faces[fb][cb] = vl;
    m.faces[fb][(cb + 1) % 3] = vj;
    m.faces[fb][(cb + 2) % 3] = vk;
    m.lengths[e] = new_len;
}

} // namespace detail

// 2-2 flip. Requires a strictly convex hinge: the chart segment k-l must
// cross the open chart segment i-j. Returns the new edge length (the chart
// distance between the apexes). The edge id is reused for the new diagonal.
inline double flip_edge(DeltaTriangulation& m, int e, const Tolerance& tol = {}) {
    if (m.geometry == Geometry::boundary) {
        fail(ErrorCode::invalid_mesh, "flip_edge: truncated triangulations switch seams instead");
    }
    if (m.self_glued(e)) {
        fail(ErrorCode::nonconvex_hinge, "flip_edge: self-glued edges are not flippable");
    }
    const HingeChart chart = unfold_hinge(m, e, tol);

    double new_len = 0.0;
    if (!chart.hyperbolic) {
        const Point2 k = chart.e[2], l = chart.e[3];
        const double s_i = cross(l - k, chart.e[0] - k);
        const double s_j = cross(l - k, chart.e[1] - k);
        const double eps = tol.scaled(chart.scale * chart.scale);
        if (!(s_i > eps && s_j < -eps) && !(s_i < -eps && s_j > eps)) {
            fail(ErrorCode::nonconvex_hinge, "flip_edge: apex segment misses the shared edge");
        }
        new_len = dist(k, l);
    } else {
        const HGeodesic kl = geodesic_through(chart.h[2], chart.h[3], tol);
        const double s_i = mdot(chart.h[0], kl.n);
        const double s_j = mdot(chart.h[1], kl.n);
        const double eps = tol.scaled(1.0);
        if (!(s_i > eps && s_j < -eps) && !(s_i < -eps && s_j > eps)) {
            fail(ErrorCode::nonconvex_hinge, "flip_edge: apex geodesic misses the shared edge");
        }
        new_len = h_distance(chart.h[2], chart.h[3]);
    }

    detail::rewire_hinge(m, e, new_len);
    return new_len;
}

// Per-vertex weights: squared-length weights w_i on flat surfaces, radii r_i
// on hyperbolic surfaces and surfaces with boundary.
using WeightVector = std::vector<double>;

enum class WeightClass { w_prime_surrogate, edge_admissible, rejected };

inline const char* to_string(WeightClass c) {
    switch (c) {
        case WeightClass::w_prime_surrogate: return "W'-surrogate";
        case WeightClass::edge_admissible:   return "edge-admissible";
        case WeightClass::rejected:          return "rejected";
    }
    return "?";
}

// Edge-level surrogate of the admissible weight domains, with the edge length
// standing in for the true vertex distance. Edge lengths over-estimate vertex
// distances, so passing here is necessary but not sufficient for the global
// domain; runtime diagnostics (infeasible power centers, flip caps) cover the
// gap. Boundary surfaces only require positivity.
inline WeightClass validate_weights(const DeltaTriangulation& m, const WeightVector& w,
                                    const Tolerance& = {}) {
    if (static_cast<int>(w.size()) != m.num_vertices) {
        fail(ErrorCode::invalid_mesh, "validate_weights: one weight per vertex required");
    }
    for (double wi : w) {
        if (!(wi > 0.0) || !std::isfinite(wi)) {
            fail(ErrorCode::nonpositive_weight, "validate_weights: weights must be positive");
        }
    }
    if (m.geometry == Geometry::boundary) return WeightClass::w_prime_surrogate;

    bool admissible = true, prime = true;
    for (int e = 0; e < m.n_edges(); ++e) {
        const int h = m.edge_halfedge[e];
        const int u = m.tail(h), v = m.head(h);
        const double l = m.lengths[e];
        if (m.geometry == Geometry::flat) {
            if (!(w[u] < l * l + w[v]) || !(w[v] < l * l + w[u])) admissible = false;
            if (!(std::sqrt(w[u]) + std::sqrt(w[v]) < l)) prime = false;
        } else {
            const double chl = std::cosh(l);
            if (!(std::cosh(w[u]) < std::cosh(w[v]) * chl) ||
                !(std::cosh(w[v]) < std::cosh(w[u]) * chl)) admissible = false;
            if (!(w[u] + w[v] < l)) prime = false;
        }
    }
    if (!admissible) return WeightClass::rejected;
    return prime ? WeightClass::w_prime_surrogate : WeightClass::edge_admissible;
}

// Builds and validates a Delta-complex from face corner labels, a twin
// pairing of face corners (one pair per edge, defining the edge numbering),
// and per-edge lengths.
inline DeltaTriangulation make_mesh(Geometry geometry, std::vector<std::array<int, 3>> faces,
                                    const std::vector<GluingPair>& gluing,
                                    std::vector<double> lengths, const Tolerance& tol = {}) {
    DeltaTriangulation m;
    m.geometry = geometry;
    m.faces = std::move(faces);
    m.lengths = std::move(lengths);

    const int nf = m.n_faces();
    const int nh = 3 * nf;
    if (nf == 0) fail(ErrorCode::invalid_mesh, "make_mesh: no faces");
    if (gluing.size() * 2 != static_cast<size_t>(nh)) {
        fail(ErrorCode::invalid_mesh, "make_mesh: gluing must pair every face corner exactly once");
    }
    if (m.lengths.size() != gluing.size()) {
        fail(ErrorCode::invalid_mesh, "make_mesh: one length per gluing pair required");
    }

    m.twin.assign(nh, -1);
    m.edge_of.assign(nh, -1);
    m.edge_halfedge.resize(gluing.size());
    for (size_t e = 0; e < gluing.size(); ++e) {
        auto idx = [&](HalfedgeRef r) {
            if (r.first < 0 || r.first >= nf || r.second < 0 || r.second > 2) {
                fail(ErrorCode::invalid_mesh, "make_mesh: gluing entry out of range");
            }
            return 3 * r.first + r.second;
        };
        const int h1 = idx(gluing[e].first);
        const int h2 = idx(gluing[e].second);
        if (h1 == h2 || m.twin[h1] != -1 || m.twin[h2] != -1) {
            fail(ErrorCode::invalid_mesh, "make_mesh: corner glued twice");
        }
        m.twin[h1] = h2;
        m.twin[h2] = h1;
        m.edge_of[h1] = m.edge_of[h2] = static_cast<int>(e);
        m.edge_halfedge[e] = h1;
        if (!(m.lengths[e] > 0.0) || !std::isfinite(m.lengths[e])) {
            fail(ErrorCode::invalid_mesh, "make_mesh: edge lengths must be positive");
        }
    }
    for (int h = 0; h < nh; ++h) {
        if (m.twin[h] < 0) fail(ErrorCode::invalid_mesh, "make_mesh: unglued corner");
        if (m.tail(h) != m.head(m.twin[h]) || m.head(h) != m.tail(m.twin[h])) {
            fail(ErrorCode::invalid_mesh, "make_mesh: twin corners disagree on vertex labels");
        }
    }

    // Vertex labels must be exactly the orbits of the rotation around tails.
    int max_label = -1;
    for (const auto& f : m.faces)
        for (int v : f) {
            if (v < 0) fail(ErrorCode::invalid_mesh, "make_mesh: negative vertex label");
            max_label = std::max(max_label, v);
        }
    m.num_vertices = max_label + 1;
    {
        std::vector<int> orbit_of(nh, -1);
        std::vector<int> orbit_label;
        for (int h = 0; h < nh; ++h) {
            if (orbit_of[h] != -1) continue;
            const int id = static_cast<int>(orbit_label.size());
            orbit_label.push_back(m.tail(h));
            int cur = h;
            do {
                orbit_of[cur] = id;
                if (m.tail(cur) != orbit_label[id]) {
                    fail(ErrorCode::invalid_mesh, "make_mesh: vertex label changes along a corner orbit");
                }
                cur = m.next_out(cur);
            } while (cur != h);
        }
        std::vector<int> seen(m.num_vertices, 0);
        for (int lbl : orbit_label) {
            if (seen[lbl]++) {
                fail(ErrorCode::invalid_mesh, "make_mesh: one vertex label used for two distinct vertices");
            }
        }
        if (static_cast<int>(orbit_label.size()) != m.num_vertices) {
            fail(ErrorCode::invalid_mesh, "make_mesh: vertex labels must be contiguous 0..V-1");
        }
    }

    // Connectivity.
    {
        std::vector<char> reached(nf, 0);
        std::vector<int> stack{0};
        reached[0] = 1;
        while (!stack.empty()) {
            const int f = stack.back();
            stack.pop_back();
            for (int c = 0; c < 3; ++c) {
                const int g = DeltaTriangulation::face_of(m.twin[3 * f + c]);
                if (!reached[g]) {
                    reached[g] = 1;
                    stack.push_back(g);
                }
            }
        }
        if (std::count(reached.begin(), reached.end(), 1) != nf) {
            fail(ErrorCode::invalid_mesh, "make_mesh: surface is not connected");
        }
    }

    if (geometry != Geometry::boundary) {
        for (int f = 0; f < nf; ++f) corner_angles(m, f, tol); // throws InfeasibleFace
    }
    return m;
}

} // namespace wvd
