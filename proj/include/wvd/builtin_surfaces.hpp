#pragma once

// Ready-made surfaces: one-vertex tori, spindle spheres with self-glued
// edges, doubled hinges, periodic grid tori, the genus-2 octagon surface, and
// small truncated triangulations. Used by the example generator and tests.

#include <array>
#include <cmath>
#include <map>
#include <stdexcept>
#include <tuple>
#include <vector>

#include "wvd/euclid.hpp"
#include "wvd/mesh.hpp"
#include "wvd/rng.hpp"

namespace wvd {

// One-vertex torus from the parallelogram spanned by A, B, split along the
// A+B diagonal.
inline DeltaTriangulation parallelogram_torus(Vec2 A, Vec2 B, Geometry geom = Geometry::flat,
                                              double scale = 1.0) {
    const std::vector<std::array<int, 3>> faces{{0, 0, 0}, {0, 0, 0}};
    const std::vector<GluingPair> gluing{
        {{0, 0}, {1, 1}}, {{0, 1}, {1, 2}}, {{0, 2}, {1, 0}}};
    const std::vector<double> lengths{norm(A) * scale, norm(B) * scale, norm(A + B) * scale};
    return make_mesh(geom, faces, gluing, lengths);
}

inline DeltaTriangulation square_torus() { return parallelogram_torus({1, 0}, {0, 1}); }

// Two-face sphere made of two isosceles triangles, each with two of its own
// sides identified: both non-loop edges are self-glued.
inline DeltaTriangulation spindle_sphere(double side0, double side1, double base,
                                         Geometry geom = Geometry::flat) {
    const std::vector<std::array<int, 3>> faces{{0, 1, 0}, {0, 2, 0}};
    const std::vector<GluingPair> gluing{
        {{0, 0}, {0, 1}}, {{1, 0}, {1, 1}}, {{0, 2}, {1, 2}}};
    return make_mesh(geom, faces, gluing, {side0, side1, base});
}

// The five edge lengths of a hinge: shared edge (i,j), face (i,j,k) above,
// face (j,i,l) below.
struct HingeSpec {
    double l_ij, l_jk, l_ki, l_il, l_lj;
};

// Closed sphere containing the prescribed hinge: the hinge quad doubled
// across its four outer edges. Edge 0 is the hinge edge.
inline DeltaTriangulation hinge_double(const HingeSpec& s, Geometry geom = Geometry::flat) {
    const std::vector<std::array<int, 3>> faces{{0, 1, 2}, {1, 0, 3}, {1, 0, 2}, {0, 1, 3}};
    const std::vector<GluingPair> gluing{
        {{0, 0}, {1, 0}}, // front hinge
        {{2, 0}, {3, 0}}, // back hinge
        {{0, 1}, {2, 2}}, // jk
        {{0, 2}, {2, 1}}, // ki
        {{1, 1}, {3, 2}}, // il
        {{1, 2}, {3, 1}}, // lj
    };
    const std::vector<double> lengths{s.l_ij, s.l_ij, s.l_jk, s.l_ki, s.l_il, s.l_lj};
    return make_mesh(geom, faces, gluing, lengths);
}

// ---------------------------------------------------------------------------
// Periodic assembly on R^2 / (A Z + B Z): triangles given by lifted corners
// (vertex id + integer lattice offset), glued by matching directed edges.

struct LiftedCorner {
    int v;
    int ox, oy;
};

struct PeriodicFace {
    std::array<LiftedCorner, 3> c;
};

inline DeltaTriangulation assemble_periodic(Geometry geom, const std::vector<PeriodicFace>& pfaces,
                                            const std::vector<Vec2>& pos, Vec2 A, Vec2 B,
                                            double length_scale = 1.0) {
    auto lift = [&](const LiftedCorner& c) { return pos[c.v] + A * c.ox + B * c.oy; };
    using Key = std::tuple<int, int, int, int>; // tail, head, d_ox, d_oy
    std::map<Key, std::pair<int, int>> by_key;
    std::vector<std::array<int, 3>> faces;
    for (size_t f = 0; f < pfaces.size(); ++f) {
        const auto& pf = pfaces[f];
        faces.push_back({pf.c[0].v, pf.c[1].v, pf.c[2].v});
        for (int c = 0; c < 3; ++c) {
            const auto& t = pf.c[c];
            const auto& h = pf.c[(c + 1) % 3];
            const Key key{t.v, h.v, h.ox - t.ox, h.oy - t.oy};
            if (by_key.count(key)) {
                fail(ErrorCode::invalid_mesh, "assemble_periodic: duplicate directed edge");
            }
            by_key[key] = {static_cast<int>(f), c};
        }
    }
    std::vector<GluingPair> gluing;
    std::vector<double> lengths;
    std::map<Key, char> used;
    for (size_t f = 0; f < pfaces.size(); ++f) {
        for (int c = 0; c < 3; ++c) {
            const auto& t = pfaces[f].c[c];
            const auto& h = pfaces[f].c[(c + 1) % 3];
            const Key key{t.v, h.v, h.ox - t.ox, h.oy - t.oy};
            if (used.count(key)) continue;
            const Key tkey{h.v, t.v, t.ox - h.ox, t.oy - h.oy};
            auto it = by_key.find(tkey);
            if (it == by_key.end()) fail(ErrorCode::invalid_mesh, "assemble_periodic: open edge");
            used[key] = used[tkey] = 1;
            gluing.push_back({{static_cast<int>(f), c}, it->second});
            lengths.push_back(dist(lift(t), lift(h)) * length_scale);
        }
    }
    return make_mesh(geom, faces, gluing, lengths);
}

// Jittered m x k grid on the torus, split into 2 m k triangles. The grid
// triangulation stays valid for jitter below roughly 0.3 cell widths.
struct GridTorus {
    DeltaTriangulation mesh;
    std::vector<Vec2> pos;
    Vec2 A, B;
};

inline GridTorus grid_torus(int m, int k, Vec2 A, Vec2 B, double jitter,
                            std::uint64_t jitter_seed = 0, Geometry geom = Geometry::flat,
                            double length_scale = 1.0) {
    detail::SplitMix64 rng(jitter_seed ^ 0x5bf03635f0935ad1ULL);
    GridTorus out;
    out.A = A;
    out.B = B;
    out.pos.resize(static_cast<size_t>(m) * k);
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < k; ++b) {
            const double ja = jitter * (2.0 * rng.uniform01() - 1.0);
            const double jb = jitter * (2.0 * rng.uniform01() - 1.0);
            out.pos[static_cast<size_t>(a) * k + b] = A * ((a + ja) / m) + B * ((b + jb) / k);
        }
    auto corner = [&](int a, int b) {
        LiftedCorner c{};
        c.ox = a >= m ? 1 : 0;
        c.oy = b >= k ? 1 : 0;
        c.v = (a % m) * k + (b % k);
        return c;
    };
    std::vector<PeriodicFace> pfaces;
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < k; ++b) {
            pfaces.push_back({{corner(a, b), corner(a + 1, b), corner(a + 1, b + 1)}});
            pfaces.push_back({{corner(a, b), corner(a + 1, b + 1), corner(a, b + 1)}});
        }
    out.mesh = assemble_periodic(geom, pfaces, out.pos, A, B, length_scale);
    return out;
}

// Genus-2 hyperbolic surface: regular octagon with corner angle pi/4, sides
// identified along a b a^-1 b^-1 c d c^-1 d^-1, fan-triangulated from one
// corner. One vertex with cone angle exactly 2 pi.
inline DeltaTriangulation genus2_octagon() {
    const double pi = 3.14159265358979323846;
    const double coshR = (std::cos(pi / 8) * (1.0 + std::cos(pi / 4))) /
                         (std::sin(pi / 8) * std::sin(pi / 4));
    const double R = std::acosh(coshR);
    auto chord = [&](int k) {
        return std::acosh(std::cosh(R) * std::cosh(R) -
                          std::sinh(R) * std::sinh(R) * std::cos(k * pi / 4));
    };
    std::vector<std::array<int, 3>> faces(6, {0, 0, 0});
    std::vector<GluingPair> gluing{
        {{0, 0}, {1, 1}}, // side 0 ~ side 2
        {{0, 1}, {2, 1}}, // side 1 ~ side 3
        {{3, 1}, {5, 1}}, // side 4 ~ side 6
        {{4, 1}, {5, 2}}, // side 5 ~ side 7
    };
    std::vector<double> lengths(4, chord(1));
    for (int kdiag = 0; kdiag < 5; ++kdiag) {
        gluing.push_back({{kdiag, 2}, {kdiag + 1, 0}});
        lengths.push_back(chord(kdiag + 2));
    }
    return make_mesh(Geometry::hyperbolic, faces, gluing, lengths);
}

// Pair of pants: sphere with three marked points, two truncated triangles.
inline DeltaTriangulation pair_of_pants(double s01, double s12, double s20) {
    const std::vector<std::array<int, 3>> faces{{0, 1, 2}, {1, 0, 2}};
    const std::vector<GluingPair> gluing{
        {{0, 0}, {1, 0}}, {{0, 1}, {1, 2}}, {{0, 2}, {1, 1}}};
    return make_mesh(Geometry::boundary, faces, gluing, {s01, s12, s20});
}

// One-holed torus: one boundary geodesic, one-vertex torus combinatorics.
inline DeltaTriangulation one_holed_torus(double s0, double s1, double s2) {
    const std::vector<std::array<int, 3>> faces{{0, 0, 0}, {0, 0, 0}};
    const std::vector<GluingPair> gluing{
        {{0, 0}, {1, 1}}, {{0, 1}, {1, 2}}, {{0, 2}, {1, 0}}};
    return make_mesh(Geometry::boundary, faces, gluing, {s0, s1, s2});
}

} // namespace wvd
