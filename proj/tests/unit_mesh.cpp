#include <doctest.h>

#include <cmath>
#include <random>

#include "support/generators.hpp"
#include "wvd/delaunay.hpp"
#include "wvd/mesh.hpp"

using namespace wvd;
using namespace testgen;

namespace {
constexpr double pi = 3.14159265358979323846;
}

TEST_CASE("triangle_angles flat and hyperbolic") {
    const auto eq = triangle_angles(1, 1, 1, Geometry::flat);
    for (double a : eq) CHECK(a == doctest::Approx(pi / 3).epsilon(1e-12));

    // right angle opposite the hypotenuse
    const auto pyth = triangle_angles(3, 4, 5, Geometry::flat);
    CHECK(pyth[1] == doctest::Approx(pi / 2).epsilon(1e-12));
    CHECK(pyth[0] + pyth[1] + pyth[2] == doctest::Approx(pi).epsilon(1e-12));

    const auto hyp = triangle_angles(1, 1, 1, Geometry::hyperbolic);
    CHECK(hyp[0] == doctest::Approx(hyp[1]).epsilon(1e-12));
    CHECK(hyp[1] == doctest::Approx(hyp[2]).epsilon(1e-12));
    CHECK(hyp[0] < pi / 3);
    // the oracle: hyperbolic law of cosines evaluated directly
    const double c1 = std::cosh(1.0), s1 = std::sinh(1.0);
    CHECK(hyp[0] == doctest::Approx(std::acos((c1 * c1 - c1) / (s1 * s1))).epsilon(1e-12));

    CHECK_THROWS_AS(triangle_angles(1, 1, 2.5, Geometry::flat), GeomError);
}

TEST_CASE("make_mesh validates structure") {
    const DeltaTriangulation torus = square_torus();
    CHECK(torus.num_vertices == 1);
    CHECK(torus.n_edges() == 3);
    CHECK(torus.n_faces() == 2);
    CHECK(torus.euler_characteristic() == 0);
    CHECK(!torus.self_glued(0));

    // bad gluing: corner glued twice
    CHECK_THROWS_AS(make_mesh(Geometry::flat, {{0, 0, 0}, {0, 0, 0}},
                              {{{0, 0}, {1, 1}}, {{0, 1}, {1, 1}}, {{0, 2}, {1, 0}}},
                              {1, 1, 1}),
                    GeomError);
    // infeasible face (degenerate: A and B parallel)
    CHECK_THROWS_AS(parallelogram_torus({1, 0}, {10, 0}), GeomError);
}

TEST_CASE("cone angles: flat torus, tetrahedron, genus-2 octagon") {
    const ConeData torus = cone_angles(square_torus());
    CHECK(torus.angle[0] == doctest::Approx(2 * pi).epsilon(1e-12));
    CHECK(torus.curvature[0] == doctest::Approx(0.0).scale(1.0).epsilon(1e-10));

    // boundary of the regular tetrahedron: four cone points of angle pi
    const DeltaTriangulation tetra = make_mesh(
        Geometry::flat, {{0, 1, 2}, {0, 2, 3}, {0, 3, 1}, {1, 3, 2}},
        {{{0, 0}, {2, 2}}, {{0, 1}, {3, 2}}, {{0, 2}, {1, 0}},
         {{1, 1}, {3, 1}}, {{1, 2}, {2, 0}}, {{2, 1}, {3, 0}}},
        {1, 1, 1, 1, 1, 1});
    const ConeData tc = cone_angles(tetra);
    for (int v = 0; v < 4; ++v) {
        CHECK(tc.angle[v] == doctest::Approx(pi).epsilon(1e-12));
        CHECK(tc.curvature[v] == doctest::Approx(pi).epsilon(1e-12));
    }
    CHECK(tetra.euler_characteristic() == 2);

    // hyperbolic genus-2 surface from the regular octagon: flat vertex
    const DeltaTriangulation oct = genus2_octagon();
    CHECK(oct.num_vertices == 1);
    CHECK(oct.euler_characteristic() == -2);
    const ConeData oc = cone_angles(oct);
    CHECK(oc.angle[0] == doctest::Approx(2 * pi).epsilon(1e-9));
    CHECK(std::abs(oc.curvature[0]) < 1e-9);
}

TEST_CASE("unfold_hinge") {
    // two unit equilateral triangles: rhombus with diagonal sqrt(3)
    const DeltaTriangulation rhomb = hinge_double({1, 1, 1, 1, 1});
    const HingeChart chart = unfold_hinge(rhomb, 0);
    CHECK(chart.e[1].x == doctest::Approx(1.0));
    CHECK(dist(chart.e[2], chart.e[3]) == doctest::Approx(std::sqrt(3.0)).epsilon(1e-12));
    CHECK(chart.e[2].y > 0);
    CHECK(chart.e[3].y < 0);

    // chart edge lengths reproduce the five mesh lengths
    std::mt19937_64 rng(41);
    for (int it = 0; it < 50; ++it) {
        for (Geometry geom : {Geometry::flat, Geometry::hyperbolic}) {
            const HingeSpec s = random_hinge(rng, geom);
            const DeltaTriangulation m = hinge_double(s, geom);
            const HingeChart ch = unfold_hinge(m, 0);
            if (geom == Geometry::flat) {
                CHECK(dist(ch.e[0], ch.e[1]) == doctest::Approx(s.l_ij).epsilon(1e-10));
                CHECK(dist(ch.e[1], ch.e[2]) == doctest::Approx(s.l_jk).epsilon(1e-10));
                CHECK(dist(ch.e[2], ch.e[0]) == doctest::Approx(s.l_ki).epsilon(1e-10));
                CHECK(dist(ch.e[0], ch.e[3]) == doctest::Approx(s.l_il).epsilon(1e-10));
                CHECK(dist(ch.e[3], ch.e[1]) == doctest::Approx(s.l_lj).epsilon(1e-10));
            } else {
                CHECK(h_distance(ch.h[0], ch.h[1]) == doctest::Approx(s.l_ij).epsilon(1e-10));
                CHECK(h_distance(ch.h[1], ch.h[2]) == doctest::Approx(s.l_jk).epsilon(1e-10));
                CHECK(h_distance(ch.h[2], ch.h[0]) == doctest::Approx(s.l_ki).epsilon(1e-10));
                CHECK(h_distance(ch.h[0], ch.h[3]) == doctest::Approx(s.l_il).epsilon(1e-10));
                CHECK(h_distance(ch.h[3], ch.h[1]) == doctest::Approx(s.l_lj).epsilon(1e-10));
            }
        }
    }

    // self-glued hinge: same mesh vertex, distinct mirror chart points
    const DeltaTriangulation spindle = spindle_sphere(1.0, 1.2, 0.8);
    CHECK(spindle.self_glued(0));
    const HingeChart sg = unfold_hinge(spindle, 0);
    CHECK(sg.self_glued);
    CHECK(sg.vertex[2] == sg.vertex[3]);
    CHECK(sg.e[2].x == doctest::Approx(sg.e[3].x).epsilon(1e-12));
    CHECK(sg.e[2].y == doctest::Approx(-sg.e[3].y).epsilon(1e-12));

    // one-vertex torus: all four chart corners share the mesh vertex
    const DeltaTriangulation torus = square_torus();
    const HingeChart tch = unfold_hinge(torus, 2);
    CHECK(tch.vertex == std::array<int, 4>{0, 0, 0, 0});
    CHECK(!tch.self_glued);
    CHECK(dist(tch.e[2], tch.e[3]) > 0.5);
}

TEST_CASE("flip_edge geometry and involution") {
    // unit square hinge: flipping one diagonal yields the other, same length
    const double s2 = std::sqrt(2.0);
    DeltaTriangulation sq = hinge_double({s2, 1, 1, 1, 1});
    const double nl = flip_edge(sq, 0);
    CHECK(nl == doctest::Approx(s2).epsilon(1e-12));

    std::mt19937_64 rng(43);
    int involutions = 0;
    while (involutions < 40) {
        for (Geometry geom : {Geometry::flat, Geometry::hyperbolic}) {
            const HingeSpec s = random_hinge(rng, geom);
            DeltaTriangulation m = hinge_double(s, geom);
            const std::vector<double> before = m.lengths;
            const std::vector<char> none(m.n_edges(), 0);
            const std::uint64_t h_before = canonical_complex_hash(m, none);
            try {
                flip_edge(m, 0);
            } catch (const GeomError& e) {
                CHECK(e.code() == ErrorCode::nonconvex_hinge);
                continue;
            }
            try {
                flip_edge(m, 0);
            } catch (const GeomError& e) {
                // not convex both ways; fine
                CHECK(e.code() == ErrorCode::nonconvex_hinge);
                continue;
            }
            for (int e = 0; e < m.n_edges(); ++e) {
                CHECK(m.lengths[e] == doctest::Approx(before[e]).epsilon(1e-10));
            }
            CHECK(canonical_complex_hash(m, none) == h_before);
            ++involutions;
        }
    }

    // a hinge whose apex segment misses the shared edge is not flippable
    {
        const Point2 i{0, 0}, j{2, 0}, k{1, 1}, l{2.5, -0.3};
        const HingeSpec s{dist(i, j), dist(j, k), dist(i, k), dist(i, l), dist(l, j)};
        DeltaTriangulation m = hinge_double(s);
        CHECK_THROWS_AS(flip_edge(m, 0), GeomError);
        try {
            flip_edge(m, 0);
        } catch (const GeomError& e) {
            CHECK(e.code() == ErrorCode::nonconvex_hinge);
        }
    }

    // self-glued edges are never flippable
    {
        DeltaTriangulation m = spindle_sphere(1.0, 1.1, 0.7);
        CHECK_THROWS_AS(flip_edge(m, 0), GeomError);
    }
}

TEST_CASE("flip preserves the metric: area, cone angles, Euler characteristic") {
    std::mt19937_64 rng(47);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    for (int it = 0; it < 30; ++it) {
        for (Geometry geom : {Geometry::flat, Geometry::hyperbolic}) {
            const double scale = geom == Geometry::flat ? 1.0 : 0.6;
            GridTorus g = grid_torus(2 + it % 3, 2, {1, 0}, {0.1 * u01(rng), 1.1}, 0.15, rng,
                                     geom, scale);
            DeltaTriangulation& m = g.mesh;
            const double area0 = total_area(m);
            const ConeData cones0 = cone_angles(m);
            const int chi0 = m.euler_characteristic();

            int flips = 0;
            for (int e = 0; e < m.n_edges() && flips < 6; ++e) {
                try {
                    flip_edge(m, e);
                    ++flips;
                } catch (const GeomError&) {
                }
            }
            CHECK(flips > 0);
            CHECK(total_area(m) == doctest::Approx(area0).epsilon(1e-9));
            const ConeData cones1 = cone_angles(m);
            for (int v = 0; v < m.num_vertices; ++v) {
                CHECK(cones1.angle[v] == doctest::Approx(cones0.angle[v]).epsilon(1e-9));
            }
            CHECK(m.euler_characteristic() == chi0);
        }
    }
}

TEST_CASE("validate_weights classification") {
    const DeltaTriangulation torus = square_torus();
    CHECK(validate_weights(torus, {0.16}) == WeightClass::w_prime_surrogate); // sqrt = 0.4
    CHECK(validate_weights(torus, {0.36}) == WeightClass::edge_admissible);   // 2*0.6 > 1
    CHECK_THROWS_AS(validate_weights(torus, {-0.5}), GeomError);

    // a 2-vertex mesh where one weight violates the edge inequality
    std::mt19937_64 rng(53);
    GridTorus g = grid_torus(2, 1, {1, 0}, {0, 1}, 0.0, rng);
    CHECK(g.mesh.num_vertices == 2);
    double lmin = 1e9;
    for (double l : g.mesh.lengths) lmin = std::min(lmin, l);
    CHECK(validate_weights(g.mesh, {0.01, lmin * lmin + 0.02}) == WeightClass::rejected);
    CHECK(validate_weights(g.mesh, {0.01, 0.01}) == WeightClass::w_prime_surrogate);

    // equal weights are always edge-admissible
    CHECK(validate_weights(g.mesh, {5.0, 5.0}) == WeightClass::edge_admissible);

    // hyperbolic: radii
    const DeltaTriangulation htorus = parallelogram_torus({1, 0}, {0, 1}, Geometry::hyperbolic, 0.8);
    CHECK(validate_weights(htorus, {0.3}) == WeightClass::w_prime_surrogate);
    CHECK(validate_weights(htorus, {0.5}) == WeightClass::edge_admissible);

    // boundary surfaces: positivity is the whole domain
    const DeltaTriangulation pants = pair_of_pants(1.0, 1.2, 0.8);
    CHECK(validate_weights(pants, {2.0, 0.1, 30.0}) == WeightClass::w_prime_surrogate);
}

TEST_CASE("grid torus assembly") {
    std::mt19937_64 rng(59);
    const GridTorus g = grid_torus(3, 4, {1, 0}, {0.2, 1.1}, 0.12, rng);
    CHECK(g.mesh.num_vertices == 12);
    CHECK(g.mesh.n_faces() == 24);
    CHECK(g.mesh.n_edges() == 36);
    CHECK(g.mesh.euler_characteristic() == 0);
}
