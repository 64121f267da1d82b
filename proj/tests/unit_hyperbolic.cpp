#include <doctest.h>

#include <cmath>
#include <random>

#include "wvd/hyperbolic.hpp"

using namespace wvd;

namespace {

HPoint point_on(const HGeodesic& g, double s) {
    const HPoint p0 = foot_of_perpendicular({0, 0, 1}, g);
    const Vec3m t = mcross(g.n, p0);
    return normalize_point(p0 * std::cosh(s) + t * std::sinh(s));
}

double cosh_level(const HPoint& q, const HPoint& p, double r) {
    return std::cosh(h_distance(q, p)) / std::cosh(r);
}

} // namespace

TEST_CASE("h_distance basics") {
    const HPoint o{0, 0, 1};
    CHECK(h_distance(o, o) == doctest::Approx(0.0).scale(1.0));
    const HPoint p{std::sinh(1.0), 0, std::cosh(1.0)};
    CHECK(h_distance(o, p) == doctest::Approx(1.0).epsilon(1e-12));

    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-1.5, 1.5);
    for (int it = 0; it < 100; ++it) {
        const HPoint a = h_polar(u(rng), std::abs(u(rng)));
        const HPoint b = h_polar(u(rng), std::abs(u(rng)));
        CHECK(h_distance(a, b) == doctest::Approx(h_distance(b, a)));
        CHECK(on_hyperboloid(a));
    }
}

TEST_CASE("signed_dist_to_geodesic") {
    const HGeodesic g{{1, 0, 0}}; // the y-axis geodesic
    CHECK(signed_dist_to_geodesic({0, 0, 1}, g) == doctest::Approx(0.0).scale(1.0));
    const HPoint q = h_polar(0.0, 0.8);
    CHECK(signed_dist_to_geodesic(q, g) == doctest::Approx(0.8).epsilon(1e-12));
    CHECK(signed_dist_to_geodesic(q, HGeodesic{-g.n}) == doctest::Approx(-0.8).epsilon(1e-12));
    // |signed distance| equals the distance to the closest point
    const HGeodesic g2 = geodesic_through(h_polar(0.3, 1.0), h_polar(1.4, 0.7));
    const HPoint q2 = h_polar(-0.5, 1.1);
    const HPoint foot = foot_of_perpendicular(q2, g2);
    CHECK(std::abs(signed_dist_to_geodesic(q2, g2)) == doctest::Approx(h_distance(q2, foot)).epsilon(1e-10));
}

TEST_CASE("cosh_bisector: symmetric case, sampled identity, sides") {
    const Tolerance tol;
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> u(0.0, 1.0);

    // equal ratios with symmetric points: the bisector passes through the origin
    {
        const HPoint p1 = h_polar(0.4, 0.9), p2 = h_polar(0.4 + 3.14159265358979, 0.9);
        const HGeodesic b = cosh_bisector(p1, 0.5, p2, 0.5);
        CHECK(std::abs(signed_dist_to_geodesic({0, 0, 1}, b)) < 1e-12);
    }

    for (int it = 0; it < 50; ++it) {
        const HPoint p1 = h_polar(u(rng) * 6.28, 0.2 + u(rng));
        const HPoint p2 = h_polar(u(rng) * 6.28, 0.2 + u(rng));
        const double d = h_distance(p1, p2);
        if (d < 0.3) continue;
        const double r1 = (0.1 + 0.8 * u(rng)) * d, r2 = (0.1 + 0.8 * u(rng)) * d;
        const HGeodesic b = cosh_bisector(p1, r1, p2, r2);

        // orthogonal to the geodesic connecting p1 p2
        const HGeodesic conn = geodesic_through(p1, p2);
        CHECK(std::abs(mdot(b.n, conn.n)) < 1e-10);

        // 20 sampled points satisfy the ratio identity
        for (int k = 0; k < 20; ++k) {
            const HPoint q = point_on(b, -2.0 + 4.0 * k / 19.0);
            CHECK(cosh_level(q, p1, r1) == doctest::Approx(cosh_level(q, p2, r2)).epsilon(1e-9));
        }

        // strict inequality on either side, p2 on the positive side
        CHECK(mdot(p2, b.n) > 0);
        CHECK(mdot(p1, b.n) < 0);
        const HPoint side1 = normalize_point(point_on(b, 0.3) - b.n * 0.2);
        const HPoint side2 = normalize_point(point_on(b, 0.3) + b.n * 0.2);
        CHECK(cosh_level(side1, p1, r1) < cosh_level(side1, p2, r2));
        CHECK(cosh_level(side2, p1, r1) > cosh_level(side2, p2, r2));
    }

    const HPoint p = h_polar(0.1, 0.5);
    CHECK_THROWS_AS(cosh_bisector(p, 0.2, p, 0.2), GeomError);
    try {
        cosh_bisector(p, 0.2, p, 0.2);
    } catch (const GeomError& e) {
        CHECK(e.code() == ErrorCode::degenerate_bisector);
    }
    try {
        cosh_bisector(p, 5.0, h_polar(0.1, 1.5), 0.2);
    } catch (const GeomError& e) {
        CHECK(e.code() == ErrorCode::invalid_radii);
    }
}

TEST_CASE("sinh_bisector: symmetric case, sampled identity, sides") {
    std::mt19937_64 rng(19);
    std::uniform_real_distribution<double> u(0.0, 1.0);

    // two geodesics symmetric about the y-axis geodesic
    {
        const HGeodesic g1{{std::cosh(0.7), 0, -std::sinh(0.7)}};  // x-axis offset -0.7... normal form
        const HGeodesic g2{{std::cosh(0.7), 0, std::sinh(0.7)}};
        const HGeodesic b = sinh_bisector(g1, 1.3, g2, 1.3);
        CHECK(std::abs(mdot(b.n, Vec3m{0, 0, 1})) < 1e-12); // passes through the origin axis
        CHECK(std::abs(std::abs(mdot(b.n, Vec3m{1, 0, 0})) - 1.0) < 1e-12);
    }

    for (int it = 0; it < 50; ++it) {
        // build two disjoint geodesics orthogonal to a random axis
        const double ang = u(rng) * 6.28;
        const HFrame axis{{0, 0, 1}, {std::cos(ang), std::sin(ang), 0}};
        const double s1 = -(0.2 + u(rng)), s2 = 0.2 + u(rng);
        const HFrame f1 = axis.advanced(s1).turned(1.5707963267948966);
        const HFrame f2 = axis.advanced(s2).turned(1.5707963267948966);
        const HGeodesic g1 = f1.geodesic(), g2 = f2.geodesic();
        const double r1 = 0.2 + 2.0 * u(rng), r2 = 0.2 + 2.0 * u(rng);
        const HGeodesic b = sinh_bisector(g1, r1, g2, r2);

        // orthogonal to the common perpendicular (the axis itself)
        CHECK(std::abs(mdot(b.n, axis.geodesic().n)) < 1e-10);

        for (int k = 0; k < 20; ++k) {
            const HPoint q = point_on(b, -1.5 + 3.0 * k / 19.0);
            const double l1 = r1 * std::sinh(std::abs(signed_dist_to_geodesic(q, g1)));
            const double l2 = r2 * std::sinh(std::abs(signed_dist_to_geodesic(q, g2)));
            CHECK(l1 == doctest::Approx(l2).epsilon(1e-9));
        }

        // two-sided strict inequality inside the strip between g1 and g2
        const HPoint qb = point_on(b, 0.2);
        const double gap = 0.3 * std::min(std::abs(signed_dist_to_geodesic(qb, g1)),
                                          std::abs(signed_dist_to_geodesic(qb, g2)));
        const HPoint q1 = normalize_point(qb - b.n * gap);
        const HPoint q2 = normalize_point(qb + b.n * gap);
        auto lev = [&](const HPoint& q, const HGeodesic& g, double r) {
            return r * std::sinh(std::abs(signed_dist_to_geodesic(q, g)));
        };
        CHECK(lev(q1, g1, r1) < lev(q1, g2, r2));
        CHECK(lev(q2, g1, r1) > lev(q2, g2, r2));
        CHECK(mdot(b.n, f2.p) > 0); // positive side contains g2
    }

    // intersecting input
    const HGeodesic ga{{1, 0, 0}}, gb{{0, 1, 0}};
    CHECK_THROWS_AS(sinh_bisector(ga, 1.0, gb, 1.0), GeomError);
    try {
        sinh_bisector(ga, 1.0, gb, 1.0);
    } catch (const GeomError& e) {
        CHECK(e.code() == ErrorCode::geodesics_intersect);
    }
}

TEST_CASE("hyp_power_center") {
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> u(0.0, 1.0);

    // equilateral with equal radii: center at the symmetry point
    {
        const std::array<HPoint, 3> p{h_polar(0, 1.0), h_polar(2.0943951023931953, 1.0),
                                      h_polar(4.1887902047863905, 1.0)};
        const PowerCenterH pc = hyp_power_center(p, {0.4, 0.4, 0.4});
        CHECK(std::abs(pc.center.x) < 1e-10);
        CHECK(std::abs(pc.center.y) < 1e-10);
        for (int i = 0; i < 3; ++i) {
            CHECK(cosh_level(pc.center, p[i], 0.4) == doctest::Approx(pc.ratio).epsilon(1e-10));
        }
    }

    int done = 0;
    while (done < 100) {
        const std::array<HPoint, 3> p{h_polar(u(rng) * 6.28, 0.3 + u(rng)),
                                      h_polar(u(rng) * 6.28, 0.3 + u(rng)),
                                      h_polar(u(rng) * 6.28, 0.3 + u(rng))};
        const double dmin = std::min({h_distance(p[0], p[1]), h_distance(p[1], p[2]),
                                      h_distance(p[2], p[0])});
        if (dmin < 0.2) continue;
        std::array<double, 3> r{};
        for (auto& ri : r) ri = (0.05 + 0.4 * u(rng)) * dmin;
        try {
            const PowerCenterH pc = hyp_power_center(p, r);
            for (int i = 0; i < 3; ++i) {
                CHECK(cosh_level(pc.center, p[i], r[i]) == doctest::Approx(pc.ratio).epsilon(1e-9));
            }
            CHECK(on_hyperboloid(pc.center));
            ++done;
        } catch (const GeomError& e) {
            // bisectors can genuinely diverge; only that failure is acceptable here
            CHECK(e.code() == ErrorCode::no_intersection);
        }
    }

    const std::array<HPoint, 3> collinear{h_polar(0, 0.4), h_polar(0, 0.9), h_polar(0, 1.5)};
    CHECK_THROWS_AS(hyp_power_center(collinear, {0.1, 0.1, 0.1}), GeomError);
    try {
        hyp_power_center(collinear, {0.1, 0.1, 0.1});
    } catch (const GeomError& e) {
        CHECK(e.code() == ErrorCode::degenerate_triangle);
    }
}

TEST_CASE("boundary_dual_point") {
    std::mt19937_64 rng(29);
    std::uniform_real_distribution<double> u(0.0, 1.0);

    // symmetric three-geodesic configuration with equal weights: center of symmetry
    {
        std::array<HGeodesic, 3> g{};
        for (int k = 0; k < 3; ++k) {
            const double ang = 2.0943951023931953 * k;
            const HFrame f = HFrame{{0, 0, 1}, {std::cos(ang), std::sin(ang), 0}}
                                 .advanced(1.2)
                                 .turned(1.5707963267948966);
            g[k] = f.geodesic();
        }
        const BoundaryDualPoint dp = boundary_dual_point(g, {0.7, 0.7, 0.7});
        CHECK(std::abs(dp.center.x) < 1e-10);
        CHECK(std::abs(dp.center.y) < 1e-10);
        CHECK(dp.level > 0);
    }

    int done = 0;
    while (done < 100) {
        std::array<HGeodesic, 3> g{};
        for (int k = 0; k < 3; ++k) {
            const double ang = 2.0943951023931953 * k + (u(rng) - 0.5) * 0.6;
            const HFrame f = HFrame{{0, 0, 1}, {std::cos(ang), std::sin(ang), 0}}
                                 .advanced(0.9 + u(rng))
                                 .turned(1.5707963267948966);
            g[k] = f.geodesic();
        }
        std::array<double, 3> r{0.2 + u(rng), 0.2 + u(rng), 0.2 + u(rng)};
        try {
            const BoundaryDualPoint dp = boundary_dual_point(g, r);
            for (int k = 0; k < 3; ++k) {
                const double lev = r[k] * std::sinh(std::abs(signed_dist_to_geodesic(dp.center, g[k])));
                CHECK(lev == doctest::Approx(dp.level).epsilon(1e-9));
            }
            ++done;
        } catch (const GeomError& e) {
            const bool soft = e.code() == ErrorCode::no_intersection ||
                              e.code() == ErrorCode::geodesics_intersect;
            CHECK(soft);
        }
    }

    // two intersecting geodesics
    std::array<HGeodesic, 3> bad{HGeodesic{{1, 0, 0}}, HGeodesic{{0, 1, 0}},
                                 HGeodesic{{std::cosh(2.0), 0, std::sinh(2.0)}}};
    CHECK_THROWS_AS(boundary_dual_point(bad, {1, 1, 1}), GeomError);
}

TEST_CASE("trirectangle_solve: direct values and synthetic oracle") {
    // direct substitution
    const TrirectangleSides s = trirectangle_solve(2.0, 1.0);
    CHECK(s.ab == doctest::Approx(std::acosh(std::tanh(2.0) / std::tanh(1.0))).epsilon(1e-12));
    CHECK(s.cd == doctest::Approx(std::acosh(std::sinh(2.0) / std::sinh(1.0))).epsilon(1e-12));

    // limit AD -> BC+
    const TrirectangleSides tiny = trirectangle_solve(1.0 + 1e-9, 1.0);
    CHECK(tiny.ab < 1e-3);
    CHECK(tiny.cd < 1e-3);

    CHECK_THROWS_AS(trirectangle_solve(1.0, 1.0), GeomError);
    CHECK_THROWS_AS(trirectangle_solve(0.5, 1.0), GeomError);

    // synthetic construction: pick AD and AB, erect perpendiculars, measure BC
    // and CD, and require the solver to reproduce (AB, CD) from (AD, BC)
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> u(0.2, 2.2);
    for (int it = 0; it < 100; ++it) {
        const double ad = u(rng), ab_in = u(rng);
        const HGeodesic base{{0, 1, 0}};
        const HPoint d{0, std::sinh(ad), std::cosh(ad)};
        const HFrame at_b = HFrame{}.advanced(ab_in);
        const HGeodesic perp_b = at_b.turned(1.5707963267948966).geodesic();
        const HPoint c = foot_of_perpendicular(d, perp_b);
        const double bc = h_distance(at_b.p, c);
        const double cd = h_distance(c, d);
        REQUIRE(bc < ad);
        const TrirectangleSides out = trirectangle_solve(ad, bc);
        CHECK(out.ab == doctest::Approx(ab_in).epsilon(1e-9));
        CHECK(out.cd == doctest::Approx(cd).epsilon(1e-9));
        (void)base;
    }
}

TEST_CASE("hexagon_solve: symmetry, involution, synthetic closure") {
    // regular hexagon: all alternating sides equal
    const auto reg = hexagon_solve(1.2, 1.2, 1.2);
    CHECK(reg[0] == doctest::Approx(reg[1]).epsilon(1e-12));
    CHECK(reg[1] == doctest::Approx(reg[2]).epsilon(1e-12));

    std::mt19937_64 rng(37);
    std::uniform_real_distribution<double> u(0.3, 2.0);
    for (int it = 0; it < 100; ++it) {
        const double a = u(rng), b = u(rng), c = u(rng);
        const auto other = hexagon_solve(a, b, c);
        const auto back = hexagon_solve(other[0], other[1], other[2]);
        CHECK(back[0] == doctest::Approx(a).epsilon(1e-9));
        CHECK(back[1] == doctest::Approx(b).epsilon(1e-9));
        CHECK(back[2] == doctest::Approx(c).epsilon(1e-9));

        // walking the sides a, c', b, a', c, b' with right-angle left turns
        // must return to the start frame (coordinate comparison: near-zero
        // distances lose half the digits through acosh)
        const std::array<double, 6> sides{a, other[2], b, other[0], c, other[1]};
        HFrame f{};
        for (double s : sides) {
            f = f.advanced(s).turned(1.5707963267948966);
        }
        CHECK(std::abs(f.p.x) < 5e-8);
        CHECK(std::abs(f.p.y) < 5e-8);
        CHECK(std::abs(f.p.z - 1.0) < 5e-8);
        CHECK(std::abs(f.u.x - 1.0) < 5e-8);
    }

    CHECK_THROWS_AS(hexagon_solve(-1.0, 1.0, 1.0), GeomError);
}
