#pragma once

// Hyperbolic surfaces with geodesic boundary, encoded on the associated
// marked surface: each face of the triangulation stands for a right-angled
// hexagon (truncated triangle), each edge length is the orthogeodesic seam
// between two boundary components, and each vertex stands for a boundary
// geodesic. The flip driver is reused with the sinh-weighted certificate.

#include "wvd/delaunay.hpp"

namespace wvd {

// A truncated triangulation is a Delta-complex with geometry `boundary`;
// lengths are the orthogeodesic seams, no triangle inequality applies.
using TruncatedTriangulation = DeltaTriangulation;

inline void require_boundary(const DeltaTriangulation& m) {
    if (m.geometry != Geometry::boundary) {
        fail(ErrorCode::invalid_mesh, "expected a truncated triangulation (geometry boundary)");
    }
}

// Chart realization of one hexagon in the hyperboloid model: walk the sides
// base-seam, arc, next-seam, arc, prev-seam, arc with right-angle left turns,
// starting with the base seam on the positive x axis. Interior lies at y > 0.
struct HexagonChart {
    std::array<double, 3> seam{};          // base, next, prev lengths
    std::array<double, 3> arc{};           // arcs at head(base), apex, tail(base)
    std::array<HGeodesic, 3> boundary{};   // geodesics of those arcs, interior side positive
    std::array<int, 3> boundary_vertex{};  // marked-surface labels of the arcs
    std::array<HPoint, 6> corner{};        // walk corners, corner[0] at the origin
};

// Arcs of a right-angled hexagon with seam triple (base, nxt, prv): the arc
// between two seams is determined by hexagon_solve.
inline HexagonChart hexagon_from_seams(double base, double nxt, double prv,
                                       const Tolerance& tol = {}) {
    const std::array<double, 3> arcs = hexagon_solve(prv, base, nxt, tol);
    // hexagon_solve output k is opposite input k: the arc adjacent to base
    // and nxt (opposite prv) is arcs[0], and cyclically.
    HexagonChart hex;
    hex.seam = {base, nxt, prv};
    hex.arc = {arcs[0], arcs[1], arcs[2]}; // at head(base), at apex, at tail(base)
    const std::array<double, 6> sides{base, hex.arc[0], nxt, hex.arc[1], prv, hex.arc[2]};
    HFrame f{};
    constexpr double half_pi = 1.5707963267948966;
    for (int s = 0; s < 6; ++s) {
        hex.corner[s] = f.p;
        if (s % 2 == 1) hex.boundary[s / 2] = f.geodesic();
        f = f.advanced(sides[s]).turned(half_pi);
    }
    return hex;
}

inline HexagonChart hexagon_chart(const TruncatedTriangulation& tt, int halfedge,
                                  const Tolerance& tol = {}) {
    require_boundary(tt);
    const double base = tt.len_h(halfedge);
    const double nxt = tt.len_h(DeltaTriangulation::next(halfedge));
    const double prv = tt.len_h(DeltaTriangulation::prev(halfedge));
    HexagonChart hex = hexagon_from_seams(base, nxt, prv, tol);
    hex.boundary_vertex = {tt.head(halfedge), tt.apex(halfedge), tt.tail(halfedge)};
    return hex;
}

// Total length of every boundary geodesic: the sum of its hexagon arcs over
// all incident corners.
inline std::vector<double> boundary_lengths(const TruncatedTriangulation& tt,
                                            const Tolerance& tol = {}) {
    require_boundary(tt);
    std::vector<double> out(tt.num_vertices, 0.0);
    for (int f = 0; f < tt.n_faces(); ++f) {
        const double l0 = tt.lengths[tt.edge_of[3 * f + 0]];
        const double l1 = tt.lengths[tt.edge_of[3 * f + 1]];
        const double l2 = tt.lengths[tt.edge_of[3 * f + 2]];
        const std::array<double, 3> arcs = hexagon_solve(l0, l1, l2, tol);
        // the arc at corner c is opposite the seam of halfedge c+1
        for (int c = 0; c < 3; ++c) out[tt.faces[f][c]] += arcs[(c + 1) % 3];
    }
    return out;
}

namespace detail {

struct BoundaryHinge {
    HexagonChart near_hex;                  // interior at y > 0
    HexagonChart far_hex;                   // mapped into the chart, interior at y < 0
    std::array<HGeodesic, 3> far_boundary{}; // far_hex boundary after the mapping
    double seam_len = 0.0;
    bool self_glued = false;
};

inline BoundaryHinge unfold_boundary_hinge(const TruncatedTriangulation& tt, int e,
                                           const Tolerance& tol = {}) {
    const int ha = tt.edge_halfedge[e];
    const int hb = tt.twin[ha];
    BoundaryHinge hinge;
    hinge.seam_len = tt.lengths[e];
    hinge.self_glued = tt.self_glued(e);
    hinge.near_hex = hexagon_chart(tt, ha, tol);
    hinge.far_hex = hexagon_chart(tt, hb, tol);
    // glue the far hexagon across the shared seam: rotation by pi about the
    // seam midpoint exchanges the seam endpoints and the two sides
    const HPoint mid = h_polar(0.0, 0.5 * hinge.seam_len);
    for (int k = 0; k < 3; ++k) {
        hinge.far_boundary[k] = {point_reflection(mid, hinge.far_hex.boundary[k].n)};
    }
    return hinge;
}

} // namespace detail

// Local condition for a seam of a truncated triangulation: signed distances
// of the two hexagons' sinh-level dual points to the shared seam geodesic,
// each positive toward its own hexagon. This per-seam inequality mirrors the
// interior case; the duality theory fixes only the global decomposition, so
// certificates carry the inferred_condition flag.
inline EdgeCertificate boundary_certificate(const TruncatedTriangulation& tt,
                                            const WeightVector& r, int e,
                                            const Tolerance& tol = {}) {
    require_boundary(tt);
    const detail::BoundaryHinge hinge = detail::unfold_boundary_hinge(tt, e, tol);

    EdgeCertificate cert;
    cert.edge = e;
    cert.inferred_condition = true;
    {
        double scale = hinge.seam_len;
        for (int k = 0; k < 3; ++k) {
            scale = std::max({scale, hinge.near_hex.seam[k], hinge.far_hex.seam[k]});
        }
        cert.tie_tol = tol.tie_rel * scale;
    }

    auto radii = [&](const HexagonChart& hex) {
        return std::array<double, 3>{r[hex.boundary_vertex[0]], r[hex.boundary_vertex[1]],
                                     r[hex.boundary_vertex[2]]};
    };
    const BoundaryDualPoint near_dp =
        boundary_dual_point(hinge.near_hex.boundary, radii(hinge.near_hex), tol);
    const BoundaryDualPoint far_dp =
        boundary_dual_point(hinge.far_boundary, radii(hinge.far_hex), tol);
    const HGeodesic seam{{0.0, 1.0, 0.0}};
    cert.h_k = signed_dist_to_geodesic(near_dp.center, seam);
    cert.h_l = -signed_dist_to_geodesic(far_dp.center, seam);

    if (hinge.self_glued) {
        const double h = 0.5 * (cert.h_k + cert.h_l);
        cert.h_k = cert.h_l = h;
        cert.margin = 2.0 * h;
        cert.status = EdgeStatus::self_glued;
        return cert;
    }
    cert.margin = cert.h_k + cert.h_l;
    cert.status = cert.margin > cert.tie_tol
                      ? EdgeStatus::delaunay
                      : (cert.margin < -cert.tie_tol ? EdgeStatus::violated : EdgeStatus::tie);
    return cert;
}

// Replaces seam e by the other diagonal orthogeodesic of the hinge octagon:
// the common perpendicular of the two far boundary geodesics, measured in the
// joint chart. Combinatorially a 2-2 flip.
inline double switch_seam(TruncatedTriangulation& tt, int e, const Tolerance& tol = {}) {
    require_boundary(tt);
    if (tt.self_glued(e)) {
        fail(ErrorCode::nonconvex_hinge, "switch_seam: self-glued seams are not switchable");
    }
    const detail::BoundaryHinge hinge = detail::unfold_boundary_hinge(tt, e, tol);
    const HGeodesic gk = hinge.near_hex.boundary[1];  // apex geodesic, near side
    const HGeodesic gl = hinge.far_boundary[1];       // apex geodesic, far side
    const double c = mdot(gk.n, gl.n);
    // interior-oriented normals face each other across the octagon
    if (!(c < -1.0 - tol.scaled(1.0))) {
        fail(ErrorCode::geodesics_intersect,
             "switch_seam: apex boundary geodesics do not admit an orthogeodesic");
    }
    const double new_len = std::acosh(-c);

    // the new orthogeodesic must cross the open seam segment
    const HGeodesic perp = normalize_geodesic(mcross(gk.n, gl.n), tol);
    const Vec3m dir = mcross(perp.n, Vec3m{0.0, 1.0, 0.0});
    if (-mdot(dir, dir) <= tol.scaled(1.0)) {
        fail(ErrorCode::nonconvex_hinge, "switch_seam: orthogeodesic misses the seam");
    }
    const HPoint q = normalize_point(dir, tol);
    const double s = std::asinh(q.x);
    if (!(s > tol.scaled(hinge.seam_len) && s < hinge.seam_len - tol.scaled(hinge.seam_len))) {
        fail(ErrorCode::nonconvex_hinge, "switch_seam: orthogeodesic leaves the hinge octagon");
    }

    detail::rewire_hinge(tt, e, new_len);
    return new_len;
}

// Switch driver: same FIFO scheduling as the interior engine with the
// boundary certificate and seam switch plugged in.
inline FlipReport switch_to_delaunay(TruncatedTriangulation& tt, const WeightVector& r,
                                     const FlipConfig& cfg = {}) {
    require_boundary(tt);
    if (validate_weights(tt, r, cfg.tol) == WeightClass::rejected) {
        fail(ErrorCode::inadmissible_weights, "switch_to_delaunay: weights rejected");
    }
    return detail::run_flip_driver(
        tt,
        [&](const DeltaTriangulation& m, int e) { return boundary_certificate(m, r, e, cfg.tol); },
        [&](DeltaTriangulation& m, int e) { switch_seam(m, e, cfg.tol); }, cfg,
        ErrorCode::switch_limit_exceeded);
}

inline CertificationResult certify_global_boundary(const TruncatedTriangulation& tt,
                                                   const WeightVector& r,
                                                   const Tolerance& tol = {}) {
    CertificationResult res;
    for (int e = 0; e < tt.n_edges(); ++e) {
        res.certificates.push_back(boundary_certificate(tt, r, e, tol));
        if (res.certificates.back().status == EdgeStatus::violated) res.violations.push_back(e);
    }
    res.ok = res.violations.empty();
    return res;
}

// Tie seams erased, remaining complex hashed canonically (same id scheme as
// the interior engine).
inline TessellationId canonical_tessellation_boundary(const TruncatedTriangulation& tt,
                                                      const WeightVector& r,
                                                      const Tolerance& tol = {}) {
    std::vector<char> dropped(tt.n_edges(), 0);
    TessellationId out;
    for (int e = 0; e < tt.n_edges(); ++e) {
        const EdgeCertificate cert = boundary_certificate(tt, r, e, tol);
        if (cert.status == EdgeStatus::violated) {
            fail(ErrorCode::invalid_mesh, "canonical_tessellation_boundary: not weighted Delaunay");
        }
        if (cert.status == EdgeStatus::tie) {
            dropped[e] = 1;
            ++out.deleted_ties;
        }
    }
    out.hash = canonical_complex_hash(tt, dropped);
    return out;
}

} // namespace wvd
