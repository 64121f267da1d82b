#pragma once

#include <cstdint>
#include <deque>
#include <functional>
#include <vector>

#include "wvd/mesh.hpp"

namespace wvd {

enum class EdgeStatus { delaunay, tie, violated, self_glued };

inline const char* to_string(EdgeStatus s) {
    switch (s) {
        case EdgeStatus::delaunay:   return "delaunay";
        case EdgeStatus::tie:        return "tie";
        case EdgeStatus::violated:   return "violated";
        case EdgeStatus::self_glued: return "self_glued";
    }
    return "?";
}

// Local weighted Delaunay certificate of one edge: the signed heights of the
// two hinge power centers over the shared edge (positive toward the hinge's
// own apex) and their sum. The edge is locally Delaunay iff the margin is
// nonnegative; |margin| within the tie tolerance makes it a tie.
struct EdgeCertificate {
    int edge = -1;
    double h_k = 0.0;
    double h_l = 0.0;
    double margin = 0.0;
    double tie_tol = 0.0;
    EdgeStatus status = EdgeStatus::delaunay;
    bool inferred_condition = false; // set by the boundary-surface certificate
};

inline EdgeCertificate edge_certificate(const DeltaTriangulation& m, const WeightVector& w,
                                        int e, const Tolerance& tol = {}) {
    if (m.geometry == Geometry::boundary) {
        fail(ErrorCode::invalid_mesh, "edge_certificate: use the boundary-surface certificate");
    }
    const HingeChart chart = unfold_hinge(m, e, tol);

    EdgeCertificate cert;
    cert.edge = e;
    cert.tie_tol = tol.tie_rel * chart.scale;

    if (!chart.hyperbolic) {
        const WeightedPoint pi{chart.e[0], w[chart.vertex[0]]};
        const WeightedPoint pj{chart.e[1], w[chart.vertex[1]]};
        const WeightedPoint pk{chart.e[2], w[chart.vertex[2]]};
        const WeightedPoint pl{chart.e[3], w[chart.vertex[3]]};
        const PowerCenterE ok = power_center(pi, pj, pk, tol);
        const PowerCenterE ol = power_center(pi, pj, pl, tol);
        cert.h_k = signed_height(ok.center, chart.e[0], chart.e[1], chart.e[2], tol);
        cert.h_l = signed_height(ol.center, chart.e[0], chart.e[1], chart.e[3], tol);
    } else {
        try {
            const PowerCenterH ok = hyp_power_center(
                {chart.h[0], chart.h[1], chart.h[2]},
                {w[chart.vertex[0]], w[chart.vertex[1]], w[chart.vertex[2]]}, tol);
            const PowerCenterH ol = hyp_power_center(
                {chart.h[0], chart.h[1], chart.h[3]},
                {w[chart.vertex[0]], w[chart.vertex[1]], w[chart.vertex[3]]}, tol);
            const HGeodesic base{{0.0, 1.0, 0.0}}; // chart edge geodesic; v_k side positive
            cert.h_k = signed_dist_to_geodesic(ok.center, base);
            cert.h_l = -signed_dist_to_geodesic(ol.center, base);
        } catch (const GeomError& err) {
            if (err.code() == ErrorCode::no_intersection || err.code() == ErrorCode::invalid_radii) {
                // Weight-domain diagnostic: the admissibility surrogate cannot
                // rule this out, so surface it under one name.
                fail(ErrorCode::power_center_infeasible, err.what());
            }
            throw;
        }
    }

    if (chart.self_glued) {
        // One face glued to itself along e: the two chart triangles are mirror
        // images, so the heights agree; symmetrize and short-circuit.
        const double h = 0.5 * (cert.h_k + cert.h_l);
        cert.h_k = cert.h_l = h;
        cert.margin = 2.0 * h;
        cert.status = EdgeStatus::self_glued;
        return cert;
    }

    cert.margin = cert.h_k + cert.h_l;
    if (cert.margin > cert.tie_tol) {
        cert.status = EdgeStatus::delaunay;
    } else if (cert.margin < -cert.tie_tol) {
        cert.status = EdgeStatus::violated;
    } else {
        cert.status = EdgeStatus::tie;
    }
    return cert;
}

struct CertificationResult {
    bool ok = false;
    std::vector<int> violations;
    std::vector<EdgeCertificate> certificates;
};

struct FlipConfig {
    long max_flips = -1; // negative: use 50 * E^2
    Tolerance tol{};
    // Invoked after every flip with the mesh and the flipped edge.
    std::function<void(const DeltaTriangulation&, int)> after_flip;
};

struct FlipReport {
    long flips = 0;
    std::vector<EdgeCertificate> certificates; // final full sweep
};

namespace detail {

// FIFO flip scheduling shared by the flat/hyperbolic driver and the
// boundary-surface switch driver: seed with every edge, flip violated edges,
// re-enqueue the hinge boundary after each flip. Ties are never flipped.
// An edge whose certificate is momentarily infeasible (a dual point outside
// the plane mid-descent) is deferred rather than fatal; the run only gives up
// when no decidable edge makes progress, and the final sweep re-raises any
// infeasibility that survived.
template <class CertFn, class FlipFn>
FlipReport run_flip_driver(DeltaTriangulation& m, CertFn certificate, FlipFn do_flip,
                           const FlipConfig& cfg, ErrorCode limit_code) {
    const long cap = cfg.max_flips >= 0
                         ? cfg.max_flips
                         : 50L * static_cast<long>(m.n_edges()) * static_cast<long>(m.n_edges());
    std::deque<int> queue;
    std::vector<char> queued(m.n_edges(), 0);
    auto enqueue = [&](int e) {
        if (!queued[e]) {
            queued[e] = 1;
            queue.push_back(e);
        }
    };
    for (int e = 0; e < m.n_edges(); ++e) enqueue(e);

    FlipReport report;
    long stuck = 0;
    while (!queue.empty()) {
        const int e = queue.front();
        queue.pop_front();
        queued[e] = 0;
        EdgeCertificate cert;
        try {
            cert = certificate(m, e);
        } catch (const GeomError& err) {
            const bool transient = err.code() == ErrorCode::power_center_infeasible ||
                                   err.code() == ErrorCode::no_intersection ||
                                   err.code() == ErrorCode::geodesics_intersect;
            if (!transient || ++stuck > 2 * static_cast<long>(queue.size()) + 4) throw;
            enqueue(e);
            continue;
        }
        if (cert.status != EdgeStatus::violated) continue;
        if (report.flips >= cap) {
            fail(limit_code, "flip driver: cap of " + std::to_string(cap) + " flips exceeded");
        }

        const int ha = m.edge_halfedge[e];
        const int hb = m.twin[ha];
        const std::array<int, 4> ring{
            m.edge_of[DeltaTriangulation::next(ha)], m.edge_of[DeltaTriangulation::prev(ha)],
            m.edge_of[DeltaTriangulation::next(hb)], m.edge_of[DeltaTriangulation::prev(hb)]};
        do_flip(m, e);
        ++report.flips;
        stuck = 0;
        if (cfg.after_flip) cfg.after_flip(m, e);
        for (int r : ring) enqueue(r);
        enqueue(e);
    }
    for (int e = 0; e < m.n_edges(); ++e) {
        report.certificates.push_back(certificate(m, e));
    }
    return report;
}

} // namespace detail

// Flips until every edge certifies locally weighted Delaunay (or tie or
// self-glued). Works in place; the final certificates come from a full sweep.
inline FlipReport flip_to_delaunay(DeltaTriangulation& m, const WeightVector& w,
                                   const FlipConfig& cfg = {}) {
    if (validate_weights(m, w, cfg.tol) == WeightClass::rejected) {
        fail(ErrorCode::inadmissible_weights, "flip_to_delaunay: weights rejected by validate_weights");
    }
    return detail::run_flip_driver(
        m, [&](const DeltaTriangulation& mesh, int e) { return edge_certificate(mesh, w, e, cfg.tol); },
        [&](DeltaTriangulation& mesh, int e) { flip_edge(mesh, e, cfg.tol); }, cfg,
        ErrorCode::flip_limit_exceeded);
}

inline CertificationResult certify_global(const DeltaTriangulation& m, const WeightVector& w,
                                          const Tolerance& tol = {}) {
    CertificationResult res;
    for (int e = 0; e < m.n_edges(); ++e) {
        res.certificates.push_back(edge_certificate(m, w, e, tol));
        if (res.certificates.back().status == EdgeStatus::violated) {
            res.violations.push_back(e);
        }
    }
    res.ok = res.violations.empty();
    return res;
}

// ---------------------------------------------------------------------------
// Canonical hashing of the tessellation

namespace detail {

// The next surviving halfedge along the boundary of the merged polygon
// containing h (pivots across dropped edges).
inline int next_surviving(const DeltaTriangulation& m, const std::vector<char>& dropped, int h) {
    int n = DeltaTriangulation::next(h);
    while (dropped[m.edge_of[n]]) n = DeltaTriangulation::next(m.twin[n]);
    return n;
}

inline std::uint64_t fnv1a(const std::vector<std::int64_t>& word) {
    std::uint64_t h = 1469598103934665603ULL;
    for (std::int64_t v : word) {
        auto u = static_cast<std::uint64_t>(v);
        for (int b = 0; b < 8; ++b) {
            h ^= (u >> (8 * b)) & 0xffULL;
            h *= 1099511628211ULL;
        }
    }
    return h;
}

} // namespace detail

// Hash of the polygonal complex obtained by deleting `dropped` edges,
// depending only on the combinatorial map and the given vertex labels: any
// renumbering of faces, edges and halfedges that preserves the map and the
// labels hashes identically. The canonical word is minimised over all
// starting halfedges, which removes the rotation/reflection freedom of any
// particular traversal.
inline std::uint64_t canonical_complex_hash(const DeltaTriangulation& m,
                                            const std::vector<char>& dropped) {
    const int nh = m.n_halfedges();
    std::vector<int> surviving;
    for (int h = 0; h < nh; ++h) {
        if (!dropped[m.edge_of[h]]) surviving.push_back(h);
    }
    if (surviving.empty()) {
        fail(ErrorCode::invalid_mesh, "canonical_complex_hash: all edges deleted");
    }

    std::vector<std::int64_t> best;
    std::vector<int> id(nh);
    std::vector<char> emitted(nh);
    for (int start : surviving) {
        std::fill(id.begin(), id.end(), -1);
        std::fill(emitted.begin(), emitted.end(), 0);
        std::vector<std::int64_t> word;
        word.reserve(surviving.size() * 3);
        std::deque<int> queue{start};
        id[start] = 0;
        int next_id = 1;
        while (!queue.empty()) {
            const int h0 = queue.front();
            queue.pop_front();
            if (emitted[h0]) continue;
            int cur = h0;
            do {
                emitted[cur] = 1;
                word.push_back(m.tail(cur));
                const int t = m.twin[cur];
                if (id[t] == -1) {
                    id[t] = next_id++;
                    queue.push_back(t);
                    word.push_back(-1);
                } else {
                    word.push_back(id[t]);
                }
                cur = detail::next_surviving(m, dropped, cur);
            } while (cur != h0);
            word.push_back(-2);
        }
        if (best.empty() || word < best) best = std::move(word);
    }
    return detail::fnv1a(best);
}

struct TessellationId {
    std::uint64_t hash = 0;
    int deleted_ties = 0;
};

// Identifier of the weighted Delaunay tessellation underlying a certified
// triangulation: tie edges are deleted combinatorially and the remaining
// polygonal complex is hashed canonically. Triangulations differing by
// diagonal switches of tie edges map to the same id.
inline TessellationId canonical_tessellation(const DeltaTriangulation& m, const WeightVector& w,
                                             const Tolerance& tol = {}) {
    std::vector<char> dropped(m.n_edges(), 0);
    TessellationId out;
    for (int e = 0; e < m.n_edges(); ++e) {
        const EdgeCertificate cert = edge_certificate(m, w, e, tol);
        if (cert.status == EdgeStatus::violated) {
            fail(ErrorCode::invalid_mesh, "canonical_tessellation: triangulation is not weighted Delaunay");
        }
        if (cert.status == EdgeStatus::tie) {
            dropped[e] = 1;
            ++out.deleted_ties;
        }
    }
    out.hash = canonical_complex_hash(m, dropped);
    return out;
}

// ---------------------------------------------------------------------------
// Dual complex

// Chart of a single face with corner 0 at the origin and corner 1 on the
// positive first axis. Used to express dual vertices without a global chart.
struct FaceChart {
    bool hyperbolic = false;
    std::array<Point2, 3> e{};
    std::array<HPoint, 3> h{};
};

inline FaceChart face_chart(const DeltaTriangulation& m, int f, const Tolerance& tol = {}) {
    const double a = m.lengths[m.edge_of[3 * f + 0]];
    const double c = m.lengths[m.edge_of[3 * f + 2]];
    const double ang0 = corner_angles(m, f, tol)[0];
    FaceChart chart;
    chart.hyperbolic = m.geometry != Geometry::flat;
    if (!chart.hyperbolic) {
        chart.e = {Point2{0.0, 0.0}, Point2{a, 0.0}, Point2{c * std::cos(ang0), c * std::sin(ang0)}};
    } else {
        chart.h = {HPoint{0.0, 0.0, 1.0}, h_polar(0.0, a), h_polar(ang0, c)};
    }
    return chart;
}

// Weighted Voronoi decomposition as a CW complex dual to the Delaunay
// tessellation: one 0-cell per face (its power center, in that face's chart),
// one 1-cell per edge with length h_k + h_l, one 2-cell per vertex given by
// the cyclic fan of incident faces.
struct DualComplex {
    struct Vertex {
        int face = -1;
        double x = 0.0, y = 0.0, z = 0.0; // chart coordinates (z only hyperbolic)
        double power = 0.0;               // flat: power; hyperbolic: cosh ratio
    };
    struct Edge {
        int edge = -1;
        double length = 0.0;
    };
    struct Face {
        int vertex = -1;
        std::vector<int> incident_faces; // cyclic, one entry per incident corner
    };
    std::vector<Vertex> vertices;
    std::vector<Edge> edges;
    std::vector<Face> faces;
};

inline DualComplex extract_dual(const DeltaTriangulation& m, const WeightVector& w,
                                const Tolerance& tol = {}) {
    DualComplex dual;
    for (int f = 0; f < m.n_faces(); ++f) {
        const FaceChart chart = face_chart(m, f, tol);
        DualComplex::Vertex dv;
        dv.face = f;
        if (!chart.hyperbolic) {
            const PowerCenterE o = power_center({chart.e[0], w[m.faces[f][0]]},
                                                {chart.e[1], w[m.faces[f][1]]},
                                                {chart.e[2], w[m.faces[f][2]]}, tol);
            dv.x = o.center.x;
            dv.y = o.center.y;
            dv.power = o.power;
        } else {
            try {
                const PowerCenterH o = hyp_power_center(
                    chart.h, {w[m.faces[f][0]], w[m.faces[f][1]], w[m.faces[f][2]]}, tol);
                dv.x = o.center.x;
                dv.y = o.center.y;
                dv.z = o.center.z;
                dv.power = o.ratio;
            } catch (const GeomError& err) {
                if (err.code() == ErrorCode::no_intersection || err.code() == ErrorCode::invalid_radii) {
                    fail(ErrorCode::power_center_infeasible, err.what());
                }
                throw;
            }
        }
        dual.vertices.push_back(dv);
    }
    for (int e = 0; e < m.n_edges(); ++e) {
        const EdgeCertificate cert = edge_certificate(m, w, e, tol);
        if (cert.status == EdgeStatus::violated) {
            fail(ErrorCode::invalid_mesh, "extract_dual: triangulation is not weighted Delaunay");
        }
        dual.edges.push_back({e, cert.margin});
    }
    {
        std::vector<int> out_halfedge(m.num_vertices, -1);
        for (int h = 0; h < m.n_halfedges(); ++h) {
            if (out_halfedge[m.tail(h)] == -1) out_halfedge[m.tail(h)] = h;
        }
        for (int v = 0; v < m.num_vertices; ++v) {
            DualComplex::Face df;
            df.vertex = v;
            int h = out_halfedge[v];
            do {
                df.incident_faces.push_back(DeltaTriangulation::face_of(h));
                h = m.next_out(h);
            } while (h != out_halfedge[v]);
            dual.faces.push_back(std::move(df));
        }
    }
    return dual;
}

} // namespace wvd
