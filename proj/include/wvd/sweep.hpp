#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <string>
#include <thread>
#include <vector>

#include "wvd/boundary.hpp"
#include "wvd/delaunay.hpp"
#include "wvd/rng.hpp"

namespace wvd {

// Per-vertex upper bounds of the guaranteed-admissible sampling box:
// (0.49 * min incident edge)^2 for flat weights, 0.49 * min incident edge for
// hyperbolic and boundary radii.
inline std::vector<double> surrogate_box(const DeltaTriangulation& m) {
    std::vector<double> minlen(m.num_vertices, std::numeric_limits<double>::max());
    for (int h = 0; h < m.n_halfedges(); ++h) {
        minlen[m.tail(h)] = std::min(minlen[m.tail(h)], m.len_h(h));
    }
    std::vector<double> box(m.num_vertices);
    for (int v = 0; v < m.num_vertices; ++v) {
        const double b = 0.49 * minlen[v];
        box[v] = m.geometry == Geometry::flat ? b * b : b;
    }
    return box;
}

// Upper bound for the surface diameter. Interior geometries: vertex-graph
// diameter plus one face excursion on each end (a point of a triangle is at
// most the longest side away from a corner). Boundary surfaces: a walk bound
// over the seam-and-arc skeleton.
inline double diameter_bound(const DeltaTriangulation& m, const Tolerance& tol = {}) {
    if (m.geometry == Geometry::boundary) {
        double seams = 0.0, arcs = 0.0, perim = 0.0;
        for (double l : m.lengths) seams += l;
        for (int f = 0; f < m.n_faces(); ++f) {
            const double l0 = m.lengths[m.edge_of[3 * f + 0]];
            const double l1 = m.lengths[m.edge_of[3 * f + 1]];
            const double l2 = m.lengths[m.edge_of[3 * f + 2]];
            const auto a = hexagon_solve(l0, l1, l2, tol);
            arcs += a[0] + a[1] + a[2];
            perim = std::max(perim, l0 + l1 + l2 + a[0] + a[1] + a[2]);
        }
        return 2.0 * (seams + arcs) + perim;
    }
    const int n = m.num_vertices;
    const double inf = std::numeric_limits<double>::max() / 4;
    std::vector<double> d(static_cast<size_t>(n) * n, inf);
    for (int v = 0; v < n; ++v) d[static_cast<size_t>(v) * n + v] = 0.0;
    double lmax = 0.0;
    for (int e = 0; e < m.n_edges(); ++e) {
        const int h = m.edge_halfedge[e];
        const int a = m.tail(h), b = m.head(h);
        auto& dab = d[static_cast<size_t>(a) * n + b];
        dab = std::min(dab, m.lengths[e]);
        auto& dba = d[static_cast<size_t>(b) * n + a];
        dba = std::min(dba, m.lengths[e]);
        lmax = std::max(lmax, m.lengths[e]);
    }
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                const double via = d[static_cast<size_t>(i) * n + k] + d[static_cast<size_t>(k) * n + j];
                auto& dij = d[static_cast<size_t>(i) * n + j];
                if (via < dij) dij = via;
            }
    double diam = 0.0;
    for (double v : d) diam = std::max(diam, v);
    return diam + 2.0 * lmax;
}

// True iff every edge of a certified result respects the 2 D-hat bound on
// weighted Delaunay edge lengths.
inline bool edge_bound_check(const DeltaTriangulation& result, double dhat,
                             const Tolerance& tol = {}) {
    for (double l : result.lengths) {
        if (l > 2.0 * dhat + tol.scaled(dhat)) return false;
    }
    return true;
}

struct SamplerConfig {
    enum class Kind { uniform_random, grid };
    Kind kind = Kind::uniform_random;
    long count = 1000;
    std::uint64_t seed = 0;
};

struct SweepConfig {
    SamplerConfig sampler;
    FlipConfig flip;
    int threads = 1;
    bool record_trace = false; // keep the full (sample, hash) list for CSV output
};

struct SweepWitness {
    std::uint64_t hash = 0;
    long sample = -1;   // first sample that produced this tessellation
    WeightVector weights;
    long flips = 0;
    int deleted_ties = 0;
};

struct SweepFailure {
    long sample = -1;
    std::string error;
};

struct SweepReport {
    std::uint64_t surface_hash = 0; // canonical hash of the input complex
    Geometry geometry = Geometry::flat;
    long samples = 0;
    std::vector<SweepWitness> catalog;  // sorted by hash
    std::vector<SweepFailure> failures; // sorted by sample
    double max_edge_length = 0.0;       // over all certified results
    double diameter_bound = 0.0;
    long total_flips = 0;
    std::vector<std::pair<long, std::uint64_t>> trace;
};

namespace detail {

// Largest L with L^dims <= count.
inline int grid_levels(long count, int dims) {
    int levels = 1;
    for (;;) {
        long total = 1;
        bool fits = true;
        for (int v = 0; v < dims; ++v) {
            if (total > count / (levels + 1)) {
                fits = false;
                break;
            }
            total *= levels + 1;
        }
        if (!fits || total > count) return levels;
        ++levels;
    }
}

} // namespace detail

// Deterministic weights for one sample. Grid sampling uses the largest
// per-vertex level count whose full grid fits in `count`.
inline WeightVector sample_weights(const DeltaTriangulation& m, const std::vector<double>& box,
                                   const SamplerConfig& sampler, long index) {
    WeightVector w(m.num_vertices);
    if (sampler.kind == SamplerConfig::Kind::uniform_random) {
        detail::SplitMix64 rng(sampler.seed * 0x9e3779b97f4a7c15ULL + 0x1234567 + index);
        for (int v = 0; v < m.num_vertices; ++v) w[v] = rng.uniform01() * box[v];
    } else {
        const int levels = detail::grid_levels(sampler.count, m.num_vertices);
        long rest = index;
        for (int v = 0; v < m.num_vertices; ++v) {
            const long digit = rest % levels;
            rest /= levels;
            w[v] = box[v] * (static_cast<double>(digit) + 1.0) / (levels + 1.0);
        }
    }
    return w;
}

inline long effective_sample_count(const DeltaTriangulation& m, const SamplerConfig& sampler) {
    if (sampler.kind == SamplerConfig::Kind::uniform_random) return sampler.count;
    const int levels = detail::grid_levels(sampler.count, m.num_vertices);
    long total = 1;
    for (int v = 0; v < m.num_vertices; ++v) total *= levels;
    return total;
}

// Runs the flip/switch driver over sampled weight vectors and catalogs the
// distinct canonical tessellations. Deterministic for a fixed seed: samples
// carry independent streams and the merge keeps the smallest witness sample,
// so the thread count cannot change the report.
inline SweepReport sweep(const DeltaTriangulation& mesh, const SweepConfig& cfg = {}) {
    SweepReport report;
    report.geometry = mesh.geometry;
    report.surface_hash = canonical_complex_hash(mesh, std::vector<char>(mesh.n_edges(), 0));
    report.diameter_bound = diameter_bound(mesh, cfg.flip.tol);
    report.samples = effective_sample_count(mesh, cfg.sampler);
    const std::vector<double> box = surrogate_box(mesh);

    struct Partial {
        std::map<std::uint64_t, SweepWitness> catalog;
        std::vector<SweepFailure> failures;
        double max_edge_length = 0.0;
        long total_flips = 0;
        std::vector<std::pair<long, std::uint64_t>> trace;
    };

    auto run_range = [&](long lo, long hi, Partial& out) {
        for (long s = lo; s < hi; ++s) {
            const WeightVector w = sample_weights(mesh, box, cfg.sampler, s);
            try {
                DeltaTriangulation work = mesh;
                FlipConfig fc = cfg.flip;
                const FlipReport rep = mesh.geometry == Geometry::boundary
                                           ? switch_to_delaunay(work, w, fc)
                                           : flip_to_delaunay(work, w, fc);
                const TessellationId id = mesh.geometry == Geometry::boundary
                                              ? canonical_tessellation_boundary(work, w, fc.tol)
                                              : canonical_tessellation(work, w, fc.tol);
                out.total_flips += rep.flips;
                for (double l : work.lengths) out.max_edge_length = std::max(out.max_edge_length, l);
                auto it = out.catalog.find(id.hash);
                if (it == out.catalog.end() || it->second.sample > s) {
                    out.catalog[id.hash] = SweepWitness{id.hash, s, w, rep.flips, id.deleted_ties};
                }
                if (cfg.record_trace) out.trace.push_back({s, id.hash});
            } catch (const GeomError& err) {
                out.failures.push_back({s, err.what()});
                if (cfg.record_trace) out.trace.push_back({s, 0});
            }
        }
    };

    const int nthreads = std::max(1, cfg.threads);
    std::vector<Partial> parts(nthreads);
    if (nthreads == 1) {
        run_range(0, report.samples, parts[0]);
    } else {
        std::vector<std::thread> pool;
        const long chunk = (report.samples + nthreads - 1) / nthreads;
        for (int t = 0; t < nthreads; ++t) {
            const long lo = t * chunk, hi = std::min<long>(report.samples, lo + chunk);
            pool.emplace_back([&, lo, hi, t] { run_range(lo, hi, parts[t]); });
        }
        for (auto& th : pool) th.join();
    }

    std::map<std::uint64_t, SweepWitness> merged;
    for (auto& p : parts) {
        for (auto& [h, wit] : p.catalog) {
            auto it = merged.find(h);
            if (it == merged.end() || it->second.sample > wit.sample) merged[h] = wit;
        }
        for (auto& f : p.failures) report.failures.push_back(f);
        report.max_edge_length = std::max(report.max_edge_length, p.max_edge_length);
        report.total_flips += p.total_flips;
        for (auto& tr : p.trace) report.trace.push_back(tr);
    }
    for (auto& [h, wit] : merged) report.catalog.push_back(wit);
    std::sort(report.failures.begin(), report.failures.end(),
              [](const SweepFailure& a, const SweepFailure& b) { return a.sample < b.sample; });
    std::sort(report.trace.begin(), report.trace.end());
    return report;
}

// Replays a catalogued witness: the driver must reproduce the same hash and a
// clean certification.
inline bool replay_witness(const DeltaTriangulation& mesh, const SweepWitness& wit,
                           const FlipConfig& cfg = {}) {
    DeltaTriangulation work = mesh;
    if (mesh.geometry == Geometry::boundary) {
        switch_to_delaunay(work, wit.weights, cfg);
        if (!certify_global_boundary(work, wit.weights, cfg.tol).ok) return false;
        return canonical_tessellation_boundary(work, wit.weights, cfg.tol).hash == wit.hash;
    }
    flip_to_delaunay(work, wit.weights, cfg);
    if (!certify_global(work, wit.weights, cfg.tol).ok) return false;
    return canonical_tessellation(work, wit.weights, cfg.tol).hash == wit.hash;
}

} // namespace wvd
