// Command line front end: validate weight vectors, run the flip/switch
// drivers, export weighted Voronoi dual complexes, sweep weight space, and
// render small flat examples as SVG.
//
// Exit codes: 0 ok, 1 surrogate-warning (weights only edge-admissible),
// 2 rejected/refused, 64 usage or parse error, 70 internal limit.

#include <cinttypes>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "wvd/boundary.hpp"
#include "wvd/delaunay.hpp"
#include "wvd/mesh_io.hpp"
#include "wvd/svg.hpp"
#include "wvd/sweep.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitSurrogateWarning = 1;
constexpr int kExitRejected = 2;
constexpr int kExitUsage = 64;
constexpr int kExitInternalLimit = 70;

std::string hex64(std::uint64_t v) {
    char buf[19];
    std::snprintf(buf, sizeof buf, "%016" PRIx64, v);
    return buf;
}

void emit(const nlohmann::json& j, const std::string& output) {
    if (output.empty()) {
        wvd::write_canonical_json(std::cout, j);
        std::cout << "\n";
    } else {
        std::ofstream out(output);
        if (!out) wvd::fail(wvd::ErrorCode::parse_error, "cannot open " + output + " for writing");
        wvd::write_canonical_json(out, j);
        out << "\n";
    }
}

wvd::MeshBundle load_input(const std::string& path) {
    if (path.size() > 4 && path.substr(path.size() - 4) == ".obj") {
        wvd::MeshBundle bundle;
        bundle.mesh = wvd::load_obj(path);
        return bundle;
    }
    return wvd::load_mesh(path);
}

// Weights from the input file, or a safe default deep inside the admissible
// box (one quarter of the surrogate bound per vertex).
wvd::WeightVector pick_weights(const wvd::MeshBundle& bundle, bool& defaulted) {
    if (bundle.weights) {
        defaulted = false;
        return *bundle.weights;
    }
    defaulted = true;
    wvd::WeightVector w = wvd::surrogate_box(bundle.mesh);
    for (double& x : w) x *= 0.25;
    return w;
}

nlohmann::json certificates_json(const std::vector<wvd::EdgeCertificate>& certs) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& c : certs) {
        arr.push_back({{"edge", c.edge},
                       {"h_k", c.h_k},
                       {"h_l", c.h_l},
                       {"margin", c.margin},
                       {"status", wvd::to_string(c.status)}});
    }
    return arr;
}

struct CommonOpts {
    std::string input;
    std::string output;
    double tol = 1e-12;
    wvd::Tolerance tolerance() const {
        wvd::Tolerance t;
        t.rel = tol;
        return t;
    }
};

int run_validate(const CommonOpts& opt) {
    const wvd::MeshBundle bundle = load_input(opt.input);
    bool defaulted = false;
    const wvd::WeightVector w = pick_weights(bundle, defaulted);
    const wvd::WeightClass cls = wvd::validate_weights(bundle.mesh, w, opt.tolerance());
    nlohmann::json j{{"classification", wvd::to_string(cls)},
                     {"geometry", wvd::to_string(bundle.mesh.geometry)},
                     {"vertices", bundle.mesh.num_vertices},
                     {"edges", bundle.mesh.n_edges()},
                     {"faces", bundle.mesh.n_faces()},
                     {"euler_characteristic", bundle.mesh.euler_characteristic()},
                     {"weights_defaulted", defaulted}};
    emit(j, opt.output);
    switch (cls) {
        case wvd::WeightClass::w_prime_surrogate: return kExitOk;
        case wvd::WeightClass::edge_admissible:   return kExitSurrogateWarning;
        case wvd::WeightClass::rejected:          return kExitRejected;
    }
    return kExitInternalLimit;
}

int run_delaunay(const CommonOpts& opt, long flip_cap) {
    const wvd::MeshBundle bundle = load_input(opt.input);
    bool defaulted = false;
    const wvd::WeightVector w = pick_weights(bundle, defaulted);
    const wvd::WeightClass cls = wvd::validate_weights(bundle.mesh, w, opt.tolerance());
    if (cls == wvd::WeightClass::rejected) {
        std::cerr << "weights rejected by the admissibility surrogate\n";
        return kExitRejected;
    }
    wvd::DeltaTriangulation mesh = bundle.mesh;
    wvd::FlipConfig cfg;
    cfg.max_flips = flip_cap;
    cfg.tol = opt.tolerance();
    const bool boundary = mesh.geometry == wvd::Geometry::boundary;
    const wvd::FlipReport rep = boundary ? wvd::switch_to_delaunay(mesh, w, cfg)
                                         : wvd::flip_to_delaunay(mesh, w, cfg);
    const wvd::TessellationId id = boundary
                                       ? wvd::canonical_tessellation_boundary(mesh, w, cfg.tol)
                                       : wvd::canonical_tessellation(mesh, w, cfg.tol);
    nlohmann::json j{{"flips", rep.flips},
                     {"certificates", certificates_json(rep.certificates)},
                     {"tessellation_hash", hex64(id.hash)},
                     {"deleted_ties", id.deleted_ties},
                     {"inferred_condition", boundary},
                     {"weights_defaulted", defaulted},
                     {"mesh", wvd::mesh_to_json(mesh, w)}};
    emit(j, opt.output);
    return cls == wvd::WeightClass::edge_admissible ? kExitSurrogateWarning : kExitOk;
}

int run_voronoi(const CommonOpts& opt, const std::string& svg_path) {
    const wvd::MeshBundle bundle = load_input(opt.input);
    if (bundle.mesh.geometry == wvd::Geometry::boundary) {
        std::cerr << "voronoi export supports flat and hyperbolic surfaces\n";
        return kExitUsage;
    }
    bool defaulted = false;
    const wvd::WeightVector w = pick_weights(bundle, defaulted);
    const wvd::CertificationResult cert = wvd::certify_global(bundle.mesh, w, opt.tolerance());
    if (!cert.ok) {
        std::cerr << "input is not weighted Delaunay (" << cert.violations.size()
                  << " violated edges); run `wvd delaunay` first\n";
        return kExitRejected;
    }
    const wvd::DualComplex dual = wvd::extract_dual(bundle.mesh, w, opt.tolerance());
    nlohmann::json dv = nlohmann::json::array();
    const bool hyp = bundle.mesh.geometry == wvd::Geometry::hyperbolic;
    for (const auto& v : dual.vertices) {
        nlohmann::json point = hyp ? nlohmann::json{v.x, v.y, v.z} : nlohmann::json{v.x, v.y};
        dv.push_back({{"face", v.face}, {"point", point}, {"power", v.power}});
    }
    nlohmann::json de = nlohmann::json::array();
    for (const auto& e : dual.edges) de.push_back({e.edge, e.length});
    nlohmann::json df = nlohmann::json::array();
    for (const auto& f : dual.faces) df.push_back({{"vertex", f.vertex}, {"cycle", f.incident_faces}});
    nlohmann::json j{{"dual_vertices", dv},
                     {"dual_edges", de},
                     {"dual_faces", df},
                     {"weights_defaulted", defaulted}};
    emit(j, opt.output);

    if (!svg_path.empty()) {
        if (hyp) {
            std::cerr << "--svg rendering supports flat surfaces only\n";
            return kExitUsage;
        }
        std::ofstream out(svg_path);
        if (!out) {
            std::cerr << "cannot open " << svg_path << " for writing\n";
            return kExitUsage;
        }
        const wvd::FlatLayout layout = wvd::layout_flat(bundle.mesh, 0, opt.tolerance());
        wvd::SvgOptions so;
        so.draw_dual = true;
        so.weights = w;
        wvd::render_svg(out, bundle.mesh, layout, so, opt.tolerance());
    }
    return kExitOk;
}

int run_sweep(const CommonOpts& opt, const wvd::SweepConfig& cfg_in, const std::string& csv_path) {
    const wvd::MeshBundle bundle = load_input(opt.input);
    wvd::SweepConfig cfg = cfg_in;
    cfg.flip.tol = opt.tolerance();
    cfg.record_trace = !csv_path.empty();
    const wvd::SweepReport rep = wvd::sweep(bundle.mesh, cfg);

    nlohmann::json catalog = nlohmann::json::array();
    for (const auto& wit : rep.catalog) {
        catalog.push_back({{"hash", hex64(wit.hash)},
                           {"witness_sample", wit.sample},
                           {"witness_weights", wit.weights},
                           {"flips", wit.flips},
                           {"deleted_ties", wit.deleted_ties}});
    }
    nlohmann::json failures = nlohmann::json::array();
    for (const auto& f : rep.failures) failures.push_back({{"sample", f.sample}, {"error", f.error}});
    nlohmann::json j{{"surface", hex64(rep.surface_hash)},
                     {"geometry", wvd::to_string(rep.geometry)},
                     {"samples", rep.samples},
                     {"seed", cfg.sampler.seed},
                     {"sampler",
                      cfg.sampler.kind == wvd::SamplerConfig::Kind::grid ? "grid" : "uniform-random"},
                     {"distinct_tessellations", catalog.size()},
                     {"catalog", catalog},
                     {"failures", failures},
                     {"max_edge_length", rep.max_edge_length},
                     {"diameter_bound", rep.diameter_bound},
                     {"edge_bound_2dhat_ok",
                      rep.max_edge_length <= 2 * rep.diameter_bound + 1e-9 * rep.diameter_bound},
                     {"total_flips", rep.total_flips}};
    emit(j, opt.output);

    if (!csv_path.empty()) {
        std::ofstream csv(csv_path);
        if (!csv) {
            std::cerr << "cannot open " << csv_path << " for writing\n";
            return kExitUsage;
        }
        csv << "sample,hash\n";
        for (const auto& [s, h] : rep.trace) csv << s << "," << hex64(h) << "\n";
    }
    return kExitOk;
}

int run_render(const CommonOpts& opt, int root, bool with_dual) {
    const wvd::MeshBundle bundle = load_input(opt.input);
    if (bundle.mesh.geometry != wvd::Geometry::flat) {
        std::cerr << "render supports flat surfaces only\n";
        return kExitUsage;
    }
    if (root < 0 || root >= bundle.mesh.n_faces()) {
        std::cerr << "root face out of range\n";
        return kExitUsage;
    }
    const wvd::FlatLayout layout = wvd::layout_flat(bundle.mesh, root, opt.tolerance());
    wvd::SvgOptions so;
    so.draw_dual = with_dual;
    if (with_dual) {
        bool defaulted = false;
        so.weights = pick_weights(bundle, defaulted);
    }
    if (opt.output.empty()) {
        wvd::render_svg(std::cout, bundle.mesh, layout, so, opt.tolerance());
    } else {
        std::ofstream out(opt.output);
        if (!out) {
            std::cerr << "cannot open " << opt.output << " for writing\n";
            return kExitUsage;
        }
        wvd::render_svg(out, bundle.mesh, layout, so, opt.tolerance());
    }
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"intrinsic weighted Delaunay triangulations and weighted Voronoi duals"};
    app.require_subcommand(1);

    CommonOpts opt;
    long flip_cap = -1;
    std::string svg_path, csv_path;
    wvd::SweepConfig sweep_cfg;
    bool use_grid = false, use_random = false, with_dual = false;
    int root_face = 0;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--input", opt.input, "input mesh json")->required();
        sub->add_option("--output", opt.output, "output path (default stdout)");
        sub->add_option("--tol", opt.tol, "relative tolerance (default 1e-12)");
    };

    CLI::App* validate = app.add_subcommand("validate", "classify the weight vector");
    add_common(validate);

    CLI::App* delaunay = app.add_subcommand("delaunay", "flip/switch to weighted Delaunay");
    add_common(delaunay);
    delaunay->add_option("--flip-cap", flip_cap, "maximum flips (default 50 E^2)");

    CLI::App* voronoi = app.add_subcommand("voronoi", "export the weighted Voronoi dual complex");
    add_common(voronoi);
    voronoi->add_option("--svg", svg_path, "also render a flat layout with the dual overlay");

    CLI::App* sweep_cmd = app.add_subcommand("sweep", "catalog tessellations over weight space");
    add_common(sweep_cmd);
    sweep_cmd->add_option("--samples", sweep_cfg.sampler.count, "sample count (default 1000)");
    sweep_cmd->add_option("--seed", sweep_cfg.sampler.seed, "rng seed (default 0)");
    sweep_cmd->add_flag("--grid", use_grid, "grid sampler");
    sweep_cmd->add_flag("--random", use_random, "uniform random sampler (default)");
    sweep_cmd->add_option("--flip-cap", flip_cap, "maximum flips per sample");
    sweep_cmd->add_option("--threads", sweep_cfg.threads, "worker threads (default 1)");
    sweep_cmd->add_option("--csv", csv_path, "write a sample,hash table");

    CLI::App* render = app.add_subcommand("render", "unfold a flat surface to svg");
    add_common(render);
    render->add_option("--root", root_face, "root face of the unfolding (default 0)");
    render->add_flag("--dual", with_dual, "overlay the weighted dual");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (validate->parsed()) return run_validate(opt);
        if (delaunay->parsed()) return run_delaunay(opt, flip_cap);
        if (voronoi->parsed()) return run_voronoi(opt, svg_path);
        if (sweep_cmd->parsed()) {
            if (use_grid && use_random) {
                std::cerr << "--grid and --random are mutually exclusive\n";
                return kExitUsage;
            }
            sweep_cfg.sampler.kind = use_grid ? wvd::SamplerConfig::Kind::grid
                                              : wvd::SamplerConfig::Kind::uniform_random;
            sweep_cfg.flip.max_flips = flip_cap;
            return run_sweep(opt, sweep_cfg, csv_path);
        }
        if (render->parsed()) return run_render(opt, root_face, with_dual);
    } catch (const wvd::GeomError& e) {
        std::cerr << e.what() << "\n";
        switch (e.code()) {
            case wvd::ErrorCode::parse_error:
                return kExitUsage;
            case wvd::ErrorCode::inadmissible_weights:
            case wvd::ErrorCode::nonpositive_weight:
                return kExitRejected;
            default:
                return kExitInternalLimit;
        }
    } catch (const std::exception& e) {
        std::cerr << e.what() << "\n";
        return kExitInternalLimit;
    }
    return kExitUsage;
}
