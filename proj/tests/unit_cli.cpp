#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "support/generators.hpp"
#include "wvd/mesh_io.hpp"

// End-to-end checks of the command line tool: exit codes and report shapes.

namespace {

const std::string kBin = WVD_CLI_BIN;
const std::string kData = WVD_DATA_DIR;

int run_cli(const std::string& args) {
    const std::string cmd = kBin + " " + args + " >/dev/null 2>/dev/null";
    const int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

} // namespace

TEST_CASE("cli validate exit codes") {
    CHECK(run_cli("validate --input " + kData + "/square_torus.json") == 0);

    // weights passing the edge-level check but outside the disjoint-circle box
    const std::string warn = "/tmp/wvd_cli_warn.json";
    {
        std::mt19937_64 rng(1);
        auto g = testgen::grid_torus(2, 1, {1, 0}, {0, 1}, 0.0, rng);
        wvd::save_mesh(warn, g.mesh, wvd::WeightVector{0.09, 0.09});
    }
    CHECK(run_cli("validate --input " + warn) == 1);

    // one weight pushed past the edge inequality
    const std::string rejected = "/tmp/wvd_cli_rejected.json";
    {
        std::mt19937_64 rng(1);
        auto g = testgen::grid_torus(2, 1, {1, 0}, {0, 1}, 0.0, rng);
        wvd::save_mesh(rejected, g.mesh, wvd::WeightVector{0.01, 5.0});
    }
    CHECK(run_cli("validate --input " + rejected) == 2);

    // malformed json and usage errors
    const std::string broken = "/tmp/wvd_cli_broken.json";
    {
        std::ofstream out(broken);
        out << "{\"geometry\": \"flat\", \"faces\": [[0,0";
    }
    CHECK(run_cli("validate --input " + broken) == 64);
    CHECK(run_cli("validate --input /tmp/wvd_cli_missing_file.json") == 64);
    CHECK(run_cli("nonsense") == 64);
}

TEST_CASE("cli delaunay and voronoi") {
    // the square torus ships weighted-Delaunay already: no flips, diagonal tie
    const std::string sq = "/tmp/wvd_cli_square.json";
    CHECK(run_cli("delaunay --input " + kData + "/square_torus.json --output " + sq) == 0);
    const nlohmann::json sqrep = nlohmann::json::parse(slurp(sq));
    CHECK(sqrep["flips"].get<long>() == 0);
    CHECK(sqrep["deleted_ties"].get<int>() == 1);

    const std::string out = "/tmp/wvd_cli_delaunay.json";
    CHECK(run_cli("delaunay --input " + kData + "/skewed_torus.json --output " + out) == 0);
    const nlohmann::json rep = nlohmann::json::parse(slurp(out));
    CHECK(rep["flips"].get<long>() >= 1);
    CHECK(rep["certificates"].size() == 3);
    CHECK(rep["inferred_condition"] == false);

    // the flipped mesh is certified, so voronoi accepts it
    const std::string mesh_out = "/tmp/wvd_cli_flipped_mesh.json";
    {
        std::ofstream ms(mesh_out);
        wvd::write_canonical_json(ms, rep["mesh"]);
    }
    const std::string vor = "/tmp/wvd_cli_voronoi.json";
    const std::string svg = "/tmp/wvd_cli_voronoi.svg";
    CHECK(run_cli("voronoi --input " + mesh_out + " --output " + vor + " --svg " + svg) == 0);
    const nlohmann::json vrep = nlohmann::json::parse(slurp(vor));
    CHECK(vrep["dual_edges"].size() == 3);
    CHECK(vrep["dual_vertices"].size() == 2);
    CHECK(slurp(svg).substr(0, 4) == "<svg");

    // refuses a non-certified input
    CHECK(run_cli("voronoi --input " + kData + "/skewed_torus.json") == 2);

    // boundary surfaces go through the switch driver
    const std::string bout = "/tmp/wvd_cli_boundary.json";
    CHECK(run_cli("delaunay --input " + kData + "/one_holed_torus.json --output " + bout) == 0);
    const nlohmann::json brep = nlohmann::json::parse(slurp(bout));
    CHECK(brep["inferred_condition"] == true);
    CHECK(brep["flips"].get<long>() >= 1);

    // an exhausted flip cap is an internal limit
    CHECK(run_cli("delaunay --input " + kData + "/skewed_torus.json --flip-cap 0") == 70);
}

TEST_CASE("cli sweep determinism and csv") {
    const std::string out1 = "/tmp/wvd_cli_sweep1.json";
    const std::string out2 = "/tmp/wvd_cli_sweep2.json";
    const std::string csv = "/tmp/wvd_cli_sweep.csv";
    const std::string base = "sweep --input " + kData +
                             "/square_torus_3.json --samples 500 --seed 12 ";
    CHECK(run_cli(base + "--output " + out1 + " --csv " + csv) == 0);
    CHECK(run_cli(base + "--threads 2 --output " + out2) == 0);
    CHECK(slurp(out1) == slurp(out2)); // byte-identical for identical seed
    const nlohmann::json rep = nlohmann::json::parse(slurp(out1));
    CHECK(rep["distinct_tessellations"].get<int>() >= 1);
    CHECK(rep["failures"].empty());
    CHECK(rep["edge_bound_2dhat_ok"] == true);
    const std::string csv_text = slurp(csv);
    CHECK(csv_text.substr(0, 12) == "sample,hash\n");
    CHECK(std::count(csv_text.begin(), csv_text.end(), '\n') == 501);

    // grid sampler
    CHECK(run_cli("sweep --input " + kData + "/pair_of_pants.json --samples 27 --grid") == 0);
}

TEST_CASE("cli render and obj input") {
    const std::string svg = "/tmp/wvd_cli_render.svg";
    CHECK(run_cli("render --input " + kData + "/square_torus.json --dual --output " + svg) == 0);
    CHECK(slurp(svg).substr(0, 4) == "<svg");

    CHECK(run_cli("validate --input " + kData + "/tetrahedron.obj") == 0);
    CHECK(run_cli("delaunay --input " + kData + "/tetrahedron.obj") == 0);
    // hyperbolic surfaces cannot be rendered flat
    CHECK(run_cli("render --input " + kData + "/hyperbolic_torus_3.json") == 64);
}
