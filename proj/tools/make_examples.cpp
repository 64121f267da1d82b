// Regenerates the sample surfaces under data/: small tori, a sphere with
// self-glued edges, a genus-2 surface, and two truncated triangulations.
// Usage: wvd_make_examples [output_dir]   (default: ./data)

#include <iostream>
#include <fstream>
#include <string>

#include "wvd/builtin_surfaces.hpp"
#include "wvd/mesh_io.hpp"
#include "wvd/sweep.hpp"

namespace {

wvd::WeightVector boxed(const wvd::DeltaTriangulation& m, double frac) {
    wvd::WeightVector w = wvd::surrogate_box(m);
    for (double& x : w) x *= frac;
    return w;
}

} // namespace

int main(int argc, char** argv) {
    const std::string dir = argc > 1 ? argv[1] : "data";

    // one-vertex unit square torus: both diagonal choices are cocircular ties
    // at equal weights
    {
        const wvd::DeltaTriangulation m = wvd::square_torus();
        wvd::save_mesh(dir + "/square_torus.json", m, boxed(m, 0.25));
    }
    // one-vertex torus carrying the long diagonal of a sheared lattice: the
    // flip driver has work to do
    {
        const wvd::DeltaTriangulation m = wvd::parallelogram_torus({1, 0}, {0.45, 1.05});
        wvd::save_mesh(dir + "/skewed_torus.json", m, boxed(m, 0.25));
    }
    // three-vertex square torus (3 x 1 grid on the unit lattice, jittered so
    // several weighted Delaunay types are reachable)
    {
        const wvd::GridTorus g = wvd::grid_torus(3, 1, {1, 0}, {0, 1}, 0.15, 7);
        wvd::save_mesh(dir + "/square_torus_3.json", g.mesh, boxed(g.mesh, 0.25));
    }
    // the same combinatorics as a hyperbolic polyhedral surface
    {
        const wvd::GridTorus g =
            wvd::grid_torus(3, 1, {1, 0}, {0, 1}, 0.15, 7, wvd::Geometry::hyperbolic, 0.8);
        wvd::save_mesh(dir + "/hyperbolic_torus_3.json", g.mesh, boxed(g.mesh, 0.25));
    }
    // sphere with two self-glued edges (two folded isosceles triangles)
    {
        const wvd::DeltaTriangulation m = wvd::spindle_sphere(1.0, 1.2, 0.8);
        wvd::save_mesh(dir + "/spindle_sphere.json", m, boxed(m, 0.25));
    }
    // genus-2 hyperbolic surface from the regular octagon
    {
        const wvd::DeltaTriangulation m = wvd::genus2_octagon();
        wvd::save_mesh(dir + "/genus2_octagon.json", m, boxed(m, 0.25));
    }
    // pair of pants and a one-holed torus with a long diagonal seam
    {
        const wvd::DeltaTriangulation m = wvd::pair_of_pants(1.2, 1.0, 1.4);
        wvd::save_mesh(dir + "/pair_of_pants.json", m, wvd::WeightVector{0.45, 0.4, 0.5});
    }
    {
        const wvd::DeltaTriangulation m = wvd::one_holed_torus(1.0, 1.2, 2.3);
        wvd::save_mesh(dir + "/one_holed_torus.json", m, wvd::WeightVector{1.0});
    }
    // tetrahedron boundary as a triangulated OBJ (flat import example)
    {
        std::ofstream obj(dir + "/tetrahedron.obj");
        obj << "v 0 0 0\nv 1 0 0\nv 0 1 0\nv 0 0 1\n"
            << "f 1 2 3\nf 1 4 2\nf 2 4 3\nf 1 3 4\n";
    }
    std::cout << "examples written to " << dir << "\n";
    return 0;
}
