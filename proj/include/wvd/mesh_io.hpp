#pragma once

#include <cstdio>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>

#include <json.hpp>

#include "wvd/mesh.hpp"

namespace wvd {

// Canonical JSON serialization: keys sorted (nlohmann's default object is
// ordered), floats at 17 significant digits, so identical inputs and seeds
// produce byte-identical reports.
inline void write_canonical_json(std::ostream& os, const nlohmann::json& j, int indent = 0) {
    const std::string pad(indent, ' ');
    switch (j.type()) {
        case nlohmann::json::value_t::object: {
            if (j.empty()) {
                os << "{}";
                return;
            }
            os << "{\n";
            size_t k = 0;
            for (auto it = j.begin(); it != j.end(); ++it, ++k) {
                os << pad << "  " << nlohmann::json(it.key()).dump() << ": ";
                write_canonical_json(os, it.value(), indent + 2);
                os << (k + 1 < j.size() ? ",\n" : "\n");
            }
            os << pad << "}";
            return;
        }
        case nlohmann::json::value_t::array: {
            if (j.empty()) {
                os << "[]";
                return;
            }
            os << "[";
            for (size_t k = 0; k < j.size(); ++k) {
                write_canonical_json(os, j[k], indent);
                if (k + 1 < j.size()) os << ", ";
            }
            os << "]";
            return;
        }
        case nlohmann::json::value_t::number_float: {
            char buf[64];
            std::snprintf(buf, sizeof buf, "%.17g", j.get<double>());
            os << buf;
            return;
        }
        default:
            os << j.dump();
            return;
    }
}

inline std::string canonical_json_string(const nlohmann::json& j) {
    std::ostringstream os;
    write_canonical_json(os, j);
    os << "\n";
    return os.str();
}

// Mesh interchange format:
//   { "geometry": "flat"|"hyperbolic"|"boundary",
//     "faces": [[i,j,k], ...],
//     "gluing": [[[f,c],[f,c]], ...],          // one pair per edge
//     "edge_lengths": [...],                   // or "seam_lengths" (boundary)
//     "weights": [...] }                       // optional
struct MeshBundle {
    DeltaTriangulation mesh;
    std::optional<WeightVector> weights;
};

inline nlohmann::json mesh_to_json(const DeltaTriangulation& m,
                                   const std::optional<WeightVector>& weights = {}) {
    nlohmann::json j;
    j["geometry"] = to_string(m.geometry);
    nlohmann::json faces = nlohmann::json::array();
    for (const auto& f : m.faces) faces.push_back({f[0], f[1], f[2]});
    j["faces"] = std::move(faces);
    nlohmann::json gluing = nlohmann::json::array();
    for (int e = 0; e < m.n_edges(); ++e) {
        const int h1 = m.edge_halfedge[e];
        const int h2 = m.twin[h1];
        gluing.push_back({{DeltaTriangulation::face_of(h1), DeltaTriangulation::corner_of(h1)},
                          {DeltaTriangulation::face_of(h2), DeltaTriangulation::corner_of(h2)}});
    }
    j["gluing"] = std::move(gluing);
    j[m.geometry == Geometry::boundary ? "seam_lengths" : "edge_lengths"] = m.lengths;
    if (weights) j["weights"] = *weights;
    return j;
}

inline MeshBundle mesh_from_json(const nlohmann::json& j) {
    auto bad = [](const std::string& what) { fail(ErrorCode::parse_error, "mesh json: " + what); };
    if (!j.is_object()) bad("top level must be an object");

    Geometry geom = Geometry::flat;
    {
        const std::string g = j.value("geometry", "");
        if (g == "flat") {
            geom = Geometry::flat;
        } else if (g == "hyperbolic") {
            geom = Geometry::hyperbolic;
        } else if (g == "boundary") {
            geom = Geometry::boundary;
        } else {
            bad("geometry must be flat, hyperbolic or boundary");
        }
    }
    if (!j.contains("faces") || !j["faces"].is_array()) bad("missing faces array");
    std::vector<std::array<int, 3>> faces;
    for (const auto& f : j["faces"]) {
        if (!f.is_array() || f.size() != 3) bad("each face needs three corner labels");
        faces.push_back({f[0].get<int>(), f[1].get<int>(), f[2].get<int>()});
    }
    if (!j.contains("gluing") || !j["gluing"].is_array()) bad("missing gluing array");
    std::vector<GluingPair> gluing;
    for (const auto& g : j["gluing"]) {
        if (!g.is_array() || g.size() != 2 || !g[0].is_array() || g[0].size() != 2 ||
            !g[1].is_array() || g[1].size() != 2) {
            bad("each gluing entry pairs two (face, corner) references");
        }
        gluing.push_back({{g[0][0].get<int>(), g[0][1].get<int>()},
                          {g[1][0].get<int>(), g[1][1].get<int>()}});
    }
    const char* len_key = geom == Geometry::boundary ? "seam_lengths" : "edge_lengths";
    if (!j.contains(len_key) || !j[len_key].is_array()) {
        bad(std::string("missing ") + len_key + " array");
    }
    std::vector<double> lengths;
    for (const auto& l : j[len_key]) lengths.push_back(l.get<double>());

    MeshBundle out;
    out.mesh = make_mesh(geom, std::move(faces), gluing, std::move(lengths));
    if (j.contains("weights")) {
        WeightVector w;
        for (const auto& x : j["weights"]) w.push_back(x.get<double>());
        if (static_cast<int>(w.size()) != out.mesh.num_vertices) {
            bad("weights length must equal the vertex count");
        }
        out.weights = std::move(w);
    }
    return out;
}

inline MeshBundle load_mesh(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorCode::parse_error, "cannot open " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        fail(ErrorCode::parse_error, std::string("invalid json: ") + e.what());
    }
    return mesh_from_json(j);
}

inline void save_mesh(const std::string& path, const DeltaTriangulation& m,
                      const std::optional<WeightVector>& weights = {}) {
    std::ofstream out(path);
    if (!out) fail(ErrorCode::parse_error, "cannot open " + path + " for writing");
    write_canonical_json(out, mesh_to_json(m, weights));
    out << "\n";
}

// Triangulated OBJ import, flat geometry only: edge lengths are measured from
// the vertex positions, the positions are then discarded. The mesh must be a
// closed oriented 2-manifold.
inline DeltaTriangulation load_obj(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorCode::parse_error, "cannot open " + path);
    std::vector<std::array<double, 3>> pos;
    std::vector<std::array<int, 3>> faces;
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::string tag;
        ls >> tag;
        if (tag == "v") {
            std::array<double, 3> p{};
            ls >> p[0] >> p[1] >> p[2];
            pos.push_back(p);
        } else if (tag == "f") {
            std::array<int, 3> f{};
            for (int c = 0; c < 3; ++c) {
                std::string tok;
                if (!(ls >> tok)) fail(ErrorCode::parse_error, "obj: face with fewer than 3 corners");
                f[c] = std::stoi(tok.substr(0, tok.find('/'))) - 1;
                if (f[c] < 0 || f[c] >= static_cast<int>(pos.size())) {
                    fail(ErrorCode::parse_error, "obj: vertex index out of range");
                }
            }
            std::string extra;
            if (ls >> extra) fail(ErrorCode::parse_error, "obj: only triangulated meshes are supported");
            faces.push_back(f);
        }
    }
    if (faces.empty()) fail(ErrorCode::parse_error, "obj: no faces");

    auto d3 = [&](int a, int b) {
        const double dx = pos[a][0] - pos[b][0];
        const double dy = pos[a][1] - pos[b][1];
        const double dz = pos[a][2] - pos[b][2];
        return std::sqrt(dx * dx + dy * dy + dz * dz);
    };
    // pair halfedges by directed vertex keys
    std::map<std::pair<int, int>, std::pair<int, int>> open; // (tail,head) -> (face,corner)
    for (size_t f = 0; f < faces.size(); ++f) {
        for (int c = 0; c < 3; ++c) {
            const int a = faces[f][c], b = faces[f][(c + 1) % 3];
            if (open.count({a, b})) fail(ErrorCode::parse_error, "obj: non-manifold edge");
            open[{a, b}] = {static_cast<int>(f), c};
        }
    }
    std::vector<GluingPair> gluing;
    std::vector<double> lengths;
    std::map<std::pair<int, int>, char> used;
    for (const auto& [key, hc] : open) {
        if (used.count(key)) continue;
        const std::pair<int, int> rkey{key.second, key.first};
        auto it = open.find(rkey);
        if (it == open.end()) fail(ErrorCode::parse_error, "obj: surface has boundary");
        used[key] = used[rkey] = 1;
        gluing.push_back({hc, it->second});
        lengths.push_back(d3(key.first, key.second));
    }
    return make_mesh(Geometry::flat, std::move(faces), gluing, std::move(lengths));
}

} // namespace wvd
