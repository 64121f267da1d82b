#pragma once

// Debug rendering of flat surfaces: breadth-first unfolding from a root face
// into one planar chart (a fundamental-domain style layout for small genus-1
// examples) with optional weighted dual overlay.

#include <deque>
#include <ostream>
#include <vector>

#include "wvd/delaunay.hpp"

namespace wvd {

struct FlatLayout {
    std::vector<std::array<Point2, 3>> face_pos; // chart position per corner
    std::vector<int> placed_from;                // BFS parent halfedge, -1 for root
};

inline FlatLayout layout_flat(const DeltaTriangulation& m, int root_face = 0,
                              const Tolerance& tol = {}) {
    if (m.geometry != Geometry::flat) {
        fail(ErrorCode::invalid_mesh, "layout_flat: only flat surfaces can be unfolded this way");
    }
    FlatLayout layout;
    layout.face_pos.resize(m.n_faces());
    layout.placed_from.assign(m.n_faces(), -2);

    {
        const FaceChart chart = face_chart(m, root_face, tol);
        layout.face_pos[root_face] = chart.e;
        layout.placed_from[root_face] = -1;
    }
    std::deque<int> queue{root_face};
    while (!queue.empty()) {
        const int f = queue.front();
        queue.pop_front();
        for (int c = 0; c < 3; ++c) {
            const int h = 3 * f + c;
            const int h2 = m.twin[h];
            const int g = DeltaTriangulation::face_of(h2);
            if (layout.placed_from[g] != -2) continue;
            // shared edge endpoints in f's chart; the neighbor goes ccw on
            // the other side
            const Point2 q = layout.face_pos[f][(c + 1) % 3]; // head(h) = tail(h2)
            const Point2 p = layout.face_pos[f][c];           // tail(h) = head(h2)
            const int c2 = DeltaTriangulation::corner_of(h2);
            const double len_ax = m.len_h(DeltaTriangulation::prev(h2)); // apex - tail(h2)
            const auto ang = corner_angles(m, g, tol);
            const double alpha = ang[c2];
            const Vec2 u = (p - q) / dist(p, q);
            const Vec2 ru{u.x * std::cos(alpha) - u.y * std::sin(alpha),
                          u.x * std::sin(alpha) + u.y * std::cos(alpha)};
            layout.face_pos[g][c2] = q;
            layout.face_pos[g][(c2 + 1) % 3] = p;
            layout.face_pos[g][(c2 + 2) % 3] = q + ru * len_ax;
            layout.placed_from[g] = h2;
            queue.push_back(g);
        }
    }
    return layout;
}

struct SvgOptions {
    bool draw_dual = false;
    WeightVector weights;
    double width_px = 640.0;
};

inline void render_svg(std::ostream& os, const DeltaTriangulation& m, const FlatLayout& layout,
                       const SvgOptions& opt = {}, const Tolerance& tol = {}) {
    double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
    for (const auto& f : layout.face_pos) {
        for (const Point2& p : f) {
            xmin = std::min(xmin, p.x);
            xmax = std::max(xmax, p.x);
            ymin = std::min(ymin, p.y);
            ymax = std::max(ymax, p.y);
        }
    }
    const double span = std::max(xmax - xmin, ymax - ymin);
    const double margin = 0.06 * span;
    const double scale = opt.width_px / (span + 2 * margin);
    auto X = [&](Point2 p) { return (p.x - xmin + margin) * scale; };
    auto Y = [&](Point2 p) { return (ymax - p.y + margin) * scale; }; // svg y is down
    const double h_px = (ymax - ymin + 2 * margin) * scale;

    char buf[256];
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << static_cast<int>(opt.width_px)
       << "\" height=\"" << static_cast<int>(h_px) << "\">\n";
    auto line = [&](Point2 a, Point2 b, const char* stroke, double w) {
        std::snprintf(buf, sizeof buf,
                      "  <line x1=\"%.2f\" y1=\"%.2f\" x2=\"%.2f\" y2=\"%.2f\" stroke=\"%s\" "
                      "stroke-width=\"%.2f\"/>\n",
                      X(a), Y(a), X(b), Y(b), stroke, w);
        os << buf;
    };
    for (int f = 0; f < m.n_faces(); ++f) {
        for (int c = 0; c < 3; ++c) {
            line(layout.face_pos[f][c], layout.face_pos[f][(c + 1) % 3], "#222222", 1.2);
        }
    }
    if (opt.draw_dual) {
        std::vector<Point2> centers(m.n_faces());
        for (int f = 0; f < m.n_faces(); ++f) {
            centers[f] = power_center({layout.face_pos[f][0], opt.weights[m.faces[f][0]]},
                                      {layout.face_pos[f][1], opt.weights[m.faces[f][1]]},
                                      {layout.face_pos[f][2], opt.weights[m.faces[f][2]]}, tol)
                             .center;
        }
        for (int h = 0; h < m.n_halfedges(); ++h) {
            const int h2 = m.twin[h];
            const int f = DeltaTriangulation::face_of(h), g = DeltaTriangulation::face_of(h2);
            const int c = DeltaTriangulation::corner_of(h), c2 = DeltaTriangulation::corner_of(h2);
            const Point2 a = layout.face_pos[f][c], b = layout.face_pos[f][(c + 1) % 3];
            // the neighbor copy shares this chart edge only if the twin's
            // endpoints landed on the same chart points
            const bool coincident = dist(layout.face_pos[g][c2], b) < 1e-9 * (1 + dist(a, b)) &&
                                    dist(layout.face_pos[g][(c2 + 1) % 3], a) < 1e-9 * (1 + dist(a, b));
            if (coincident && h < h2) {
                line(centers[f], centers[g], "#cc3333", 1.0);
            } else if (!coincident) {
                // dual 1-cell leaves this chart copy: draw the stub down to
                // the supporting line of the shared edge
                const Vec2 n = perp(b - a) / dist(a, b);
                const Point2 foot = centers[f] - n * dot(n, centers[f] - a);
                line(centers[f], foot, "#cc3333", 1.0);
            }
        }
        for (int f = 0; f < m.n_faces(); ++f) {
            std::snprintf(buf, sizeof buf,
                          "  <circle cx=\"%.2f\" cy=\"%.2f\" r=\"2.6\" fill=\"#cc3333\"/>\n",
                          X(centers[f]), Y(centers[f]));
            os << buf;
        }
    }
    os << "</svg>\n";
}

} // namespace wvd
