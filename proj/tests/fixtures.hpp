#pragma once

// Small hand-built plane graphs. Rotations are derived from straight-line
// coordinates: counter-clockwise by angle, which is the library's rotation
// sense when the outer face is listed clockwise-in-file.

#include "rectcart/plane_graph.hpp"

#include <cmath>
#include <numeric>
#include <string>
#include <vector>

namespace fixtures {

using rectcart::PlaneTriangulation;
using rectcart::Vertex;

struct Pt {
    double x, y;
};

inline PlaneTriangulation from_points(const std::vector<Pt> &pts, const std::vector<std::pair<int, int>> &edges,
                                      std::vector<Vertex> outer, std::vector<std::string> ids = {})
{
    std::vector<std::vector<Vertex>> rot(pts.size());
    for (auto [a, b] : edges) {
        rot[static_cast<std::size_t>(a)].push_back(b);
        rot[static_cast<std::size_t>(b)].push_back(a);
    }
    for (std::size_t v = 0; v < pts.size(); ++v) {
        auto angle = [&](Vertex u) {
            return std::atan2(pts[static_cast<std::size_t>(u)].y - pts[v].y, pts[static_cast<std::size_t>(u)].x - pts[v].x);
        };
        std::sort(rot[v].begin(), rot[v].end(), [&](Vertex a, Vertex b) { return angle(a) < angle(b); });
    }
    return PlaneTriangulation(std::move(rot), std::move(outer), std::move(ids));
}

// u=0, v=1, w=2 outer; c=3 centre.
inline PlaneTriangulation k4()
{
    return from_points({{0, 0}, {10, 0}, {5, 10}, {5, 3}}, {{0, 1}, {1, 2}, {2, 0}, {3, 0}, {3, 1}, {3, 2}}, {0, 1, 2},
                       {"u", "v", "w", "c"});
}

inline PlaneTriangulation triangle()
{
    return from_points({{0, 0}, {10, 0}, {5, 10}}, {{0, 1}, {1, 2}, {2, 0}}, {0, 1, 2}, {"u", "v", "w"});
}

// outer 0,1,2; inner triangle 3 (bottom), 4 (right), 5 (left)
inline PlaneTriangulation octahedron()
{
    return from_points({{0, 0}, {10, 0}, {5, 10}, {5, 2}, {6.5, 4.5}, {3.5, 4.5}},
                       {{0, 1}, {1, 2}, {2, 0}, {3, 4}, {4, 5}, {5, 3}, {3, 0}, {3, 1}, {4, 1}, {4, 2}, {5, 2}, {5, 0}},
                       {0, 1, 2});
}

// Square with diagonal (0,2).
inline PlaneTriangulation square_with_diagonal()
{
    return from_points({{0, 0}, {0, 10}, {10, 10}, {10, 0}}, {{0, 1}, {1, 2}, {2, 3}, {3, 0}, {0, 2}}, {0, 3, 2, 1});
}

// Fan of a pentagon from vertex 0.
inline PlaneTriangulation pentagon_fan()
{
    std::vector<Pt> pts;
    for (int k = 0; k < 5; ++k)
        pts.push_back({std::cos(2 * M_PI * k / 5), std::sin(2 * M_PI * k / 5)});
    return from_points(pts, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}, {0, 2}, {0, 3}}, {0, 1, 2, 3, 4});
}

} // namespace fixtures
