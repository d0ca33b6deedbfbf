#pragma once

// Independent checkers used only by the tests. They deliberately avoid the
// library's own algorithms (face walks on induced subgraphs instead of path
// simulation, shoelace areas, brute-force enumeration).

#include "rectcart/geometry.hpp"
#include "rectcart/orders.hpp"
#include "rectcart/plane_graph.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <vector>

namespace oracle {

using namespace rectcart;

// Outer face walk of the subgraph induced by `keep`, from dart a -> b.
inline std::vector<Vertex> induced_face(const PlaneTriangulation &g, const std::vector<char> &keep, Vertex a, Vertex b)
{
    auto next_kept = [&](Vertex v, Vertex u) {
        Vertex w = g.succ(v, u);
        while (!keep[static_cast<std::size_t>(w)])
            w = g.succ(v, w);
        return w;
    };
    std::vector<Vertex> walk;
    Vertex x = a, y = b;
    do {
        walk.push_back(x);
        const Vertex z = next_kept(y, x);
        x = y;
        y = z;
        if (walk.size() > 4 * g.edge_count() + 4)
            return {};
    } while (!(x == a && y == b));
    return walk;
}

// Shelling conditions via face walks of induced prefixes; orientation taken
// from the outer face.
inline bool shelling_by_faces(const PlaneTriangulation &g0, const std::vector<Vertex> &seq)
{
    const int n = g0.size();
    if (static_cast<int>(seq.size()) != n)
        return false;
    const auto &o = g0.outer();
    PlaneTriangulation g = g0;
    bool found = false;
    for (std::size_t t = 0; t < 3; ++t) {
        if (o[t] == seq[0] && o[(t + 1) % 3] == seq[1])
            found = true;
        if (o[t] == seq[1] && o[(t + 1) % 3] == seq[0]) {
            g = g0.mirrored();
            found = true;
        }
    }
    if (!found || std::find(o.begin(), o.end(), seq.back()) == o.end())
        return false;
    std::vector<char> keep(static_cast<std::size_t>(n), 0);
    keep[static_cast<std::size_t>(seq[0])] = keep[static_cast<std::size_t>(seq[1])] = 1;
    if (!g.adjacent(seq[0], seq[1]))
        return false;
    for (int k = 2; k < n; ++k) {
        const Vertex v = seq[static_cast<std::size_t>(k)];
        if (keep[static_cast<std::size_t>(v)])
            return false;
        // boundary path of G_{k-1}: outer face walk minus the base edge
        std::vector<Vertex> cyc;
        if (k == 2)
            cyc = {seq[0], seq[1]};
        else
            cyc = induced_face(g, keep, seq[0], seq[1]);
        std::set<Vertex> distinct(cyc.begin(), cyc.end());
        if (cyc.empty() || distinct.size() != cyc.size())
            return false; // not a simple cycle, so not biconnected
        // cyc = v1, v2, ..., going around; the path from v2 back to v1
        std::vector<Vertex> path(cyc.begin() + 1, cyc.end());
        path.push_back(cyc.front());
        std::vector<int> hits;
        int count = 0;
        for (Vertex u : g.neighbors(v))
            if (keep[static_cast<std::size_t>(u)])
                ++count;
        for (std::size_t t = 0; t < path.size(); ++t)
            if (g.adjacent(v, path[t]))
                hits.push_back(static_cast<int>(t));
        if (count < 2 || static_cast<int>(hits.size()) != count)
            return false;
        if (hits.back() - hits.front() + 1 != count)
            return false;
        keep[static_cast<std::size_t>(v)] = 1;
        // the new vertex must sit in the outer face of G_{k-1}
        auto f = induced_face(g, keep, seq[0], seq[1]);
        if (std::find(f.begin(), f.end(), v) == f.end())
            return false;
    }
    return true;
}

// Every canonical order with the outer triangle's (v1, v2, vn), by
// backtracking over prefixes checked with the face oracle.
inline std::vector<std::vector<Vertex>> all_canonical_orders(const PlaneTriangulation &g)
{
    const int n = g.size();
    const Vertex v1 = g.outer()[0], v2 = g.outer()[1], vn = g.outer()[2];
    std::vector<std::vector<Vertex>> out;
    std::vector<Vertex> seq{v1, v2};
    std::vector<char> used(static_cast<std::size_t>(n), 0);
    used[static_cast<std::size_t>(v1)] = used[static_cast<std::size_t>(v2)] = 1;
    std::function<void()> rec = [&]() {
        if (static_cast<int>(seq.size()) == n - 1) {
            seq.push_back(vn);
            if (shelling_by_faces(g, seq))
                out.push_back(seq);
            seq.pop_back();
            return;
        }
        for (Vertex v = 0; v < n; ++v) {
            if (used[static_cast<std::size_t>(v)] || v == vn)
                continue;
            int placed = 0;
            for (Vertex u : g.neighbors(v))
                placed += used[static_cast<std::size_t>(u)];
            if (placed < 2)
                continue;
            used[static_cast<std::size_t>(v)] = 1;
            seq.push_back(v);
            rec();
            seq.pop_back();
            used[static_cast<std::size_t>(v)] = 0;
        }
    };
    rec();
    return out;
}

// Shoelace area of an arbitrary simple polygon.
template <class T>
T shoelace(const Polygon<T> &p)
{
    T twice = 0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        const auto &a = p[i];
        const auto &b = p[(i + 1) % p.size()];
        twice += (a.x + b.x) * (b.y - a.y);
    }
    T a = twice / 2;
    return a < 0 ? T(-a) : a;
}

// Whether (c[p-1], c[p]) lies on the outer face of the prefix graph c[0..p]:
// flood the dual of g from the outer face without crossing prefix edges.
inline bool prefix_edge_outer(const PlaneTriangulation &g, const std::vector<Vertex> &c, int p)
{
    const int n = g.size();
    std::vector<int> pos(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        pos[static_cast<std::size_t>(c[static_cast<std::size_t>(i)])] = i;
    const auto faces = g.faces();
    std::map<std::pair<Vertex, Vertex>, int> face_of;
    for (std::size_t f = 0; f < faces.size(); ++f)
        for (std::size_t t = 0; t < faces[f].size(); ++t)
            face_of[{faces[f][t], faces[f][(t + 1) % faces[f].size()]}] = static_cast<int>(f);
    const int start = face_of.at({g.outer()[0], g.outer()[1]});
    std::vector<char> seen(faces.size(), 0);
    std::vector<int> queue{start};
    seen[static_cast<std::size_t>(start)] = 1;
    for (std::size_t q = 0; q < queue.size(); ++q) {
        const auto &f = faces[static_cast<std::size_t>(queue[q])];
        for (std::size_t t = 0; t < f.size(); ++t) {
            const Vertex a = f[t], b = f[(t + 1) % f.size()];
            if (pos[static_cast<std::size_t>(a)] <= p && pos[static_cast<std::size_t>(b)] <= p)
                continue;
            const int h = face_of.at({b, a});
            if (!seen[static_cast<std::size_t>(h)]) {
                seen[static_cast<std::size_t>(h)] = 1;
                queue.push_back(h);
            }
        }
    }
    const Vertex a = c[static_cast<std::size_t>(p - 1)], b = c[static_cast<std::size_t>(p)];
    return seen[static_cast<std::size_t>(face_of.at({a, b}))] || seen[static_cast<std::size_t>(face_of.at({b, a}))];
}

// Every Hamiltonian cycle of g as a sequence v1..vn with (v1, vn) on the
// outer face, in both directions and for every such closing edge.
inline std::vector<HamiltonianCycle> anchored_cycles(const PlaneTriangulation &g)
{
    const auto &o = g.outer();
    auto outer_edge = [&](Vertex a, Vertex b) {
        for (std::size_t t = 0; t < o.size(); ++t) {
            const Vertex x = o[t], y = o[(t + 1) % o.size()];
            if ((x == a && y == b) || (x == b && y == a))
                return true;
        }
        return false;
    };
    std::vector<HamiltonianCycle> out;
    for (const auto &c : find_hamiltonian_cycles(g)) {
        const std::size_t n = c.order.size();
        for (int dir = 0; dir < 2; ++dir)
            for (std::size_t s = 0; s < n; ++s) {
                HamiltonianCycle h;
                for (std::size_t k = 0; k < n; ++k)
                    h.order.push_back(dir == 0 ? c.order[(s + k) % n] : c.order[(s + n - k) % n]);
                if (outer_edge(h.order.front(), h.order.back()))
                    out.push_back(std::move(h));
            }
    }
    return out;
}

} // namespace oracle
