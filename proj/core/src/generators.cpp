#include "rectcart/generators.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <random>
#include <set>
#include <stdexcept>

namespace rectcart {

namespace {

using Rot = std::vector<std::vector<Vertex>>;

void insert_after(Rot &rot, Vertex v, Vertex after, Vertex x)
{
    auto &r = rot[static_cast<std::size_t>(v)];
    r.insert(std::next(std::find(r.begin(), r.end(), after)), x);
}

void erase_neighbor(Rot &rot, Vertex v, Vertex x)
{
    auto &r = rot[static_cast<std::size_t>(v)];
    r.erase(std::find(r.begin(), r.end(), x));
}

Vertex succ_in(const Rot &rot, Vertex v, Vertex u)
{
    const auto &r = rot[static_cast<std::size_t>(v)];
    auto it = std::find(r.begin(), r.end(), u);
    return ++it == r.end() ? r.front() : *it;
}

bool adjacent_in(const Rot &rot, Vertex a, Vertex b)
{
    const auto &r = rot[static_cast<std::size_t>(a)];
    return std::find(r.begin(), r.end(), b) != r.end();
}

// rot for the triangle with outer (0, 1, 2)
Rot triangle_rotation() { return {{2, 1}, {0, 2}, {1, 0}}; }

// Inserts x into the face a -> b -> c.
void stack_into(Rot &rot, Vertex a, Vertex b, Vertex c, Vertex x)
{
    insert_after(rot, b, a, x);
    insert_after(rot, c, b, x);
    insert_after(rot, a, c, x);
    rot.push_back({a, c, b});
}

// Flips edge (a, b) whose faces are a -> b -> c and b -> a -> d.
bool try_flip(Rot &rot, Vertex a, Vertex b, const std::set<Vertex> &outer)
{
    if (outer.count(a) && outer.count(b))
        return false;
    const Vertex c = succ_in(rot, b, a);
    const Vertex d = succ_in(rot, a, b);
    if (c == d || adjacent_in(rot, c, d))
        return false;
    if (rot[static_cast<std::size_t>(a)].size() <= 3 || rot[static_cast<std::size_t>(b)].size() <= 3)
        return false;
    erase_neighbor(rot, a, b);
    erase_neighbor(rot, b, a);
    insert_after(rot, c, b, d);
    insert_after(rot, d, a, c);
    return true;
}

} // namespace

PlaneTriangulation random_triangulation(int n, std::uint64_t seed, int flips_per_vertex)
{
    if (n < 3)
        throw PreconditionError("random_triangulation needs n >= 3");
    std::mt19937_64 rng(seed);
    Rot rot = triangle_rotation();
    // inner faces as darts (a, b) with the face a -> b -> succ_b(a)
    std::vector<std::array<Vertex, 3>> faces{{0, 2, 1}};
    for (Vertex x = 3; x < n; ++x) {
        std::uniform_int_distribution<std::size_t> pick(0, faces.size() - 1);
        const std::size_t f = pick(rng);
        const auto [a, b, c] = faces[f];
        stack_into(rot, a, b, c, x);
        faces[f] = {a, b, x};
        faces.push_back({b, c, x});
        faces.push_back({c, a, x});
    }
    const std::set<Vertex> outer{0, 1, 2};
    const long flips = static_cast<long>(flips_per_vertex) * n;
    std::uniform_int_distribution<Vertex> vertex(0, n - 1);
    for (long t = 0; t < flips && n > 4; ++t) {
        const Vertex a = vertex(rng);
        const auto &r = rot[static_cast<std::size_t>(a)];
        std::uniform_int_distribution<std::size_t> which(0, r.size() - 1);
        try_flip(rot, a, r[which(rng)], outer);
    }
    return PlaneTriangulation(std::move(rot), {0, 1, 2});
}

PlaneTriangulation from_straight_line(const std::vector<std::pair<double, double>> &pts, const std::vector<Edge> &edges,
                                      std::vector<Vertex> outer)
{
    Rot rot(pts.size());
    for (auto [a, b] : edges) {
        rot[static_cast<std::size_t>(a)].push_back(b);
        rot[static_cast<std::size_t>(b)].push_back(a);
    }
    for (std::size_t v = 0; v < pts.size(); ++v) {
        auto angle = [&](Vertex u) {
            const auto &p = pts[static_cast<std::size_t>(u)];
            return std::atan2(p.second - pts[v].second, p.first - pts[v].first);
        };
        std::sort(rot[v].begin(), rot[v].end(), [&](Vertex a, Vertex b) { return angle(a) < angle(b); });
    }
    return PlaneTriangulation(std::move(rot), std::move(outer));
}

namespace {

// Random triangulation of the convex polygon lo..hi (positions), by picking
// a random apex for the base (lo, hi).
void random_polygon_chords(int lo, int hi, std::mt19937_64 &rng, std::vector<Edge> &out)
{
    if (hi - lo < 2)
        return;
    std::uniform_int_distribution<int> apex(lo + 1, hi - 1);
    const int k = apex(rng);
    if (k - lo >= 2)
        out.emplace_back(lo, k);
    if (hi - k >= 2)
        out.emplace_back(k, hi);
    random_polygon_chords(lo, k, rng, out);
    random_polygon_chords(k, hi, rng, out);
}

std::vector<std::pair<double, double>> regular_polygon(int n)
{
    std::vector<std::pair<double, double>> pts;
    for (int k = 0; k < n; ++k) {
        const double t = 2 * std::numbers::pi * k / n;
        pts.emplace_back(std::cos(t), std::sin(t));
    }
    return pts;
}

} // namespace

PlaneTriangulation random_outerplanar(int n, std::uint64_t seed)
{
    if (n < 3)
        throw PreconditionError("random_outerplanar needs n >= 3");
    std::mt19937_64 rng(seed);
    std::vector<Edge> edges;
    for (int k = 0; k < n; ++k)
        edges.emplace_back(k, (k + 1) % n);
    // random rotation of the root so that fans and zigzags both appear
    std::vector<Edge> chords;
    random_polygon_chords(0, n - 1, rng, chords);
    std::uniform_int_distribution<int> shift(0, n - 1);
    const int s = shift(rng);
    for (auto [a, b] : chords)
        edges.emplace_back((a + s) % n, (b + s) % n);
    std::vector<Vertex> outer;
    for (int k = 0; k < n; ++k)
        outer.push_back(k);
    return from_straight_line(regular_polygon(n), edges, outer);
}

HamiltonianInstance hamiltonian_from_chords(int n, const std::vector<Edge> &inside, const std::vector<Edge> &outside)
{
    if (n < 3)
        throw PreconditionError("hamiltonian_from_chords needs n >= 3");
    // Cycle drawn as a counter-clockwise convex polygon. Around i: i+1, inside
    // chords by increasing cyclic index, i-1, outside chords by decreasing.
    std::vector<std::vector<int>> in(static_cast<std::size_t>(n)), out(static_cast<std::size_t>(n));
    std::set<Edge> seen;
    auto add = [&](std::vector<std::vector<int>> &side, Edge e) {
        auto [a, b] = e;
        if (a > b)
            std::swap(a, b);
        if (a < 0 || b >= n || b - a < 2 || (a == 0 && b == n - 1) || !seen.insert({a, b}).second)
            throw PreconditionError("bad or repeated chord");
        side[static_cast<std::size_t>(a)].push_back(b);
        side[static_cast<std::size_t>(b)].push_back(a);
    };
    for (const auto &e : inside)
        add(in, e);
    for (const auto &e : outside)
        add(out, e);
    Rot rot(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        auto dist = [&](int j) { return (j - i + n) % n; };
        auto &ins = in[static_cast<std::size_t>(i)];
        auto &outs = out[static_cast<std::size_t>(i)];
        std::sort(ins.begin(), ins.end(), [&](int a, int b) { return dist(a) < dist(b); });
        std::sort(outs.begin(), outs.end(), [&](int a, int b) { return dist(a) > dist(b); });
        auto &r = rot[static_cast<std::size_t>(i)];
        r.push_back((i + 1) % n);
        r.insert(r.end(), ins.begin(), ins.end());
        if ((i + n - 1) % n != (i + 1) % n)
            r.push_back((i + n - 1) % n);
        r.insert(r.end(), outs.begin(), outs.end());
    }
    // outside face along the closing edge
    PlaneTriangulation probe(rot, {});
    auto face = probe.face_of(n - 1, 0);
    HamiltonianInstance h{PlaneTriangulation(std::move(rot), face), {}};
    for (int i = 0; i < n; ++i)
        h.cycle.order.push_back(i);
    const auto report = validate(h.graph);
    if (!report.ok())
        throw PreconditionError("chords do not form a triangulation: " + report.problems.front());
    return h;
}

HamiltonianInstance random_hamiltonian(int n, std::uint64_t seed)
{
    if (n < 3)
        throw PreconditionError("random_hamiltonian needs n >= 3");
    std::mt19937_64 rng(seed);
    std::vector<Edge> inside, outside;
    random_polygon_chords(0, n - 1, rng, inside);
    std::set<Edge> used;
    for (auto [a, b] : inside)
        used.insert({std::min(a, b), std::max(a, b)});
    // Outside: same recursion, but only apexes whose chords are not already
    // inside. Some apex always works: extend the inside chords within the
    // sub-polygon to a triangulation and fan out of one of its ears.
    auto allowed = [&](int a, int b) { return b - a < 2 || !used.count({a, b}); };
    std::vector<std::pair<int, int>> todo{{0, n - 1}};
    std::vector<int> apexes;
    while (!todo.empty()) {
        const auto [lo, hi] = todo.back();
        todo.pop_back();
        if (hi - lo < 2)
            continue;
        apexes.clear();
        for (int k = lo + 1; k < hi; ++k)
            if (allowed(lo, k) && allowed(k, hi))
                apexes.push_back(k);
        if (apexes.empty())
            throw std::logic_error("random_hamiltonian: no free apex");
        const int k = apexes[std::uniform_int_distribution<std::size_t>(0, apexes.size() - 1)(rng)];
        if (k - lo >= 2)
            outside.emplace_back(lo, k);
        if (hi - k >= 2)
            outside.emplace_back(k, hi);
        todo.emplace_back(lo, k);
        todo.emplace_back(k, hi);
    }
    return hamiltonian_from_chords(n, inside, outside);
}

HamiltonianInstance stacked_fans(int n)
{
    std::vector<Edge> inside, outside;
    for (int k = 2; k <= n - 2; ++k)
        inside.emplace_back(0, k);
    for (int k = 1; k <= n - 3; ++k)
        outside.emplace_back(k, n - 1);
    return hamiltonian_from_chords(n, inside, outside);
}

namespace {

// Orientation-preserving canonical code of a maximal plane graph.
std::vector<int> canonical_code(const Rot &rot)
{
    const int n = static_cast<int>(rot.size());
    std::vector<int> best;
    for (Vertex s = 0; s < n; ++s)
        for (Vertex t : rot[static_cast<std::size_t>(s)]) {
            std::vector<int> label(static_cast<std::size_t>(n), -1);
            std::vector<Vertex> queue{s};
            std::vector<Vertex> first{t};
            label[static_cast<std::size_t>(s)] = 0;
            std::vector<int> code;
            for (std::size_t q = 0; q < queue.size(); ++q) {
                const Vertex v = queue[q];
                const auto &r = rot[static_cast<std::size_t>(v)];
                const auto start = static_cast<std::size_t>(std::find(r.begin(), r.end(), first[q]) - r.begin());
                for (std::size_t k = 0; k < r.size(); ++k) {
                    const Vertex u = r[(start + k) % r.size()];
                    if (label[static_cast<std::size_t>(u)] < 0) {
                        label[static_cast<std::size_t>(u)] = static_cast<int>(queue.size());
                        queue.push_back(u);
                        first.push_back(v);
                    }
                    code.push_back(label[static_cast<std::size_t>(u)]);
                }
                code.push_back(-1);
            }
            if (best.empty() || code < best)
                best = std::move(code);
        }
    return best;
}

} // namespace

std::vector<PlaneTriangulation> all_triangulations(int n)
{
    if (n < 3 || n > 10)
        throw PreconditionError("all_triangulations supports 3 <= n <= 10");
    if (n == 3)
        return {PlaneTriangulation(triangle_rotation(), {0, 1, 2})};
    std::map<std::vector<int>, Rot> found;
    std::vector<Rot> frontier;
    auto offer = [&](Rot rot) {
        auto code = canonical_code(rot);
        if (found.emplace(code, rot).second)
            frontier.push_back(std::move(rot));
    };
    // seed: stack onto every class of n - 1, then close under flips
    for (const auto &g : all_triangulations(n - 1)) {
        Rot rot = g.rotation();
        const auto &o = g.outer();
        stack_into(rot, o[0], o[1], o[2], n - 1);
        offer(std::move(rot));
    }
    while (!frontier.empty()) {
        Rot rot = std::move(frontier.back());
        frontier.pop_back();
        for (Vertex a = 0; a < n; ++a)
            for (Vertex b : rot[static_cast<std::size_t>(a)]) {
                if (b < a)
                    continue;
                Rot copy = rot;
                if (try_flip(copy, a, b, {}))
                    offer(std::move(copy));
            }
    }
    std::vector<PlaneTriangulation> out;
    for (auto &[code, rot] : found) {
        PlaneTriangulation probe(rot, {});
        const Vertex a = 0, b = rot[0][0];
        auto face = probe.face_of(a, b);
        out.emplace_back(std::move(rot), std::move(face));
    }
    return out;
}

std::vector<PlaneTriangulation> with_each_outer_face(const PlaneTriangulation &g)
{
    std::vector<PlaneTriangulation> out;
    for (const auto &f : g.faces())
        out.push_back(g.with_outer(f));
    return out;
}

} // namespace rectcart
