#include "rectcart/orders.hpp"

#include <json.hpp>

#include <algorithm>
#include <functional>
#include <queue>

namespace rectcart {

CanonicalOrder make_order(std::vector<Vertex> seq)
{
    CanonicalOrder o;
    o.number.assign(seq.size(), 0);
    for (std::size_t k = 0; k < seq.size(); ++k) {
        const Vertex v = seq[k];
        if (v < 0 || static_cast<std::size_t>(v) >= seq.size() || o.number[static_cast<std::size_t>(v)] != 0)
            throw PreconditionError("order is not a permutation");
        o.number[static_cast<std::size_t>(v)] = static_cast<int>(k) + 1;
    }
    o.seq = std::move(seq);
    return o;
}

Vertex SchnyderRealizer::layout_parent(int tree, Vertex v) const
{
    if (tree == 1 && (v == r2 || v == r3))
        return r1;
    if (tree == 2 && v == r3)
        return r2;
    return parent(tree, v);
}

CanonicalOrder canonical_order(const PlaneTriangulation &g)
{
    if (!g.is_maximal())
        throw PreconditionError("canonical_order needs a maximal plane graph");
    const int n = g.size();
    const Vertex v1 = g.outer()[0], v2 = g.outer()[1], vn = g.outer()[2];
    const auto N = static_cast<std::size_t>(n);

    // Upper boundary v1 .. v2 as a doubly linked list.
    std::vector<Vertex> prev(N, -1), next(N, -1);
    std::vector<char> on_outer(N, 0), removed(N, 0);
    std::vector<int> chords(N, 0);
    next[static_cast<std::size_t>(v1)] = vn;
    prev[static_cast<std::size_t>(vn)] = v1;
    next[static_cast<std::size_t>(vn)] = v2;
    prev[static_cast<std::size_t>(v2)] = vn;
    on_outer[static_cast<std::size_t>(v1)] = on_outer[static_cast<std::size_t>(v2)] = on_outer[static_cast<std::size_t>(vn)] = 1;

    std::vector<Vertex> stack{vn};
    std::vector<Vertex> seq(N, -1);
    seq[0] = v1;
    seq[1] = v2;
    for (int k = n; k >= 3; --k) {
        Vertex v = -1;
        while (!stack.empty()) {
            const Vertex c = stack.back();
            stack.pop_back();
            const auto ci = static_cast<std::size_t>(c);
            if (on_outer[ci] && !removed[ci] && chords[ci] == 0 && c != v1 && c != v2) {
                v = c;
                break;
            }
        }
        if (v < 0)
            throw PreconditionError("canonical_order: no removable vertex (invalid triangulation)");
        const auto vi = static_cast<std::size_t>(v);
        seq[static_cast<std::size_t>(k - 1)] = v;
        removed[vi] = 1;
        on_outer[vi] = 0;
        const Vertex a = prev[vi], b = next[vi];
        if (k == 3)
            break;

        std::vector<Vertex> fresh;
        for (Vertex u = g.succ(v, a); u != b; u = g.succ(v, u))
            fresh.push_back(u);
        if (fresh.empty()) {
            // the chord (a, b) becomes a boundary edge
            next[static_cast<std::size_t>(a)] = b;
            prev[static_cast<std::size_t>(b)] = a;
            --chords[static_cast<std::size_t>(a)];
            --chords[static_cast<std::size_t>(b)];
            for (Vertex c : {a, b})
                if (chords[static_cast<std::size_t>(c)] == 0)
                    stack.push_back(c);
            continue;
        }
        Vertex last = a;
        for (Vertex u : fresh) {
            const auto ui = static_cast<std::size_t>(u);
            if (on_outer[ui] || removed[ui])
                throw PreconditionError("canonical_order: separating structure (invalid triangulation)");
            on_outer[ui] = 1;
            next[static_cast<std::size_t>(last)] = u;
            prev[ui] = last;
            last = u;
        }
        next[static_cast<std::size_t>(last)] = b;
        prev[static_cast<std::size_t>(b)] = last;
        for (Vertex u : fresh) {
            const auto ui = static_cast<std::size_t>(u);
            for (Vertex z : g.neighbors(u)) {
                const auto zi = static_cast<std::size_t>(z);
                if (!on_outer[zi] || z == prev[ui] || z == next[ui])
                    continue;
                ++chords[ui];
                if (std::find(fresh.begin(), fresh.end(), z) == fresh.end())
                    ++chords[zi];
            }
        }
        for (auto it = fresh.rbegin(); it != fresh.rend(); ++it)
            if (chords[static_cast<std::size_t>(*it)] == 0)
                stack.push_back(*it);
    }
    return make_order(std::move(seq));
}

namespace {

bool shelling_ok(const PlaneTriangulation &g, std::span<const Vertex> seq)
{
    const int n = g.size();
    std::vector<int> placed(static_cast<std::size_t>(n), 0);
    // boundary path from seq[0] to seq[1] over the top
    std::vector<Vertex> path{seq[0], seq[1]};
    placed[static_cast<std::size_t>(seq[0])] = 1;
    placed[static_cast<std::size_t>(seq[1])] = 1;
    for (int i = 2; i < n; ++i) {
        const Vertex v = seq[static_cast<std::size_t>(i)];
        if (placed[static_cast<std::size_t>(v)])
            return false;
        int count = 0;
        for (Vertex u : g.neighbors(v))
            if (placed[static_cast<std::size_t>(u)])
                ++count;
        if (count < 2)
            return false;
        // placed neighbours must be a contiguous stretch of the path
        std::size_t p = path.size();
        for (std::size_t t = 0; t < path.size(); ++t)
            if (g.adjacent(v, path[t])) {
                p = t;
                break;
            }
        if (p == path.size() || p + static_cast<std::size_t>(count) > path.size())
            return false;
        const std::size_t q = p + static_cast<std::size_t>(count) - 1;
        for (std::size_t t = p; t <= q; ++t)
            if (!g.adjacent(v, path[t]))
                return false;
        // and appear in the same order around v
        Vertex u = path[p];
        for (std::size_t t = p + 1; t <= q; ++t) {
            u = g.succ(v, u);
            if (u != path[t])
                return false;
        }
        path.erase(path.begin() + static_cast<std::ptrdiff_t>(p + 1), path.begin() + static_cast<std::ptrdiff_t>(q));
        path.insert(path.begin() + static_cast<std::ptrdiff_t>(p + 1), v);
        placed[static_cast<std::size_t>(v)] = 1;
    }
    return true;
}

bool is_outer_dart(const PlaneTriangulation &g, Vertex a, Vertex b)
{
    const auto &o = g.outer();
    for (std::size_t t = 0; t < o.size(); ++t)
        if (o[t] == a && o[(t + 1) % o.size()] == b)
            return true;
    return false;
}

} // namespace

bool verify_canonical(const PlaneTriangulation &g, std::span<const Vertex> seq)
{
    const int n = g.size();
    if (static_cast<int>(seq.size()) != n || n < 3 || !g.is_maximal())
        return false;
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    for (Vertex v : seq) {
        if (v < 0 || v >= n || seen[static_cast<std::size_t>(v)])
            return false;
        seen[static_cast<std::size_t>(v)] = 1;
    }
    const auto &o = g.outer();
    const Vertex last = seq.back();
    if (std::find(o.begin(), o.end(), last) == o.end())
        return false;
    if (is_outer_dart(g, seq[0], seq[1]))
        return shelling_ok(g, seq);
    if (is_outer_dart(g, seq[1], seq[0]))
        return shelling_ok(g.mirrored(), seq);
    return false;
}

SchnyderRealizer realizer_from_order(const PlaneTriangulation &g, const CanonicalOrder &order)
{
    const int n = g.size();
    if (order.n() != n)
        throw PreconditionError("order size differs from graph size");
    SchnyderRealizer s;
    s.r1 = order.at(1);
    s.r2 = order.at(2);
    s.r3 = order.at(n);
    for (auto &p : s.phi)
        p.assign(static_cast<std::size_t>(n), -1);
    for (int k = 3; k < n; ++k) {
        const Vertex v = order.at(k);
        const auto rot = g.neighbors(v);
        const std::size_t d = rot.size();
        Vertex first = -1, last = -1, top = -1;
        int blocks = 0;
        for (std::size_t t = 0; t < d; ++t) {
            const Vertex u = rot[t];
            const Vertex before = rot[(t + d - 1) % d];
            const Vertex after = rot[(t + 1) % d];
            const bool lower = order.of(u) < k;
            if (lower && order.of(before) > k) {
                first = u;
                ++blocks;
            }
            if (lower && order.of(after) > k)
                last = u;
            if (top < 0 || order.of(u) > order.of(top))
                top = u;
        }
        if (blocks != 1 || order.of(top) < k)
            throw PreconditionError("realizer_from_order: order is not canonical");
        s.phi[0][static_cast<std::size_t>(v)] = first;
        s.phi[1][static_cast<std::size_t>(v)] = last;
        s.phi[2][static_cast<std::size_t>(v)] = top;
    }
    return s;
}

namespace {

// Kahn's algorithm with a min-heap on the given priority.
std::vector<Vertex> topological(int n, const std::vector<std::vector<Vertex>> &out, const std::vector<char> &use,
                                const std::function<int(Vertex)> &priority)
{
    std::vector<int> indeg(static_cast<std::size_t>(n), 0);
    for (Vertex v = 0; v < n; ++v)
        if (use[static_cast<std::size_t>(v)])
            for (Vertex u : out[static_cast<std::size_t>(v)])
                ++indeg[static_cast<std::size_t>(u)];
    using Item = std::pair<int, Vertex>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> ready;
    int total = 0;
    for (Vertex v = 0; v < n; ++v)
        if (use[static_cast<std::size_t>(v)]) {
            ++total;
            if (indeg[static_cast<std::size_t>(v)] == 0)
                ready.emplace(priority(v), v);
        }
    std::vector<Vertex> seq;
    while (!ready.empty()) {
        const Vertex v = ready.top().second;
        ready.pop();
        seq.push_back(v);
        for (Vertex u : out[static_cast<std::size_t>(v)])
            if (--indeg[static_cast<std::size_t>(u)] == 0)
                ready.emplace(priority(u), u);
    }
    if (static_cast<int>(seq.size()) != total)
        throw PreconditionError("cycle in realizer digraph");
    return seq;
}

} // namespace

CanonicalOrder order_from_realizer(const PlaneTriangulation &g, const SchnyderRealizer &s)
{
    const int n = g.size();
    if (s.n() != n)
        throw PreconditionError("realizer size differs from graph size");
    std::vector<std::vector<Vertex>> out(static_cast<std::size_t>(n));
    auto arc = [&](Vertex a, Vertex b) {
        if (a < 0 || b < 0)
            throw PreconditionError("realizer has a missing parent");
        out[static_cast<std::size_t>(a)].push_back(b);
    };
    for (Vertex v = 0; v < n; ++v) {
        if (!s.interior(v))
            continue;
        arc(s.parent(1, v), v);
        arc(s.parent(2, v), v);
        arc(v, s.parent(3, v));
    }
    arc(s.r1, s.r2);
    arc(s.r1, s.r3);
    arc(s.r2, s.r3);
    const std::vector<char> all(static_cast<std::size_t>(n), 1);
    return make_order(topological(n, out, all, [](Vertex v) { return v; }));
}

bool verify_realizer(const PlaneTriangulation &g, const SchnyderRealizer &s)
{
    const int n = g.size();
    if (s.n() != n || !g.is_maximal())
        return false;
    const auto &o = g.outer();
    if (s.r1 != o[0] || s.r2 != o[1] || s.r3 != o[2]) {
        // accept the roots in either rotational sense of the outer triangle
        std::vector<Vertex> roots{s.r1, s.r2, s.r3}, sorted_o(o.begin(), o.end());
        std::sort(roots.begin(), roots.end());
        std::sort(sorted_o.begin(), sorted_o.end());
        if (roots != sorted_o)
            return false;
    }
    for (int t = 0; t < 3; ++t)
        for (Vertex v = 0; v < n; ++v) {
            const Vertex p = s.phi[static_cast<std::size_t>(t)][static_cast<std::size_t>(v)];
            if (s.interior(v) != (p >= 0))
                return false;
            if (p >= 0 && !g.adjacent(v, p))
                return false;
        }

    // Edge type seen from v: +k out in tree k, -k in from tree k, 0 unlabeled.
    auto type = [&](Vertex v, Vertex u, bool &clash) {
        int t = 0;
        for (int k = 1; k <= 3; ++k) {
            if (s.interior(v) && s.parent(k, v) == u) {
                clash |= t != 0;
                t = k;
            }
            if (s.interior(u) && s.parent(k, u) == v) {
                clash |= t != 0;
                t = -k;
            }
        }
        return t;
    };
    for (Vertex v = 0; v < n; ++v) {
        const auto rot = g.neighbors(v);
        const std::size_t d = rot.size();
        std::vector<int> types(d);
        bool clash = false;
        for (std::size_t t = 0; t < d; ++t) {
            types[t] = type(v, rot[t], clash);
            const bool both_outer = !s.interior(v) && !s.interior(rot[t]);
            if (types[t] == 0 && !both_outer)
                return false;
        }
        if (clash)
            return false;
        if (!s.interior(v)) {
            const int own = v == s.r1 ? -1 : v == s.r2 ? -2 : -3;
            for (int t : types)
                if (t != 0 && t != own)
                    return false;
            continue;
        }
        // out3, in2*, out1, in3*, out2, in1*
        const auto start = static_cast<std::size_t>(std::find(types.begin(), types.end(), 3) - types.begin());
        static const int stage_out[3] = {3, 1, 2};
        static const int stage_in[3] = {-2, -3, -1};
        int stage = 0;
        for (std::size_t t = 1; t < d; ++t) {
            const int x = types[(start + t) % d];
            if (x == stage_in[stage])
                continue;
            if (stage < 2 && x == stage_out[stage + 1]) {
                ++stage;
                continue;
            }
            return false;
        }
        if (stage != 2)
            return false;
    }
    // acyclic: follow parent chains with colouring
    for (int k = 1; k <= 3; ++k) {
        std::vector<char> state(static_cast<std::size_t>(n), 0);
        for (Vertex v = 0; v < n; ++v) {
            std::vector<Vertex> chain;
            Vertex x = v;
            while (x >= 0 && state[static_cast<std::size_t>(x)] == 0) {
                state[static_cast<std::size_t>(x)] = 1;
                chain.push_back(x);
                x = s.parent(k, x);
            }
            if (x >= 0 && state[static_cast<std::size_t>(x)] == 1)
                return false;
            for (Vertex c : chain)
                state[static_cast<std::size_t>(c)] = 2;
        }
    }
    return true;
}

TopoIndex topo_pi(const PlaneTriangulation &g, const SchnyderRealizer &s, const CanonicalOrder &order)
{
    const int n = g.size();
    std::vector<std::vector<Vertex>> out(static_cast<std::size_t>(n));
    std::vector<char> use(static_cast<std::size_t>(n), 1);
    use[static_cast<std::size_t>(s.r3)] = 0;
    for (Vertex v = 0; v < n; ++v) {
        if (!s.interior(v))
            continue;
        out[static_cast<std::size_t>(s.parent(1, v))].push_back(v);
        out[static_cast<std::size_t>(v)].push_back(s.parent(2, v));
    }
    out[static_cast<std::size_t>(s.r1)].push_back(s.r2);
    const auto seq = topological(n, out, use, [&](Vertex v) { return order.of(v); });
    TopoIndex t;
    t.pi.assign(static_cast<std::size_t>(n), 0);
    for (std::size_t k = 0; k < seq.size(); ++k)
        t.pi[static_cast<std::size_t>(seq[k])] = static_cast<int>(k) + 1;
    return t;
}

std::string dump_orders_json(const PlaneTriangulation &g, const CanonicalOrder &order, const SchnyderRealizer &s,
                             const TopoIndex &pi)
{
    nlohmann::json doc = nlohmann::json::object();
    auto name = [&](Vertex v) { return v < 0 ? nlohmann::json(nullptr) : nlohmann::json(g.id(v)); };
    for (Vertex v = 0; v < g.size(); ++v)
        doc[g.id(v)] = {{"phi1", name(s.parent(1, v))},
                        {"phi2", name(s.parent(2, v))},
                        {"phi3", name(s.parent(3, v))},
                        {"canon", order.of(v)},
                        {"pi", pi.of(v)}};
    return doc.dump(1) + "\n";
}

} // namespace rectcart
