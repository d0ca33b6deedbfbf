#include "rectcart/plane_graph.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace rectcart {

PlaneTriangulation::PlaneTriangulation(std::vector<std::vector<Vertex>> rotation, std::vector<Vertex> outer,
                                       std::vector<std::string> ids)
    : rotation_(std::move(rotation)), outer_(std::move(outer)), ids_(std::move(ids))
{
    const int n = size();
    if (ids_.empty()) {
        ids_.reserve(rotation_.size());
        for (int v = 0; v < n; ++v)
            ids_.push_back(std::to_string(v));
    }
    if (static_cast<int>(ids_.size()) != n)
        throw InputError("id list does not match vertex count");
    std::size_t darts = 0;
    pos_.reserve(rotation_.size() * 6);
    for (int v = 0; v < n; ++v) {
        const auto &rot = rotation_[static_cast<std::size_t>(v)];
        for (std::size_t k = 0; k < rot.size(); ++k) {
            const Vertex u = rot[k];
            if (u < 0 || u >= n)
                throw InputError("neighbour index out of range at vertex " + ids_[static_cast<std::size_t>(v)]);
            if (u == v)
                throw InputError("self-loop at vertex " + ids_[static_cast<std::size_t>(v)]);
            if (!pos_.emplace(key(v, u), static_cast<int>(k)).second)
                throw InputError("repeated neighbour in rotation of " + ids_[static_cast<std::size_t>(v)]);
        }
        darts += rot.size();
    }
    edge_count_ = darts / 2;
    for (Vertex o : outer_)
        if (o < 0 || o >= n)
            throw InputError("outer vertex index out of range");
}

bool PlaneTriangulation::adjacent(Vertex u, Vertex v) const { return pos_.count(key(u, v)) != 0; }

int PlaneTriangulation::position(Vertex v, Vertex u) const
{
    auto it = pos_.find(key(v, u));
    return it == pos_.end() ? -1 : it->second;
}

Vertex PlaneTriangulation::succ(Vertex v, Vertex u) const
{
    const int p = position(v, u);
    if (p < 0)
        throw PreconditionError("succ: not adjacent");
    const auto &rot = rotation_[static_cast<std::size_t>(v)];
    return rot[(static_cast<std::size_t>(p) + 1) % rot.size()];
}

Vertex PlaneTriangulation::pred(Vertex v, Vertex u) const
{
    const int p = position(v, u);
    if (p < 0)
        throw PreconditionError("pred: not adjacent");
    const auto &rot = rotation_[static_cast<std::size_t>(v)];
    return rot[(static_cast<std::size_t>(p) + rot.size() - 1) % rot.size()];
}

Vertex PlaneTriangulation::find(const std::string &id) const
{
    for (std::size_t v = 0; v < ids_.size(); ++v)
        if (ids_[v] == id)
            return static_cast<Vertex>(v);
    return -1;
}

std::vector<Vertex> PlaneTriangulation::face_of(Vertex a, Vertex b) const
{
    std::vector<Vertex> walk;
    Vertex x = a, y = b;
    const std::size_t cap = 2 * edge_count_ + 2;
    do {
        walk.push_back(x);
        const Vertex z = succ(y, x);
        x = y;
        y = z;
        if (walk.size() > cap)
            throw PreconditionError("face walk does not close");
    } while (!(x == a && y == b));
    return walk;
}

std::vector<std::vector<Vertex>> PlaneTriangulation::faces() const
{
    std::vector<std::vector<char>> seen(rotation_.size());
    for (std::size_t v = 0; v < rotation_.size(); ++v)
        seen[v].assign(rotation_[v].size(), 0);
    std::vector<std::vector<Vertex>> out;
    for (std::size_t v = 0; v < rotation_.size(); ++v)
        for (std::size_t k = 0; k < rotation_[v].size(); ++k) {
            if (seen[v][k])
                continue;
            std::vector<Vertex> walk;
            Vertex x = static_cast<Vertex>(v), y = rotation_[v][k];
            while (true) {
                const int p = position(x, y);
                auto &flag = seen[static_cast<std::size_t>(x)][static_cast<std::size_t>(p)];
                if (flag)
                    break;
                flag = 1;
                walk.push_back(x);
                const Vertex z = succ(y, x);
                x = y;
                y = z;
            }
            out.push_back(std::move(walk));
        }
    return out;
}

std::vector<Edge> PlaneTriangulation::edges() const
{
    std::vector<Edge> out;
    out.reserve(edge_count_);
    for (int v = 0; v < size(); ++v)
        for (Vertex u : neighbors(v))
            if (v < u)
                out.emplace_back(v, u);
    return out;
}

PlaneTriangulation PlaneTriangulation::mirrored() const
{
    auto rot = rotation_;
    for (auto &r : rot)
        std::reverse(r.begin(), r.end());
    std::vector<Vertex> outer;
    if (!outer_.empty()) {
        outer.push_back(outer_[0]);
        for (std::size_t i = outer_.size() - 1; i >= 1; --i)
            outer.push_back(outer_[i]);
    }
    return PlaneTriangulation(std::move(rot), std::move(outer), ids_);
}

PlaneTriangulation PlaneTriangulation::with_outer(std::vector<Vertex> outer) const
{
    return PlaneTriangulation(rotation_, std::move(outer), ids_);
}

ValidationReport validate(const PlaneTriangulation &g)
{
    ValidationReport report;
    const int n = g.size();
    if (n < 3) {
        report.problems.push_back("fewer than 3 vertices");
        return report;
    }
    for (Vertex v = 0; v < n; ++v)
        for (Vertex u : g.neighbors(v))
            if (!g.adjacent(u, v)) {
                report.problems.push_back("inconsistent rotation: " + g.id(v) + " lists " + g.id(u) +
                                          " but not conversely");
            }
    if (!report.ok())
        return report;

    const auto &outer = g.outer();
    const std::size_t k = outer.size();
    bool outer_ok = k >= 3;
    if (!outer_ok)
        report.problems.push_back("outer face has fewer than 3 vertices");
    if (outer_ok && std::set<Vertex>(outer.begin(), outer.end()).size() != k) {
        report.problems.push_back("outer face is not a simple cycle");
        outer_ok = false;
    }
    if (outer_ok)
        for (std::size_t i = 0; i < k; ++i)
            if (!g.adjacent(outer[i], outer[(i + 1) % k])) {
                report.problems.push_back("outer face is not a simple cycle: " + g.id(outer[i]) + " and " +
                                          g.id(outer[(i + 1) % k]) + " not adjacent");
                outer_ok = false;
                break;
            }
    if (outer_ok && g.face_of(outer[0], outer[1]) != outer) {
        report.problems.push_back("outer face is not a face of the rotation system");
        outer_ok = false;
    }

    const auto faces = g.faces();
    auto holds_outer_dart = [&](const std::vector<Vertex> &f) {
        for (std::size_t i = 0; i < f.size(); ++i)
            if (f[i] == outer[0] && f[(i + 1) % f.size()] == outer[1])
                return true;
        return false;
    };
    for (const auto &f : faces) {
        if (outer_ok && holds_outer_dart(f))
            continue;
        if (f.size() != 3) {
            std::string walk;
            for (Vertex v : f)
                walk += (walk.empty() ? "" : ",") + g.id(v);
            report.problems.push_back("non-triangular face (" + walk + ")");
        }
    }

    const std::size_t m = g.edge_count();
    const std::size_t expected = 3 * static_cast<std::size_t>(n) - 3 - (k >= 3 ? k : 3);
    if (m != expected) {
        if (k == 3)
            report.problems.push_back("m != 3n-6 (m=" + std::to_string(m) + ", n=" + std::to_string(n) + ")");
        else
            report.problems.push_back("m != 3n-3-k (m=" + std::to_string(m) + ", n=" + std::to_string(n) +
                                      ", k=" + std::to_string(k) + ")");
    }
    if (faces.size() + static_cast<std::size_t>(n) != m + 2)
        report.problems.push_back("Euler formula violated: graph is disconnected or the rotation system is not planar");
    return report;
}

Augmented augment_to_maximal(const PlaneTriangulation &g)
{
    const auto report = validate(g);
    if (!report.ok())
        throw PreconditionError("augment_to_maximal: " + report.problems.front());
    if (g.is_maximal())
        return {g, {}};

    const auto &c = g.outer();
    const std::size_t k = c.size();
    const std::size_t j = k / 2;
    const int n = g.size();
    const Vertex a = n, b = n + 1;

    auto rot = g.rotation();
    rot.emplace_back();
    rot.emplace_back();
    auto insert_after = [&](Vertex v, Vertex after, std::initializer_list<Vertex> items) {
        auto &r = rot[static_cast<std::size_t>(v)];
        auto it = std::find(r.begin(), r.end(), after);
        r.insert(std::next(it), items);
    };
    for (std::size_t s = 1; s < k; ++s) {
        const Vertex prev = c[s - 1];
        if (s < j)
            insert_after(c[s], prev, {a});
        else if (s == j)
            insert_after(c[s], prev, {a, b});
        else
            insert_after(c[s], prev, {b});
    }
    insert_after(c[0], c[k - 1], {b, a});

    auto &ra = rot[static_cast<std::size_t>(a)];
    for (std::size_t s = j + 1; s-- > 0;)
        ra.push_back(c[s]);
    ra.push_back(b);
    auto &rb = rot[static_cast<std::size_t>(b)];
    rb.push_back(c[0]);
    for (std::size_t s = k; s-- > j;)
        rb.push_back(c[s]);
    rb.push_back(a);

    std::set<std::string> used(g.ids().begin(), g.ids().end());
    auto fresh = [&](std::string base) {
        std::string name = base;
        for (int t = 1; used.count(name); ++t)
            name = base + "_" + std::to_string(t);
        used.insert(name);
        return name;
    };
    auto ids = g.ids();
    ids.push_back(fresh("aug_v1"));
    ids.push_back(fresh("aug_v2"));
    PlaneTriangulation out(std::move(rot), {a, b, c[0]}, std::move(ids));
    return {std::move(out), {a, b}};
}

namespace {

void check_permutation(const PlaneTriangulation &g, const HamiltonianCycle &c)
{
    const int n = g.size();
    if (static_cast<int>(c.order.size()) != n)
        throw PreconditionError("cycle length differs from vertex count");
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    for (Vertex v : c.order) {
        if (v < 0 || v >= n || seen[static_cast<std::size_t>(v)])
            throw PreconditionError("cycle is not a permutation of the vertices");
        seen[static_cast<std::size_t>(v)] = 1;
    }
}

[[noreturn]] void throw_non_edge(const PlaneTriangulation &g, Vertex a, Vertex b)
{
    throw PreconditionError("cycle uses a non-edge between " + g.id(a) + " and " + g.id(b));
}

} // namespace

void check_cycle(const PlaneTriangulation &g, const HamiltonianCycle &c)
{
    check_permutation(g, c);
    const int n = g.size();
    for (int i = 0; i < n; ++i)
        if (!g.adjacent(c.order[static_cast<std::size_t>(i)], c.order[static_cast<std::size_t>((i + 1) % n)]))
            throw_non_edge(g, c.order[static_cast<std::size_t>(i)], c.order[static_cast<std::size_t>((i + 1) % n)]);
}

std::vector<HamiltonianCycle> find_hamiltonian_cycles(const PlaneTriangulation &g, std::size_t limit)
{
    const int n = g.size();
    if (n > 12 && limit == 0)
        throw PreconditionError("exhaustive Hamiltonian search refused for n > 12 without a limit");
    std::vector<HamiltonianCycle> out;
    if (n < 3)
        return out;
    std::vector<Vertex> path{0};
    std::vector<char> used(static_cast<std::size_t>(n), 0);
    used[0] = 1;
    std::vector<std::vector<Vertex>> sorted(static_cast<std::size_t>(n));
    for (Vertex v = 0; v < n; ++v) {
        sorted[static_cast<std::size_t>(v)].assign(g.neighbors(v).begin(), g.neighbors(v).end());
        std::sort(sorted[static_cast<std::size_t>(v)].begin(), sorted[static_cast<std::size_t>(v)].end());
    }
    std::function<bool()> extend = [&]() -> bool {
        if (static_cast<int>(path.size()) == n) {
            if (g.adjacent(path.back(), 0) && path[1] < path.back()) {
                out.push_back({path});
                if (limit != 0 && out.size() >= limit)
                    return true;
            }
            return false;
        }
        for (Vertex u : sorted[static_cast<std::size_t>(path.back())]) {
            if (used[static_cast<std::size_t>(u)])
                continue;
            used[static_cast<std::size_t>(u)] = 1;
            path.push_back(u);
            const bool stop = extend();
            path.pop_back();
            used[static_cast<std::size_t>(u)] = 0;
            if (stop)
                return true;
        }
        return false;
    };
    extend();
    return out;
}

bool anchor_cycle_on_outer_face(const PlaneTriangulation &g, HamiltonianCycle &c)
{
    const auto &outer = g.outer();
    const std::size_t n = c.order.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Vertex a = c.order[i], b = c.order[(i + 1) % n];
        for (std::size_t t = 0; t < outer.size(); ++t) {
            const Vertex p = outer[t], q = outer[(t + 1) % outer.size()];
            if ((a == p && b == q) || (a == q && b == p)) {
                // make b = v1 and a = vn
                std::vector<Vertex> order;
                order.reserve(n);
                for (std::size_t s = 0; s < n; ++s)
                    order.push_back(c.order[(i + 1 + s) % n]);
                c.order = std::move(order);
                return true;
            }
        }
    }
    return false;
}

LeftRightSplit split_left_right(const PlaneTriangulation &g, const HamiltonianCycle &c)
{
    // adjacency of consecutive vertices is checked by the rotation scans below
    check_permutation(g, c);
    const int n = g.size();
    const Vertex v1 = c.order.front(), vn = c.order.back();
    const auto outer = g.outer();
    const std::size_t k = outer.size();
    bool forward = false, backward = false;
    for (std::size_t t = 0; t < k; ++t) {
        if (outer[t] == vn && outer[(t + 1) % k] == v1)
            forward = true;
        if (outer[t] == v1 && outer[(t + 1) % k] == vn)
            backward = true;
    }
    if (!forward && !backward)
        throw PreconditionError("(v1, vn) is not an edge of the outer face");

    std::vector<int> index(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        index[static_cast<std::size_t>(c.order[static_cast<std::size_t>(i)])] = i;

    LeftRightSplit split;
    split.n = n;
    // path edges on both sides plus 2n - 3 chords between them
    split.left.reserve(static_cast<std::size_t>(3 * n));
    split.right.reserve(static_cast<std::size_t>(3 * n));
    for (int i = 0; i + 1 < n; ++i) {
        split.left.emplace_back(i, i + 1);
        split.right.emplace_back(i, i + 1);
    }
    split.left.emplace_back(0, n - 1);

    // Chords after prev and before next (in rotation order) lie on the side of
    // the dart prev -> v; that side holds the outer face iff it contains vn -> v1.
    for (int i = 0; i < n; ++i) {
        const Vertex v = c.order[static_cast<std::size_t>(i)];
        const Vertex prev = c.order[static_cast<std::size_t>((i + n - 1) % n)];
        const Vertex next = c.order[static_cast<std::size_t>((i + 1) % n)];
        const auto rot = g.neighbors(v);
        const int deg = static_cast<int>(rot.size());
        // a linear scan keeps memory access sequential on large inputs
        const int p = static_cast<int>(std::find(rot.begin(), rot.end(), prev) - rot.begin());
        if (p == deg)
            throw_non_edge(g, prev, v);
        bool in_prev_side = true;
        for (int s = 1; s < deg; ++s) {
            const Vertex u = rot[static_cast<std::size_t>((p + s) % deg)];
            if (u == next) {
                in_prev_side = false;
                continue;
            }
            const int j = index[static_cast<std::size_t>(u)];
            if (j < i)
                continue; // classified from the lower endpoint
            const bool right = (in_prev_side == forward);
            (right ? split.right : split.left).emplace_back(i, j);
        }
        if (in_prev_side)
            throw_non_edge(g, v, next);
    }
    return split;
}

} // namespace rectcart
