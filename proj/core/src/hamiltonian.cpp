#include "rectcart/hamiltonian.hpp"

#include "rectcart/orders.hpp"

#include <algorithm>
#include <array>
#include <numeric>
#include <span>
#include <string>

namespace rectcart {

namespace {

template <class T>
T from_rational(const Rational &q)
{
    if constexpr (std::is_same_v<T, Rational>)
        return q;
    else
        return q.get_d();
}

std::vector<int> positions(int n, const HamiltonianCycle &c)
{
    std::vector<int> pos(static_cast<std::size_t>(n), -1);
    for (std::size_t i = 0; i < c.order.size(); ++i)
        pos[static_cast<std::size_t>(c.order[i])] = static_cast<int>(i);
    return pos;
}

template <class T>
Rect<T> clip_right(const Rect<T> &r, const T &x)
{
    return {r.x0, r.y0, std::min(r.x1, x), r.y1};
}

// Lowest neighbour on each side per cycle position (n if none below).
std::pair<std::vector<int>, std::vector<int>> lowest_neighbours(const LeftRightSplit &split)
{
    const auto n = static_cast<std::size_t>(split.n);
    std::vector<int> lo_left(n, split.n), lo_right(n, split.n);
    for (auto [i, k] : split.left)
        lo_left[static_cast<std::size_t>(k)] = std::min(lo_left[static_cast<std::size_t>(k)], i);
    for (auto [i, k] : split.right)
        lo_right[static_cast<std::size_t>(k)] = std::min(lo_right[static_cast<std::size_t>(k)], i);
    return {lo_left, lo_right};
}

// Positions grouped by their lowest neighbour, each group descending; one
// flat array so that large inputs stay in a few allocations.
struct Buckets {
    std::vector<int> start, items;

    std::span<const int> at(std::size_t j) const
    {
        return {items.data() + start[j], static_cast<std::size_t>(start[j + 1] - start[j])};
    }
};

std::array<Buckets, 2> flat_leg_sets(const LeftRightSplit &split)
{
    const auto [lo_left, lo_right] = lowest_neighbours(split);
    const auto n = static_cast<std::size_t>(split.n);
    std::array<Buckets, 2> out;
    for (int side = 0; side < 2; ++side) {
        const auto &lo = side == 0 ? lo_left : lo_right;
        auto &b = out[static_cast<std::size_t>(side)];
        b.start.assign(n + 1, 0);
        for (std::size_t k = 1; k < n; ++k)
            if (lo[k] < static_cast<int>(k))
                ++b.start[static_cast<std::size_t>(lo[k]) + 1];
        std::partial_sum(b.start.begin(), b.start.end(), b.start.begin());
        b.items.resize(static_cast<std::size_t>(b.start[n]));
        std::vector<int> fill(b.start.begin(), b.start.end() - 1);
        // walking k downwards leaves every bucket in descending order
        for (std::size_t k = n - 1; k > 0; --k)
            if (lo[k] < static_cast<int>(k))
                b.items[static_cast<std::size_t>(fill[static_cast<std::size_t>(lo[k])]++)] = static_cast<int>(k);
    }
    return out;
}

} // namespace

LegSets leg_sets(const LeftRightSplit &split)
{
    const auto flat = flat_leg_sets(split);
    LegSets s;
    s.left.resize(static_cast<std::size_t>(split.n));
    s.right.resize(static_cast<std::size_t>(split.n));
    for (std::size_t j = 0; j < s.left.size(); ++j) {
        s.left[j].assign(flat[0].at(j).begin(), flat[0].at(j).end());
        s.right[j].assign(flat[1].at(j).begin(), flat[1].at(j).end());
    }
    return s;
}

template <class T>
Polygon<T> HamLayout<T>::polygon(Vertex v) const
{
    const auto &p = pieces[static_cast<std::size_t>(v)];
    std::vector<Rect<T>> parts{p.body};
    if (p.left_leg)
        parts.push_back(*p.left_leg);
    if (p.right_leg)
        parts.push_back(*p.right_leg);
    return union_outline<T>(parts);
}

template <class T>
std::vector<Polygon<T>> HamLayout<T>::polygons() const
{
    std::vector<Polygon<T>> out;
    out.reserve(pieces.size());
    for (std::size_t v = 0; v < pieces.size(); ++v)
        out.push_back(polygon(static_cast<Vertex>(v)));
    return out;
}

namespace {

// Piece i goes to index place[i] (or i without a placement).
template <class T>
HamLayout<T> build_cartogram(const LeftRightSplit &split, const std::vector<T> &weights, const T &width,
                             const T &height, const std::vector<Vertex> *place)
{
    const int n = split.n;
    if (n < 3 || static_cast<int>(weights.size()) != n)
        throw PreconditionError("ham_cartogram: need n >= 3 weights");
    if (!(width > 0) || !(height > 0))
        throw PreconditionError("ham_cartogram: frame must be positive");
    const auto sets = flat_leg_sets(split);
    const T denom = T(2 * height + width);

    struct Strip {
        T x0, y0;
    };
    std::vector<Strip> left_strip(static_cast<std::size_t>(n)), right_strip(static_cast<std::size_t>(n));
    // reserved strips, outermost first; the innermost is at the back
    std::vector<int> left_stack, right_stack;
    T left_width = 0, right_width = 0, y = 0;

    HamLayout<T> out;
    out.width = width;
    out.height = height;
    out.pieces.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        const auto ii = static_cast<std::size_t>(i);
        if (!(weights[ii] > 0))
            throw PreconditionError("ham_cartogram: weights must be positive");
        auto &piece = out.pieces[place ? static_cast<std::size_t>((*place)[ii]) : ii];
        piece.lambda = T(weights[ii] / denom);
        const T &lambda = piece.lambda;
        T x0 = 0, x1 = width, left_h = 0, right_h = 0;
        if (i > 0) {
            if (left_stack.empty() || left_stack.back() != i || right_stack.empty() || right_stack.back() != i)
                throw PreconditionError("ham_cartogram: strips of v" + std::to_string(i + 1) +
                                        " are not innermost (split is not outer-planar)");
            left_stack.pop_back();
            right_stack.pop_back();
            x0 = left_strip[ii].x0;
            left_width -= lambda;
            right_width -= lambda;
            x1 = T(right_strip[ii].x0 + lambda);
            left_h = T(y - left_strip[ii].y0);
            right_h = T(y - right_strip[ii].y0);
        }
        const T body_w = T(x1 - x0);
        if (!(body_w > 0))
            throw GeometryError("ham_cartogram: non-positive body width");
        const T body_h = T((weights[ii] - lambda * (left_h + right_h)) / body_w);
        if (!(body_h > 0))
            throw GeometryError("ham_cartogram: non-positive body height");
        piece.body = {x0, y, x1, T(y + body_h)};
        if (left_h > 0)
            piece.left_leg = Rect<T>{x0, left_strip[ii].y0, T(x0 + lambda), y};
        if (right_h > 0)
            piece.right_leg = Rect<T>{T(x1 - lambda), right_strip[ii].y0, x1, y};
        y = piece.body.y1;

        for (int k : sets[0].at(ii)) {
            if (!left_stack.empty() && left_stack.back() < k)
                throw PreconditionError("ham_cartogram: left strips out of order (split is not outer-planar)");
            const T lk = T(weights[static_cast<std::size_t>(k)] / denom);
            left_strip[static_cast<std::size_t>(k)] = {left_width, y};
            left_width += lk;
            left_stack.push_back(k);
        }
        for (int k : sets[1].at(ii)) {
            if (!right_stack.empty() && right_stack.back() < k)
                throw PreconditionError("ham_cartogram: right strips out of order (split is not outer-planar)");
            const T lk = T(weights[static_cast<std::size_t>(k)] / denom);
            right_width += lk;
            right_strip[static_cast<std::size_t>(k)] = {T(width - right_width), y};
            right_stack.push_back(k);
        }
        if (width - 2 * lambda < left_width + right_width)
            throw GeometryError("ham_cartogram: reserved strips exceed W - 2 lambda");
    }
    if (!left_stack.empty() || !right_stack.empty())
        throw PreconditionError("ham_cartogram: unused strips at the top");
    if constexpr (std::is_same_v<T, Rational>) {
        if (y != height)
            throw PreconditionError("ham_cartogram: weights do not sum to W * H");
    }
    return out;
}

} // namespace

template <class T>
HamLayout<T> ham_cartogram(const LeftRightSplit &split, const std::vector<T> &weights, const T &width,
                           const T &height)
{
    return build_cartogram(split, weights, width, height, nullptr);
}

template <class T>
HamLayout<T> ham_cartogram(const WeightedInstance &inst, const HamiltonianCycle &cycle)
{
    const auto &g = inst.graph;
    if (!g.is_maximal())
        throw PreconditionError("ham_cartogram needs a maximal plane graph");
    const LeftRightSplit split = split_left_right(g, cycle);
    std::vector<T> w;
    w.reserve(cycle.order.size());
    for (Vertex v : cycle.order)
        w.push_back(from_rational<T>(inst.weights[static_cast<std::size_t>(v)]));
    return build_cartogram<T>(split, w, from_rational<T>(inst.width), from_rational<T>(inst.height), &cycle.order);
}

template struct HamLayout<Rational>;
template struct HamLayout<double>;
template HamLayout<Rational> ham_cartogram<Rational>(const WeightedInstance &, const HamiltonianCycle &);
template HamLayout<double> ham_cartogram<double>(const WeightedInstance &, const HamiltonianCycle &);
template HamLayout<Rational> ham_cartogram<Rational>(const LeftRightSplit &, const std::vector<Rational> &,
                                                     const Rational &, const Rational &);
template HamLayout<double> ham_cartogram<double>(const LeftRightSplit &, const std::vector<double> &,
                                                 const double &, const double &);

std::set<Vertex> two_legged_set(const PlaneTriangulation &g, const HamiltonianCycle &cycle)
{
    const LeftRightSplit split = split_left_right(g, cycle);
    const auto [lo_left, lo_right] = lowest_neighbours(split);
    std::set<Vertex> out;
    for (int j = 0; j < split.n; ++j) {
        const auto jj = static_cast<std::size_t>(j);
        if (lo_left[jj] < j - 1 && lo_right[jj] < j - 1)
            out.insert(cycle.order[jj]);
    }
    return out;
}

HamLayout<Rational> six_sided_cartogram(const WeightedInstance &inst, const HamiltonianCycle &cycle)
{
    const auto legged = two_legged_set(inst.graph, cycle);
    if (!legged.empty())
    {
        const Vertex v = *legged.begin();
        const auto pos = positions(inst.graph.size(), cycle)[static_cast<std::size_t>(v)];
        throw PreconditionError("cycle is two-legged at v" + std::to_string(pos + 1) + " (vertex " + inst.graph.id(v) +
                                ")");
    }
    auto layout = ham_cartogram<Rational>(inst, cycle);
    for (std::size_t v = 0; v < layout.pieces.size(); ++v)
        if (side_count(layout.polygon(static_cast<Vertex>(v))) > 6)
            throw GeometryError("six_sided_cartogram: polygon with more than 6 sides");
    return layout;
}

OuterplanarLayout outerplanar_cartogram(const WeightedInstance &inst)
{
    const auto &g = inst.graph;
    const int n = g.size();
    if (n < 3 || static_cast<int>(g.outer().size()) != n || !validate(g).ok())
        throw PreconditionError("outerplanar_cartogram needs a maximal outer-planar graph");
    OuterplanarLayout out;
    out.cycle = g.outer();
    const auto pos = positions(n, HamiltonianCycle{out.cycle});

    // both copies of G, the closing edge included, so the layout is symmetric
    LeftRightSplit split;
    split.n = n;
    for (auto [a, b] : g.edges()) {
        const int i = pos[static_cast<std::size_t>(a)], k = pos[static_cast<std::size_t>(b)];
        split.left.emplace_back(std::min(i, k), std::max(i, k));
    }
    split.right = split.left;

    std::vector<Rational> w;
    for (Vertex v : out.cycle)
        w.push_back(2 * inst.weights[static_cast<std::size_t>(v)]);
    const Rational cut = inst.width;
    auto doubled = ham_cartogram<Rational>(split, w, Rational(2 * inst.width), inst.height);

    out.doubled.width = doubled.width;
    out.doubled.height = doubled.height;
    out.doubled.pieces.resize(static_cast<std::size_t>(n));
    out.polygons.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        const Vertex v = out.cycle[static_cast<std::size_t>(i)];
        auto &p = doubled.pieces[static_cast<std::size_t>(i)];
        if (p.body.x0 + p.body.x1 != 2 * cut || p.left_leg.has_value() != p.right_leg.has_value() ||
            (p.left_leg && (p.left_leg->x0 + p.right_leg->x1 != 2 * cut || p.left_leg->y0 != p.right_leg->y0)))
            throw GeometryError("outerplanar_cartogram: doubled layout is not symmetric");
        std::vector<Rect<Rational>> half{clip_right(p.body, cut)};
        if (p.left_leg)
            half.push_back(*p.left_leg);
        auto poly = union_outline<Rational>(half);
        if (poly.size() > 6)
            throw GeometryError("outerplanar_cartogram: half polygon with more than 6 sides");
        out.polygons[static_cast<std::size_t>(v)] = std::move(poly);
        out.doubled.pieces[static_cast<std::size_t>(v)] = std::move(p);
    }
    return out;
}

EquivalenceReport one_legged_report(const PlaneTriangulation &g, const HamiltonianCycle &cycle)
{
    if (!g.is_maximal())
        throw PreconditionError("one_legged_report needs a maximal plane graph");
    const auto &c = cycle.order;
    const int n = g.size();
    EquivalenceReport r;
    r.one_legged = two_legged_set(g, cycle).empty(); // validates the cycle and anchoring
    const auto pos = positions(n, cycle);
    auto at = [&](Vertex v) { return pos[static_cast<std::size_t>(v)]; };
    const auto &outer = g.outer();
    auto on_outer = [&](Vertex v) { return std::find(outer.begin(), outer.end(), v) != outer.end(); };

    // (b): removed vertices v_{p+2} .. vn are grown one at a time in a
    // union-find; a side of (v_p, v_{p+1}) is the outer face of the prefix iff
    // its third vertex was removed and lies in the component of vn.
    {
        std::vector<int> parent(static_cast<std::size_t>(n));
        std::iota(parent.begin(), parent.end(), 0);
        auto find = [&](int x) {
            while (parent[static_cast<std::size_t>(x)] != x)
                x = parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
            return x;
        };
        bool ok = on_outer(c[static_cast<std::size_t>(n - 1)]) && on_outer(c[static_cast<std::size_t>(n - 2)]);
        for (int p = n - 2; p >= 1 && ok; --p) {
            const Vertex added = c[static_cast<std::size_t>(p + 1)];
            for (Vertex u : g.neighbors(added))
                if (at(u) > p + 1)
                    parent[static_cast<std::size_t>(find(u))] = find(added);
            const Vertex a = c[static_cast<std::size_t>(p - 1)], b = c[static_cast<std::size_t>(p)];
            const Vertex vn = c.back();
            bool outer_side = on_outer(a) && on_outer(b);
            for (Vertex x : {g.succ(b, a), g.succ(a, b)})
                if (at(x) > p && find(x) == find(vn))
                    outer_side = true;
            ok = outer_side;
        }
        r.outer_edges = ok;
    }

    // (c)
    {
        bool ok = on_outer(c[static_cast<std::size_t>(n - 2)]);
        for (int p = 0; p + 2 < n && ok; ++p) {
            int later = 0;
            for (Vertex u : g.neighbors(c[static_cast<std::size_t>(p)]))
                later += at(u) > p;
            ok = later >= 2;
        }
        r.two_back = ok;
    }

    // (d)
    std::vector<Vertex> reversed(c.rbegin(), c.rend());
    r.reverse_canonical = verify_canonical(g, reversed);

    // (e): the realizer of the reversed order if it is canonical, otherwise
    // the one of some canonical order with the same roots. It counts only if
    // every inner vertex is a leaf in S1 or S2 and the order it defines is
    // the reversed cycle.
    {
        const Vertex w1 = reversed[0], w2 = reversed[1], wn = reversed.back();
        bool ok = on_outer(w1) && on_outer(w2) && on_outer(wn);
        if (ok) {
            const bool forward = [&] {
                for (std::size_t t = 0; t < outer.size(); ++t)
                    if (outer[t] == w1 && outer[(t + 1) % outer.size()] == w2)
                        return true;
                return false;
            }();
            const PlaneTriangulation gg = forward ? g.with_outer({w1, w2, wn}) : g.mirrored().with_outer({w1, w2, wn});
            const CanonicalOrder order = r.reverse_canonical ? make_order(reversed) : canonical_order(gg);
            const SchnyderRealizer s = realizer_from_order(gg, order);
            ok = verify_realizer(gg, s) && s.r1 == w1 && s.r2 == w2 && s.r3 == wn;
            std::vector<char> parent1(static_cast<std::size_t>(n), 0), parent2(static_cast<std::size_t>(n), 0);
            for (Vertex v = 0; v < n; ++v) {
                if (!s.interior(v))
                    continue;
                parent1[static_cast<std::size_t>(s.parent(1, v))] = 1;
                parent2[static_cast<std::size_t>(s.parent(2, v))] = 1;
            }
            for (Vertex v = 0; v < n && ok; ++v)
                if (s.interior(v) && parent1[static_cast<std::size_t>(v)] && parent2[static_cast<std::size_t>(v)])
                    ok = false;
            // the realizer has to describe this cycle: its own order is vn .. v1
            ok = ok && order_from_realizer(gg, s).seq == reversed;
        }
        r.leaf_realizer = ok;
    }
    return r;
}

} // namespace rectcart
