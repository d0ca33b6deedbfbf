#pragma once

// Construction-blind checks on raw polygon coordinates.

#include "rectcart/geometry.hpp"
#include "rectcart/plane_graph.hpp"

#include <array>
#include <map>
#include <set>
#include <span>
#include <string>
#include <vector>

namespace rectcart {

enum class Side { Bottom, Right, Top, Left };

template <class T>
struct ContactReport {
    std::set<Edge> adjacency;           // (i, j) with i < j
    std::map<Edge, T> shared_length;
    // which side of each polygon the contact uses: (side of i, side of j)
    std::map<Edge, std::set<std::pair<Side, Side>>> sides;
    std::vector<Edge> missing, spurious; // against the reference, if given
    bool overlap = false;

    bool matches() const { return !overlap && missing.empty() && spurious.empty(); }
};

namespace detail {

template <class T>
struct LineEdge {
    T lo, hi;
    int owner;
    bool positive; // polygon interior lies above (horizontal) / right (vertical)
};

// Polygon edges grouped by supporting line: [axis][coordinate].
template <class T>
std::array<std::map<T, std::vector<LineEdge<T>>>, 2> edges_by_line(std::span<const Polygon<T>> polys)
{
    std::array<std::map<T, std::vector<LineEdge<T>>>, 2> lines;
    for (std::size_t p = 0; p < polys.size(); ++p) {
        const auto q = canonicalize(polys[p]);
        for (std::size_t i = 0; i < q.size(); ++i) {
            const auto &a = q[i];
            const auto &b = q[(i + 1) % q.size()];
            if (a.y == b.y) {
                // counter-clockwise: moving +x keeps the interior above
                const bool up = a.x < b.x;
                lines[0][a.y].push_back({std::min(a.x, b.x), std::max(a.x, b.x), static_cast<int>(p), up});
            } else {
                const bool right = b.y < a.y;
                lines[1][a.x].push_back({std::min(a.y, b.y), std::max(a.y, b.y), static_cast<int>(p), right});
            }
        }
    }
    return lines;
}

template <class T>
bool any_overlap(std::span<const Polygon<T>> polys)
{
    struct Item {
        Rect<T> r;
        std::size_t owner;
    };
    std::vector<Item> items;
    for (std::size_t p = 0; p < polys.size(); ++p)
        for (const auto &r : decompose(canonicalize(polys[p])))
            items.push_back({r, p});
    std::sort(items.begin(), items.end(), [](const Item &a, const Item &b) { return a.r.x0 < b.r.x0; });
    std::multimap<T, std::size_t> active;
    for (std::size_t i = 0; i < items.size(); ++i) {
        while (!active.empty() && !(items[i].r.x0 < active.begin()->first))
            active.erase(active.begin());
        for (const auto &[x1, j] : active)
            if (interiors_overlap(items[i].r, items[j].r))
                return true;
        active.emplace(items[i].r.x1, i);
    }
    return false;
}

} // namespace detail

// Contacts are positive-length shared boundary pieces longer than min_length.
template <class T>
ContactReport<T> contact_graph(std::span<const Polygon<T>> polys, const std::vector<Edge> *reference = nullptr,
                               const T &min_length = T(0))
{
    ContactReport<T> rep;
    rep.overlap = detail::any_overlap(polys);
    const auto lines = detail::edges_by_line(polys);
    for (int axis = 0; axis < 2; ++axis)
        for (const auto &[at, list] : lines[static_cast<std::size_t>(axis)]) {
            std::vector<detail::LineEdge<T>> sorted = list;
            std::sort(sorted.begin(), sorted.end(), [](const auto &a, const auto &b) { return a.lo < b.lo; });
            for (std::size_t i = 0; i < sorted.size(); ++i)
                for (std::size_t j = i + 1; j < sorted.size() && sorted[j].lo < sorted[i].hi; ++j) {
                    const auto &a = sorted[i];
                    const auto &b = sorted[j];
                    if (a.owner == b.owner)
                        continue;
                    const T len = T(std::min(a.hi, b.hi) - b.lo);
                    if (!(len > min_length))
                        continue;
                    if (a.positive == b.positive) {
                        rep.overlap = true; // both interiors on the same side
                        continue;
                    }
                    Edge e{std::min(a.owner, b.owner), std::max(a.owner, b.owner)};
                    rep.adjacency.insert(e);
                    rep.shared_length[e] += len;
                    // the polygon whose interior is on the positive side
                    // touches with its bottom (left) side
                    const Side pos_side = axis == 0 ? Side::Bottom : Side::Left;
                    const Side neg_side = axis == 0 ? Side::Top : Side::Right;
                    const bool first_pos = (a.owner == e.first) == a.positive;
                    rep.sides[e].insert(first_pos ? std::make_pair(pos_side, neg_side)
                                                  : std::make_pair(neg_side, pos_side));
                }
        }
    if (reference) {
        std::set<Edge> ref;
        for (auto [a, b] : *reference)
            ref.insert({std::min(a, b), std::max(a, b)});
        for (const auto &e : ref)
            if (!rep.adjacency.count(e))
                rep.missing.push_back(e);
        for (const auto &e : rep.adjacency)
            if (!ref.count(e))
                rep.spurious.push_back(e);
    }
    return rep;
}

struct ComplexityReport {
    std::vector<std::size_t> sides;
    std::size_t max = 0;
};

template <class T>
ComplexityReport polygon_complexity(std::span<const Polygon<T>> polys)
{
    ComplexityReport r;
    for (const auto &p : polys) {
        r.sides.push_back(side_count(p));
        r.max = std::max(r.max, r.sides.back());
    }
    return r;
}

template <class T>
Rect<T> union_bbox(std::span<const Polygon<T>> polys)
{
    Rect<T> box = bounding_box(polys.front());
    for (const auto &p : polys) {
        const auto b = bounding_box(p);
        box = {std::min(box.x0, b.x0), std::min(box.y0, b.y0), std::max(box.x1, b.x1), std::max(box.y1, b.y1)};
    }
    return box;
}

// Sum of areas equals the bounding box (within tol * area) and no overlaps.
template <class T>
bool holes_free(std::span<const Polygon<T>> polys, const T &tol = T(0))
{
    if (polys.empty())
        return false;
    const auto box = union_bbox(polys);
    T sum = 0;
    for (const auto &p : polys)
        sum += polygon_area(p);
    T diff = sum - box.area();
    if (diff < 0)
        diff = -diff;
    if (diff > tol * box.area())
        return false;
    return !detail::any_overlap(polys);
}

// Same contact pairs and the same sides of contact.
template <class T>
bool combinatorial_equiv(std::span<const Polygon<T>> a, std::span<const Polygon<T>> b, const T &min_length = T(0))
{
    if (a.size() != b.size())
        return false;
    const auto ra = contact_graph(a, nullptr, min_length);
    const auto rb = contact_graph(b, nullptr, min_length);
    return !ra.overlap && !rb.overlap && ra.adjacency == rb.adjacency && ra.sides == rb.sides;
}

} // namespace rectcart
