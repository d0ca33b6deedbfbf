#pragma once

// Axis-aligned geometry over an arbitrary ordered field. The combinatorial
// stages instantiate it with exact rationals, relaxation with double.

#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace rectcart {

using Rational = mpq_class;

class GeometryError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline double to_double(const Rational &q) { return q.get_d(); }
inline double to_double(double v) { return v; }

// Always "p/q", including integers ("3/1").
std::string to_fraction_string(const Rational &q);
// Accepts "p/q", "p" or a decimal literal (converted exactly from binary64).
Rational parse_rational(const std::string &text);
inline Rational exact(double v) { return Rational(v); }

template <class T>
struct Point {
    T x, y;
    friend bool operator==(const Point &a, const Point &b) { return a.x == b.x && a.y == b.y; }
};

template <class T>
struct Rect {
    T x0, y0, x1, y1;

    T width() const { return x1 - x0; }
    T height() const { return y1 - y0; }
    T area() const { return T((x1 - x0) * (y1 - y0)); }
    bool degenerate() const { return !(x0 < x1) || !(y0 < y1); }

    friend bool operator==(const Rect &a, const Rect &b)
    {
        return a.x0 == b.x0 && a.y0 == b.y0 && a.x1 == b.x1 && a.y1 == b.y1;
    }
};

template <class T>
bool interiors_overlap(const Rect<T> &a, const Rect<T> &b)
{
    return a.x0 < b.x1 && b.x0 < a.x1 && a.y0 < b.y1 && b.y0 < a.y1;
}

// a − b when the difference is again a rectangle (b covers a full-width or
// full-height band at one end of a). Disjoint interiors leave a unchanged.
template <class T>
Rect<T> subtract_band(const Rect<T> &a, const Rect<T> &b)
{
    if (!interiors_overlap(a, b))
        return a;
    Rect<T> r = a;
    const bool spans_x = !(a.x0 < b.x0) && !(b.x1 < a.x1);
    const bool spans_y = !(a.y0 < b.y0) && !(b.y1 < a.y1);
    if (spans_x && !(a.y0 < b.y0) && b.y1 < a.y1)
        r.y0 = b.y1;
    else if (spans_x && a.y0 < b.y0 && !(b.y1 < a.y1))
        r.y1 = b.y0;
    else if (spans_y && !(a.x0 < b.x0) && b.x1 < a.x1)
        r.x0 = b.x1;
    else if (spans_y && a.x0 < b.x0 && !(b.x1 < a.x1))
        r.x1 = b.x0;
    else
        throw GeometryError("rectangle difference is not a rectangle");
    return r;
}

// Simple rectilinear polygon, counter-clockwise, no collinear consecutive
// vertices, starting at the lowest (then leftmost) vertex.
template <class T>
using Polygon = std::vector<Point<T>>;

template <class T>
T signed_area(const Polygon<T> &p)
{
    T twice = 0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        const auto &a = p[i];
        const auto &b = p[(i + 1) % p.size()];
        twice += a.x * b.y - b.x * a.y;
    }
    return T(twice / 2);
}

template <class T>
T polygon_area(const Polygon<T> &p)
{
    T a = signed_area(p);
    return a < 0 ? T(-a) : a;
}

template <class T>
Rect<T> bounding_box(const Polygon<T> &p)
{
    if (p.empty())
        throw GeometryError("bounding box of empty polygon");
    Rect<T> r{p[0].x, p[0].y, p[0].x, p[0].y};
    for (const auto &q : p) {
        if (q.x < r.x0) r.x0 = q.x;
        if (q.y < r.y0) r.y0 = q.y;
        if (r.x1 < q.x) r.x1 = q.x;
        if (r.y1 < q.y) r.y1 = q.y;
    }
    return r;
}

// Drops repeated and collinear vertices and rotates to the canonical start.
// Throws on a non-axis-parallel edge.
template <class T>
Polygon<T> canonicalize(Polygon<T> p)
{
    Polygon<T> q;
    for (const auto &v : p)
        if (q.empty() || !(q.back() == v))
            q.push_back(v);
    while (q.size() > 1 && q.front() == q.back())
        q.pop_back();
    for (std::size_t i = 0; i < q.size(); ++i) {
        const auto &a = q[i];
        const auto &b = q[(i + 1) % q.size()];
        if (!(a.x == b.x) && !(a.y == b.y))
            throw GeometryError("polygon edge is not axis-parallel");
    }
    bool changed = true;
    while (changed && q.size() > 2) {
        changed = false;
        for (std::size_t i = 0; i < q.size(); ++i) {
            const auto &a = q[(i + q.size() - 1) % q.size()];
            const auto &b = q[i];
            const auto &c = q[(i + 1) % q.size()];
            if ((a.x == b.x && b.x == c.x) || (a.y == b.y && b.y == c.y)) {
                q.erase(q.begin() + static_cast<std::ptrdiff_t>(i));
                changed = true;
                break;
            }
        }
    }
    if (q.size() < 4)
        throw GeometryError("degenerate polygon");
    if (signed_area(q) < 0)
        std::reverse(q.begin(), q.end());
    auto lowest = std::min_element(q.begin(), q.end(), [](const Point<T> &a, const Point<T> &b) {
        return a.y < b.y || (a.y == b.y && a.x < b.x);
    });
    std::rotate(q.begin(), lowest, q.end());
    return q;
}

template <class T>
std::size_t side_count(const Polygon<T> &p)
{
    return canonicalize(p).size();
}

// Outline of a union of interior-disjoint rectangles that forms one simply
// connected region. Degenerate rectangles are ignored.
template <class T>
Polygon<T> union_outline(std::span<const Rect<T>> rects)
{
    std::vector<T> xs, ys;
    std::vector<Rect<T>> live;
    for (const auto &r : rects) {
        if (r.degenerate())
            continue;
        live.push_back(r);
        xs.push_back(r.x0); xs.push_back(r.x1);
        ys.push_back(r.y0); ys.push_back(r.y1);
    }
    if (live.empty())
        throw GeometryError("outline of empty rectangle set");
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    std::sort(ys.begin(), ys.end());
    ys.erase(std::unique(ys.begin(), ys.end()), ys.end());
    auto ix = [&](const T &v) { return static_cast<int>(std::lower_bound(xs.begin(), xs.end(), v) - xs.begin()); };
    auto iy = [&](const T &v) { return static_cast<int>(std::lower_bound(ys.begin(), ys.end(), v) - ys.begin()); };

    const int cols = static_cast<int>(xs.size()) - 1;
    const int rows = static_cast<int>(ys.size()) - 1;
    std::vector<char> in(static_cast<std::size_t>(cols * rows), 0);
    for (const auto &r : live)
        for (int cx = ix(r.x0); cx < ix(r.x1); ++cx)
            for (int cy = iy(r.y0); cy < iy(r.y1); ++cy) {
                auto &cell = in[static_cast<std::size_t>(cy * cols + cx)];
                if (cell)
                    throw GeometryError("overlapping rectangles in union");
                cell = 1;
            }
    auto inside = [&](int cx, int cy) {
        return cx >= 0 && cy >= 0 && cx < cols && cy < rows && in[static_cast<std::size_t>(cy * cols + cx)];
    };

    // Directed unit edges with the region on their left, keyed by start.
    std::multimap<std::pair<int, int>, std::pair<int, int>> next;
    for (int cx = 0; cx < cols; ++cx)
        for (int cy = 0; cy < rows; ++cy) {
            if (!inside(cx, cy))
                continue;
            if (!inside(cx, cy - 1)) next.insert({{cx, cy}, {cx + 1, cy}});
            if (!inside(cx + 1, cy)) next.insert({{cx + 1, cy}, {cx + 1, cy + 1}});
            if (!inside(cx, cy + 1)) next.insert({{cx + 1, cy + 1}, {cx, cy + 1}});
            if (!inside(cx - 1, cy)) next.insert({{cx, cy + 1}, {cx, cy}});
        }
    const std::size_t total = next.size();
    std::vector<std::pair<int, int>> loop;
    auto at = next.begin()->first;
    const auto start = at;
    do {
        if (next.count(at) != 1)
            throw GeometryError("union is not a simple polygon");
        auto it = next.find(at);
        loop.push_back(at);
        at = it->second;
        next.erase(it);
    } while (at != start);
    if (loop.size() != total)
        throw GeometryError("union is not simply connected");

    Polygon<T> out;
    out.reserve(loop.size());
    for (const auto &[cx, cy] : loop)
        out.push_back({xs[static_cast<std::size_t>(cx)], ys[static_cast<std::size_t>(cy)]});
    return canonicalize(std::move(out));
}

template <class T>
Polygon<T> rect_polygon(const Rect<T> &r)
{
    return Polygon<T>{{r.x0, r.y0}, {r.x1, r.y0}, {r.x1, r.y1}, {r.x0, r.y1}};
}

// Horizontal slab decomposition of a simple rectilinear polygon.
template <class T>
std::vector<Rect<T>> decompose(const Polygon<T> &p)
{
    std::vector<T> ys;
    for (const auto &v : p)
        ys.push_back(v.y);
    std::sort(ys.begin(), ys.end());
    ys.erase(std::unique(ys.begin(), ys.end()), ys.end());
    std::vector<Rect<T>> out;
    for (std::size_t k = 0; k + 1 < ys.size(); ++k) {
        const T lo = ys[k], hi = ys[k + 1];
        std::vector<T> xs;
        for (std::size_t i = 0; i < p.size(); ++i) {
            const auto &a = p[i];
            const auto &b = p[(i + 1) % p.size()];
            if (!(a.x == b.x))
                continue;
            const T ya = std::min(a.y, b.y), yb = std::max(a.y, b.y);
            if (!(lo < ya) && !(yb < hi))
                xs.push_back(a.x);
        }
        std::sort(xs.begin(), xs.end());
        if (xs.size() % 2 != 0)
            throw GeometryError("polygon is not simple");
        for (std::size_t i = 0; i + 1 < xs.size(); i += 2)
            out.push_back({xs[i], lo, xs[i + 1], hi});
    }
    return out;
}

template <class T>
Polygon<Rational> to_exact(const Polygon<T> &p)
{
    Polygon<Rational> out;
    out.reserve(p.size());
    for (const auto &v : p)
        out.push_back({Rational(v.x), Rational(v.y)});
    return out;
}

inline Polygon<double> to_double(const Polygon<Rational> &p)
{
    Polygon<double> out;
    out.reserve(p.size());
    for (const auto &v : p)
        out.push_back({v.x.get_d(), v.y.get_d()});
    return out;
}

template <class T>
Rect<double> to_double(const Rect<T> &r)
{
    return {to_double(r.x0), to_double(r.y0), to_double(r.x1), to_double(r.y1)};
}

} // namespace rectcart
