#include "rectcart/octo_layout.hpp"

#include <map>

namespace rectcart {

std::vector<Rect<Rational>> VertexRects::list() const
{
    std::vector<Rect<Rational>> out;
    for (const auto *r : {&H, &B, &L, &R})
        if (*r)
            out.push_back(**r);
    return out;
}

const char *part_name(Part p)
{
    switch (p) {
    case Part::H: return "H";
    case Part::B: return "B";
    case Part::L: return "L";
    case Part::R: return "R";
    }
    return "?";
}

std::vector<Rect<Rational>> RectSubdivision::plain() const
{
    std::vector<Rect<Rational>> out;
    out.reserve(rects.size());
    for (const auto &p : rects)
        out.push_back(p.r);
    return out;
}

TContactRep t_contacts(const PlaneTriangulation &g, const CanonicalOrder &order, const SchnyderRealizer &s,
                       const TopoIndex &pi)
{
    const int n = g.size();
    TContactRep t;
    t.n = n;
    t.h.resize(static_cast<std::size_t>(n));
    t.b.resize(static_cast<std::size_t>(n));
    for (Vertex v = 0; v < n; ++v) {
        const int k = order.of(v);
        const auto vi = static_cast<std::size_t>(v);
        if (v == s.r1) {
            t.h[vi] = {1, n - 1, 1};
            t.b[vi] = TContactRep::VSeg{1, 1, n};
        } else if (v == s.r2) {
            t.h[vi] = {1, n - 1, 2};
            t.b[vi] = TContactRep::VSeg{n - 1, 2, n};
        } else if (v == s.r3) {
            t.h[vi] = {1, n - 1, n};
        } else {
            t.h[vi] = {pi.of(s.parent(1, v)), pi.of(s.parent(2, v)), k};
            t.b[vi] = TContactRep::VSeg{pi.of(v), k, order.of(s.parent(3, v))};
        }
    }
    return t;
}

namespace {

Polygon<Rational> outline(const VertexRects &vr)
{
    const auto rs = vr.list();
    return union_outline(std::span<const Rect<Rational>>(rs));
}

void check_lambda(const Rational &lambda)
{
    if (!(lambda > 0 && lambda < 1))
        throw PreconditionError("lambda must lie in (0, 1)");
}

} // namespace

OctagonLayout octagons_direct(const PlaneTriangulation &g, const CanonicalOrder &order, const SchnyderRealizer &s,
                              const TopoIndex &pi, const Rational &lambda)
{
    check_lambda(lambda);
    const int n = g.size();
    const Rational half = lambda / 2;
    const Rational N(n);
    OctagonLayout o;
    o.lambda = lambda;
    o.bbox = {Rational(1) - half, Rational(1) - half, N - 1 + half, N + half};
    o.rects.resize(static_cast<std::size_t>(n));

    // lowest-numbered children in S1 and S2
    std::vector<int> low1(static_cast<std::size_t>(n), n + 1), low2(static_cast<std::size_t>(n), n + 1);
    for (Vertex u = 0; u < n; ++u) {
        if (!s.interior(u))
            continue;
        auto &a = low1[static_cast<std::size_t>(s.parent(1, u))];
        a = std::min(a, order.of(u));
        auto &b = low2[static_cast<std::size_t>(s.parent(2, u))];
        b = std::min(b, order.of(u));
    }

    const Rational lo = Rational(1) - half, hi = N - 1 + half;
    for (Vertex v = 0; v < n; ++v) {
        auto &vr = o.rects[static_cast<std::size_t>(v)];
        if (v == s.r1) {
            vr.H = Rect<Rational>{lo, Rational(1) - half, hi, Rational(1) + half};
            vr.B = Rect<Rational>{lo, Rational(1) + half, Rational(1) + half, N - half};
            vr.R = Rect<Rational>{Rational(1) + half, Rational(1) + half, hi, Rational(2) - half};
        } else if (v == s.r2) {
            vr.H = Rect<Rational>{Rational(1) + half, Rational(2) - half, hi, Rational(2) + half};
            vr.B = Rect<Rational>{N - 1 - half, Rational(2) + half, hi, N - half};
            vr.L = Rect<Rational>{Rational(1) + half, Rational(2) + half, N - 1 - half, Rational(3) - half};
        } else if (v == s.r3) {
            vr.H = Rect<Rational>{lo, N - half, hi, N + half};
        } else {
            const Rational y(order.of(v));
            const Rational x(pi.of(v));
            const Rational left = Rational(pi.of(s.parent(1, v))) + half;
            const Rational right = Rational(pi.of(s.parent(2, v))) - half;
            const int top = order.of(s.parent(3, v));
            const int jl = std::min(low2[static_cast<std::size_t>(v)], top);
            const int jr = std::min(low1[static_cast<std::size_t>(v)], top);
            vr.H = Rect<Rational>{left, y - half, right, y + half};
            vr.B = Rect<Rational>{x - half, y + half, x + half, Rational(top) - half};
            vr.L = Rect<Rational>{left, y + half, x - half, Rational(jl) - half};
            vr.R = Rect<Rational>{x + half, y + half, right, Rational(jr) - half};
        }
    }
    o.polygons.reserve(static_cast<std::size_t>(n));
    for (const auto &vr : o.rects)
        o.polygons.push_back(outline(vr));
    return o;
}

Fattened fatten(const TContactRep &t, const Rational &lambda)
{
    check_lambda(lambda);
    const int n = t.n;
    const Rational half = lambda / 2;
    int xmin = t.h[0].x0, xmax = t.h[0].x1, ymin = t.h[0].y, ymax = t.h[0].y;
    for (int v = 0; v < n; ++v) {
        const auto &h = t.h[static_cast<std::size_t>(v)];
        xmin = std::min(xmin, h.x0);
        xmax = std::max(xmax, h.x1);
        ymin = std::min(ymin, h.y);
        ymax = std::max(ymax, h.y);
        if (const auto &b = t.b[static_cast<std::size_t>(v)]) {
            xmin = std::min(xmin, b->x);
            xmax = std::max(xmax, b->x);
            ymin = std::min(ymin, b->y0);
            ymax = std::max(ymax, b->y1);
        }
    }
    Fattened f;
    f.lambda = lambda;
    f.bbox = {Rational(xmin) - half, Rational(ymin) - half, Rational(xmax) + half, Rational(ymax) + half};
    f.rects.resize(static_cast<std::size_t>(n));

    // inflate; ends on the extreme lines reach the frame
    std::vector<Rect<Rational>> H(static_cast<std::size_t>(n));
    std::vector<std::optional<Rect<Rational>>> B(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) {
        const auto &h = t.h[static_cast<std::size_t>(v)];
        H[static_cast<std::size_t>(v)] = {h.x0 == xmin ? Rational(h.x0) - half : Rational(h.x0), Rational(h.y) - half,
                                          h.x1 == xmax ? Rational(h.x1) + half : Rational(h.x1), Rational(h.y) + half};
        if (const auto &b = t.b[static_cast<std::size_t>(v)])
            B[static_cast<std::size_t>(v)] =
                Rect<Rational>{Rational(b->x) - half, b->y0 == ymin ? Rational(b->y0) - half : Rational(b->y0),
                               Rational(b->x) + half, b->y1 == ymax ? Rational(b->y1) + half : Rational(b->y1)};
    }

    std::map<int, std::vector<int>> verticals; // x -> vertices
    for (int v = 0; v < n; ++v)
        if (const auto &b = t.b[static_cast<std::size_t>(v)])
            verticals[b->x].push_back(v);

    std::vector<Rect<Rational>> Hout = H;
    std::vector<std::optional<Rect<Rational>>> Bout = B;
    for (int i = 0; i < n; ++i) {
        const auto &h = t.h[static_cast<std::size_t>(i)];
        for (auto it = verticals.lower_bound(h.x0); it != verticals.end() && it->first <= h.x1; ++it)
            for (int j : it->second) {
                const auto &Bj = *B[static_cast<std::size_t>(j)];
                if (!interiors_overlap(H[static_cast<std::size_t>(i)], Bj))
                    continue;
                const auto &b = *t.b[static_cast<std::size_t>(j)];
                const bool end_on_stem = (b.x == h.x0 || b.x == h.x1) && b.y0 < h.y && h.y < b.y1 && i != j;
                if (end_on_stem)
                    Hout[static_cast<std::size_t>(i)] = subtract_band(Hout[static_cast<std::size_t>(i)], Bj);
                else
                    Bout[static_cast<std::size_t>(j)] =
                        subtract_band(*Bout[static_cast<std::size_t>(j)], H[static_cast<std::size_t>(i)]);
            }
    }
    for (int v = 0; v < n; ++v) {
        auto &vr = f.rects[static_cast<std::size_t>(v)];
        vr.H = Hout[static_cast<std::size_t>(v)];
        if (Bout[static_cast<std::size_t>(v)]) {
            if (Bout[static_cast<std::size_t>(v)]->degenerate())
                throw GeometryError("fattened stem vanished");
            vr.B = Bout[static_cast<std::size_t>(v)];
        }
    }
    return f;
}

OctagonLayout fill_holes(const Fattened &f, HoleReport *report)
{
    const std::size_t n = f.rects.size();
    std::vector<Rational> xs{f.bbox.x0, f.bbox.x1}, ys{f.bbox.y0, f.bbox.y1};
    for (const auto &vr : f.rects)
        for (const auto &r : vr.list()) {
            xs.push_back(r.x0);
            xs.push_back(r.x1);
            ys.push_back(r.y0);
            ys.push_back(r.y1);
        }
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    std::sort(ys.begin(), ys.end());
    ys.erase(std::unique(ys.begin(), ys.end()), ys.end());
    const int cols = static_cast<int>(xs.size()) - 1, rows = static_cast<int>(ys.size()) - 1;
    auto ix = [&](const Rational &v) { return static_cast<int>(std::lower_bound(xs.begin(), xs.end(), v) - xs.begin()); };
    auto iy = [&](const Rational &v) { return static_cast<int>(std::lower_bound(ys.begin(), ys.end(), v) - ys.begin()); };
    std::vector<char> full(static_cast<std::size_t>(cols * rows), 0);
    for (const auto &vr : f.rects)
        for (const auto &r : vr.list())
            for (int cx = ix(r.x0); cx < ix(r.x1); ++cx)
                for (int cy = iy(r.y0); cy < iy(r.y1); ++cy) {
                    auto &c = full[static_cast<std::size_t>(cy * cols + cx)];
                    if (c)
                        throw GeometryError("fattened rectangles overlap");
                    c = 1;
                }

    // H rectangles by the y of their top side
    std::map<Rational, std::vector<std::size_t>> tops;
    for (std::size_t v = 0; v < n; ++v)
        tops[f.rects[v].H->y1].push_back(v);

    OctagonLayout o;
    o.lambda = f.lambda;
    o.bbox = f.bbox;
    o.rects = f.rects;
    HoleReport rep;
    rep.per_vertex.assign(n, 0);
    std::vector<char> seen(full.size(), 0);
    for (int sy = 0; sy < rows; ++sy)
        for (int sx = 0; sx < cols; ++sx) {
            const auto s0 = static_cast<std::size_t>(sy * cols + sx);
            if (full[s0] || seen[s0])
                continue;
            int x0 = sx, x1 = sx, y0 = sy, y1 = sy;
            std::size_t cells = 0;
            std::vector<std::pair<int, int>> todo{{sx, sy}};
            seen[s0] = 1;
            while (!todo.empty()) {
                const auto [cx, cy] = todo.back();
                todo.pop_back();
                ++cells;
                x0 = std::min(x0, cx);
                x1 = std::max(x1, cx);
                y0 = std::min(y0, cy);
                y1 = std::max(y1, cy);
                const std::pair<int, int> nb[4] = {{cx - 1, cy}, {cx + 1, cy}, {cx, cy - 1}, {cx, cy + 1}};
                for (const auto &[nx, ny] : nb) {
                    if (nx < 0 || ny < 0 || nx >= cols || ny >= rows)
                        continue;
                    const auto k = static_cast<std::size_t>(ny * cols + nx);
                    if (!full[k] && !seen[k]) {
                        seen[k] = 1;
                        todo.emplace_back(nx, ny);
                    }
                }
            }
            if (cells != static_cast<std::size_t>((x1 - x0 + 1) * (y1 - y0 + 1)))
                throw GeometryError("hole is not a rectangle");
            const Rect<Rational> hole{xs[static_cast<std::size_t>(x0)], ys[static_cast<std::size_t>(y0)],
                                      xs[static_cast<std::size_t>(x1 + 1)], ys[static_cast<std::size_t>(y1 + 1)]};
            ++rep.holes;
            std::size_t owner = n;
            if (auto it = tops.find(hole.y0); it != tops.end())
                for (std::size_t v : it->second) {
                    const auto &h = *f.rects[v].H;
                    if (!(hole.x0 < h.x0) && !(h.x1 < hole.x1)) {
                        owner = v;
                        break;
                    }
                }
            if (owner == n)
                throw GeometryError("hole not bounded below by a single horizontal bar");
            auto &vr = o.rects[owner];
            if (!vr.B)
                throw GeometryError("hole above a vertex without a stem");
            if (hole.x1 == vr.B->x0 && !vr.L)
                vr.L = hole;
            else if (hole.x0 == vr.B->x1 && !vr.R)
                vr.R = hole;
            else
                throw GeometryError("hole cannot be assigned left or right of the stem");
            ++rep.per_vertex[owner];
        }
    o.polygons.reserve(n);
    for (const auto &vr : o.rects)
        o.polygons.push_back(outline(vr));
    if (report)
        *report = std::move(rep);
    return o;
}

OctagonLayout fatten_and_fill(const TContactRep &t, const Rational &lambda, HoleReport *report)
{
    return fill_holes(fatten(t, lambda), report);
}

RectSubdivision subdivide(const OctagonLayout &o)
{
    RectSubdivision r;
    r.bbox = o.bbox;
    for (std::size_t v = 0; v < o.rects.size(); ++v) {
        const auto &vr = o.rects[v];
        const std::pair<const std::optional<Rect<Rational>> *, Part> parts[4] = {
            {&vr.H, Part::H}, {&vr.B, Part::B}, {&vr.L, Part::L}, {&vr.R, Part::R}};
        for (const auto &[rect, part] : parts)
            if (*rect && !(*rect)->degenerate())
                r.rects.push_back({static_cast<Vertex>(v), part, **rect});
        if (!(outline(vr) == o.polygons[v]))
            throw GeometryError("polygon does not decompose into its rectangles");
    }
    const auto plain = r.plain();
    check_tiling(r.bbox, std::span<const Rect<Rational>>(plain));
    return r;
}

std::vector<MaximalSegment<Rational>> maximal_segments(const RectSubdivision &r)
{
    const auto plain = r.plain();
    return maximal_segments(r.bbox, std::span<const Rect<Rational>>(plain));
}

bool is_area_universal(const RectSubdivision &r)
{
    const auto plain = r.plain();
    return all_one_sided(r.bbox, std::span<const Rect<Rational>>(plain));
}

OctagonLayout strip_augmentation(const OctagonLayout &o, const CanonicalOrder &order, int n)
{
    const Vertex v1 = order.at(1), v2 = order.at(2);
    if (std::max(v1, v2) != n - 1 || std::min(v1, v2) != n - 2)
        throw PreconditionError("augmentation vertices must be the last two indices");
    const Rational half = o.lambda / 2;
    const Rational N(n);
    OctagonLayout out;
    out.lambda = o.lambda;
    out.bbox = {Rational(1) + half, Rational(3) - half, N - 1 - half, N + half};
    for (std::size_t v = 0; v < o.rects.size(); ++v) {
        if (static_cast<Vertex>(v) == v1 || static_cast<Vertex>(v) == v2)
            continue;
        VertexRects vr;
        auto clip = [&](const std::optional<Rect<Rational>> &r) -> std::optional<Rect<Rational>> {
            if (!r)
                return std::nullopt;
            Rect<Rational> c{std::max(r->x0, out.bbox.x0), std::max(r->y0, out.bbox.y0),
                             std::min(r->x1, out.bbox.x1), std::min(r->y1, out.bbox.y1)};
            if (c.degenerate())
                return std::nullopt;
            return c;
        };
        vr.H = clip(o.rects[v].H);
        vr.B = clip(o.rects[v].B);
        vr.L = clip(o.rects[v].L);
        vr.R = clip(o.rects[v].R);
        out.rects.push_back(vr);
        out.polygons.push_back(outline(vr));
    }
    return out;
}

Pipeline schnyder_pipeline(const PlaneTriangulation &g, const Rational &lambda)
{
    Pipeline p;
    p.order = canonical_order(g);
    p.realizer = realizer_from_order(g, p.order);
    p.pi = topo_pi(g, p.realizer, p.order);
    p.layout = octagons_direct(g, p.order, p.realizer, p.pi, lambda);
    return p;
}

} // namespace rectcart
