#include "fixtures.hpp"
#include "oracles.hpp"
#include "rectcart/generators.hpp"
#include "rectcart/octo_layout.hpp"
#include "rectcart/verify.hpp"

#include <doctest.h>

using namespace rectcart;

namespace {

using Q = Rational;
using R = Rect<Rational>;

Q q(const char *s) { return parse_rational(s); }

R rect(const char *x0, const char *y0, const char *x1, const char *y1) { return {q(x0), q(y0), q(x1), q(y1)}; }

std::span<const Polygon<Rational>> polys(const OctagonLayout &o) { return o.polygons; }

struct Built {
    PlaneTriangulation g;
    Pipeline p;
};

Built build(const PlaneTriangulation &g) { return {g, schnyder_pipeline(g)}; }

// T segments touch when an endpoint of one lies on the other.
int touching_pairs(const TContactRep &t)
{
    struct Seg {
        int owner;
        int x0, y0, x1, y1;
    };
    std::vector<Seg> segs;
    for (int v = 0; v < t.n; ++v) {
        const auto &h = t.h[static_cast<std::size_t>(v)];
        segs.push_back({v, h.x0, h.y, h.x1, h.y});
        if (const auto &b = t.b[static_cast<std::size_t>(v)])
            segs.push_back({v, b->x, b->y0, b->x, b->y1});
    }
    auto on = [](const Seg &s, int x, int y) { return s.x0 <= x && x <= s.x1 && s.y0 <= y && y <= s.y1; };
    std::set<Edge> pairs;
    for (const auto &a : segs)
        for (const auto &b : segs)
            if (a.owner != b.owner && (on(b, a.x0, a.y0) || on(b, a.x1, a.y1)))
                pairs.insert({std::min(a.owner, b.owner), std::max(a.owner, b.owner)});
    return static_cast<int>(pairs.size());
}

} // namespace

TEST_CASE("T-contacts of K4")
{
    const auto g = fixtures::k4();
    const auto b = build(g);
    const auto t = t_contacts(g, b.p.order, b.p.realizer, b.p.pi);
    const auto c = static_cast<std::size_t>(g.find("c"));
    CHECK(t.h[c].x0 == 1);
    CHECK(t.h[c].x1 == 3);
    CHECK(t.h[c].y == 3);
    REQUIRE(t.b[c]);
    CHECK(t.b[c]->x == 2);
    CHECK(t.b[c]->y0 == 3);
    CHECK(t.b[c]->y1 == 4);
    CHECK(touching_pairs(t) == 6);
}

TEST_CASE("T-contacts of the triangle and of random graphs realize every edge")
{
    const auto tri = fixtures::triangle();
    const auto bt = build(tri);
    const auto t3 = t_contacts(tri, bt.p.order, bt.p.realizer, bt.p.pi);
    CHECK(touching_pairs(t3) == 3);
    // b_1 carries the left end of h_2
    CHECK(t3.h[1].x0 == t3.b[0]->x);

    const auto g = random_triangulation(50, 4242);
    const auto b = build(g);
    CHECK(touching_pairs(t_contacts(g, b.p.order, b.p.realizer, b.p.pi)) == static_cast<int>(g.edge_count()));
}

TEST_CASE("direct octagons of K4 with lambda 1/2")
{
    const auto g = fixtures::k4();
    const auto b = build(g);
    const auto &o = b.p.layout;
    CHECK(o.bbox == rect("3/4", "3/4", "13/4", "17/4"));
    const auto &u = o.rects[static_cast<std::size_t>(g.find("u"))];
    CHECK(*u.H == rect("3/4", "3/4", "13/4", "5/4"));
    CHECK(*u.B == rect("3/4", "5/4", "5/4", "15/4"));
    CHECK(*u.R == rect("5/4", "5/4", "13/4", "7/4"));
    const auto &v = o.rects[static_cast<std::size_t>(g.find("v"))];
    CHECK(*v.H == rect("5/4", "7/4", "13/4", "9/4"));
    CHECK(*v.B == rect("11/4", "9/4", "13/4", "15/4"));
    CHECK(*v.L == rect("5/4", "9/4", "11/4", "11/4"));
    const auto &c = o.rects[static_cast<std::size_t>(g.find("c"))];
    CHECK(*c.H == rect("5/4", "11/4", "11/4", "13/4"));
    CHECK(*c.B == rect("7/4", "13/4", "9/4", "15/4"));
    CHECK(*c.L == rect("5/4", "13/4", "7/4", "15/4"));
    CHECK(*c.R == rect("9/4", "13/4", "11/4", "15/4"));
    const auto &w = o.rects[static_cast<std::size_t>(g.find("w"))];
    CHECK(*w.H == rect("3/4", "15/4", "13/4", "17/4"));
    // the centre is a plain rectangle: base 11/4, top 15/4
    const auto pc = o.polygons[static_cast<std::size_t>(g.find("c"))];
    CHECK(side_count(pc) == 4);
    CHECK(bounding_box(pc) == rect("5/4", "11/4", "11/4", "15/4"));
    const auto cx = polygon_complexity(polys(o));
    CHECK(cx.max == 6);
    CHECK(holes_free(polys(o)));
}

TEST_CASE("lambda outside (0,1) is rejected")
{
    const auto g = fixtures::k4();
    const auto b = build(g);
    CHECK_THROWS_AS(octagons_direct(g, b.p.order, b.p.realizer, b.p.pi, Rational(1)), PreconditionError);
    CHECK_THROWS_AS(octagons_direct(g, b.p.order, b.p.realizer, b.p.pi, Rational(0)), PreconditionError);
}

TEST_CASE("fattening reproduces the direct octagons on K4")
{
    const auto g = fixtures::k4();
    const auto b = build(g);
    const auto t = t_contacts(g, b.p.order, b.p.realizer, b.p.pi);
    HoleReport rep;
    const auto f = fatten_and_fill(t, Rational(1, 2), &rep);
    CHECK(f.bbox == b.p.layout.bbox);
    CHECK(f.polygons == b.p.layout.polygons);
    for (int n : rep.per_vertex)
        CHECK(n <= 2);
    // before hole assignment the union is not the frame
    const auto fat = fatten(t, Rational(1, 2));
    std::vector<Polygon<Rational>> partial;
    for (const auto &vr : fat.rects) {
        const auto rs = vr.list();
        partial.push_back(union_outline(std::span<const Rect<Rational>>(rs)));
    }
    CHECK_FALSE(holes_free(std::span<const Polygon<Rational>>(partial)));
}

TEST_CASE("pipeline invariants on random triangulations")
{
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
        const int n = 4 + static_cast<int>(seed % 47);
        const auto g = random_triangulation(n, seed * 31);
        const auto b = build(g);
        const auto &o = b.p.layout;
        const auto edges = g.edges();
        const auto rep = contact_graph(polys(o), &edges);
        CHECK(rep.matches());
        CHECK(polygon_complexity(polys(o)).max <= 8);
        Rational sum = 0;
        for (const auto &p : o.polygons)
            sum += oracle::shoelace(p);
        CHECK(sum == o.bbox.area());
        CHECK(holes_free(polys(o)));
        const auto Nq = Rational(n);
        CHECK(o.bbox == R{Rational(3, 4), Rational(3, 4), Nq - Rational(3, 4), Nq + Rational(1, 4)});

        const auto t = t_contacts(g, b.p.order, b.p.realizer, b.p.pi);
        HoleReport holes;
        const auto f = fatten_and_fill(t, Rational(1, 2), &holes);
        CHECK(f.polygons == o.polygons);
        for (int k : holes.per_vertex)
            CHECK(k <= 2);

        const auto sub = subdivide(o);
        CHECK(sub.rects.size() <= static_cast<std::size_t>(4 * n));
        Rational rs = 0;
        for (const auto &r : sub.rects)
            rs += r.r.area();
        CHECK(rs == o.bbox.area());
        CHECK(is_area_universal(sub));
        // horizontal maximal segments carry H sides, vertical ones B sides
        for (const auto &s : maximal_segments(sub)) {
            bool carried = false;
            for (const auto &r : sub.rects) {
                if (s.horizontal && r.part == Part::H && (r.r.y0 == s.at || r.r.y1 == s.at) &&
                    !(s.lo < r.r.x0) && !(r.r.x1 < s.hi))
                    carried = true;
                if (!s.horizontal && r.part == Part::B && (r.r.x0 == s.at || r.r.x1 == s.at) &&
                    !(s.lo < r.r.y0) && !(r.r.y1 < s.hi))
                    carried = true;
            }
            CHECK(carried);
        }
    }
}

TEST_CASE("other lambdas give the same combinatorics")
{
    const auto g = random_triangulation(30, 99);
    const auto p = schnyder_pipeline(g, Rational(1, 3));
    const auto edges = g.edges();
    CHECK(contact_graph(std::span<const Polygon<Rational>>(p.layout.polygons), &edges).matches());
    const auto t = t_contacts(g, p.order, p.realizer, p.pi);
    CHECK(fatten_and_fill(t, Rational(1, 3)).polygons == p.layout.polygons);
}

TEST_CASE("maximal segments and one-sidedness on small tilings")
{
    const R frame{0, 0, 4, 4};
    std::vector<R> single{frame};
    CHECK(maximal_segments(frame, std::span<const R>(single)).empty());

    std::vector<R> stacked{{0, 0, 4, 2}, {0, 2, 4, 4}};
    const auto segs = maximal_segments(frame, std::span<const R>(stacked));
    REQUIRE(segs.size() == 1);
    CHECK(segs[0].horizontal);
    CHECK(segs[0].neg.empty());
    CHECK(segs[0].pos.empty());

    // guillotine whose cuts each receive attachments from one side only
    std::vector<R> guillotine{{0, 0, 2, 4}, {2, 0, 4, 1}, {2, 1, 4, 4}};
    CHECK(all_one_sided(frame, std::span<const R>(guillotine)));

    // full vertical cut at x=2 with a T from the left at y=1 and from the
    // right at y=3: sliceable, yet two-sided
    std::vector<R> two_heights{{0, 0, 2, 1}, {0, 1, 2, 4}, {2, 0, 4, 3}, {2, 3, 4, 4}};
    CHECK_FALSE(all_one_sided(frame, std::span<const R>(two_heights)));
    const auto cut = maximal_segments(frame, std::span<const R>(two_heights));
    const auto vertical = std::find_if(cut.begin(), cut.end(), [](const auto &s) { return !s.horizontal; });
    REQUIRE(vertical != cut.end());
    CHECK(vertical->neg == std::vector<Rational>{1});
    CHECK(vertical->pos == std::vector<Rational>{3});

    // every segment of the pinwheel is a side of the centre rectangle
    std::vector<R> pinwheel{{0, 0, 3, 1}, {3, 0, 4, 3}, {1, 3, 4, 4}, {0, 1, 1, 4}, {1, 1, 3, 3}};
    CHECK(all_one_sided(frame, std::span<const R>(pinwheel)));

    std::vector<R> gap{{0, 0, 4, 2}};
    CHECK_THROWS_AS(all_one_sided(frame, std::span<const R>(gap)), GeometryError);
}

TEST_CASE("maximal segment count on K4")
{
    const auto g = fixtures::k4();
    const auto p = schnyder_pipeline(g);
    const auto segs = maximal_segments(subdivide(p.layout));
    CHECK(segs.size() <= static_cast<std::size_t>(3 * g.size()));
}

TEST_CASE("augmented inputs are stripped back to the original vertices")
{
    for (const auto &g : {fixtures::square_with_diagonal(), fixtures::pentagon_fan(), random_outerplanar(9, 5)}) {
        const auto a = augment_to_maximal(g);
        const auto p = schnyder_pipeline(a.graph);
        const auto o = strip_augmentation(p.layout, p.order, a.graph.size());
        REQUIRE(o.polygons.size() == static_cast<std::size_t>(g.size()));
        const auto edges = g.edges();
        CHECK(contact_graph(polys(o), &edges).matches());
        CHECK(holes_free(polys(o)));
        CHECK(polygon_complexity(polys(o)).max <= 8);
        CHECK(union_bbox(polys(o)) == o.bbox);
    }
}
