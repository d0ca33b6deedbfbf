#pragma once

// T-contact representation, lambda-fattening with hole assignment, the direct
// octagon formulas, the four-rectangle subdivision and area-universality.

#include "rectcart/geometry.hpp"
#include "rectcart/orders.hpp"
#include "rectcart/plane_graph.hpp"
#include "rectcart/segments.hpp"

#include <optional>
#include <string>
#include <vector>

namespace rectcart {

// Horizontal segment h_v = [x0, x1] x {y} and vertical b_v = {x} x [y0, y1];
// x-coordinates are pi values, y-coordinates canonical numbers. vn has no b.
struct TContactRep {
    struct HSeg {
        int x0, x1, y;
    };
    struct VSeg {
        int x, y0, y1;
    };
    int n = 0;
    std::vector<HSeg> h;
    std::vector<std::optional<VSeg>> b;
};

TContactRep t_contacts(const PlaneTriangulation &g, const CanonicalOrder &order, const SchnyderRealizer &s,
                       const TopoIndex &pi);

struct VertexRects {
    std::optional<Rect<Rational>> H, B, L, R;

    std::vector<Rect<Rational>> list() const;
};

struct OctagonLayout {
    Rational lambda;
    Rect<Rational> bbox;
    std::vector<VertexRects> rects;
    std::vector<Polygon<Rational>> polygons;
};

OctagonLayout octagons_direct(const PlaneTriangulation &g, const CanonicalOrder &order, const SchnyderRealizer &s,
                              const TopoIndex &pi, const Rational &lambda);

// H/B rectangles after inflation and overlap removal, before hole assignment.
struct Fattened {
    Rational lambda;
    Rect<Rational> bbox;
    std::vector<VertexRects> rects; // only H and B set
};

struct HoleReport {
    std::size_t holes = 0;
    std::vector<int> per_vertex;
};

Fattened fatten(const TContactRep &t, const Rational &lambda);
// Assigns every hole to the vertex whose H bounds it from below.
OctagonLayout fill_holes(const Fattened &f, HoleReport *report = nullptr);
OctagonLayout fatten_and_fill(const TContactRep &t, const Rational &lambda, HoleReport *report = nullptr);

enum class Part { H, B, L, R };
const char *part_name(Part p);

struct PlacedRect {
    Vertex owner;
    Part part;
    Rect<Rational> r;
};

struct RectSubdivision {
    Rect<Rational> bbox;
    std::vector<PlacedRect> rects;

    std::vector<Rect<Rational>> plain() const;
};

// Splits every polygon into its H, B, L, R rectangles; checks that they
// reassemble the polygons and tile the bounding box.
RectSubdivision subdivide(const OctagonLayout &o);

std::vector<MaximalSegment<Rational>> maximal_segments(const RectSubdivision &r);
bool is_area_universal(const RectSubdivision &r);

// Drops the two augmentation vertices (P_1 and P_2) and clips the frame.
OctagonLayout strip_augmentation(const OctagonLayout &o, const CanonicalOrder &order, int n);

// Everything from a validated maximal graph: order, realizer, pi, layout.
struct Pipeline {
    CanonicalOrder order;
    SchnyderRealizer realizer;
    TopoIndex pi;
    OctagonLayout layout;
};

Pipeline schnyder_pipeline(const PlaneTriangulation &g, const Rational &lambda = Rational(1, 2));

} // namespace rectcart
