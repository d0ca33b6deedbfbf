#pragma once

// Layout files shared by every construction, plus verification and SVG.
//
// {"mode": str, "bbox": [x0,y0,x1,y1], "lambda": q?,
//  "polygons": {id: [[x,y], ...]},              counter-clockwise
//  "rects": {id: {part: [x0,y0,x1,y1], ...}},   H/B/L/R or body/left_leg/right_leg
//  "pressure": {id: num}?}
// Exact layouts write coordinates as "p/q" strings, relaxed ones as numbers.

#include "rectcart/geometry.hpp"
#include "rectcart/hamiltonian.hpp"
#include "rectcart/instance.hpp"
#include "rectcart/octo_layout.hpp"
#include "rectcart/relax.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace rectcart {

struct LayoutFile {
    std::string mode;
    bool exact = true;
    std::vector<std::string> ids;
    Rect<Rational> bbox{0, 0, 0, 0};
    std::optional<Rational> lambda;
    std::vector<Polygon<Rational>> polygons;
    std::vector<std::vector<std::pair<std::string, Rect<Rational>>>> rects;
    std::vector<double> pressure; // empty if not recorded

    int size() const { return static_cast<int>(ids.size()); }
};

LayoutFile layout_from_octagons(const OctagonLayout &o, const std::vector<std::string> &ids, std::string mode);
LayoutFile layout_from_hamiltonian(const HamLayout<Rational> &l, const std::vector<std::string> &ids,
                                   std::string mode);
// The cut half; rects are the clipped body and left leg.
LayoutFile layout_from_outerplanar(const OuterplanarLayout &o, const std::vector<std::string> &ids);
LayoutFile layout_from_relaxed(const CartogramLayout &c, const std::vector<std::string> &ids);

std::string write_layout(const LayoutFile &f);
// Throws InputError.
LayoutFile parse_layout(const std::string &text);

// H/B/L/R rectangles back as a subdivision; throws InputError if the file
// has no such breakdown.
RectSubdivision layout_subdivision(const LayoutFile &f);

struct LayoutCheck {
    bool contacts_ok = false, holes_ok = false, sides_ok = false;
    std::size_t max_sides = 0, bound = 8;
    std::vector<std::pair<std::string, std::string>> missing, spurious;
    bool overlap = false;
    std::optional<double> cartographic_error; // when the instance carries weights

    bool ok() const { return contacts_ok && holes_ok && sides_ok; }
};

// Side bound 6 for the six-sided modes, 8 otherwise. Polygons are matched to
// the instance by id. Relaxed layouts use the length threshold 1e-9 min(W,H).
LayoutCheck check_layout(const LayoutFile &f, const WeightedInstance &inst);
std::string check_json(const LayoutCheck &c);

// w / A per polygon, matched by id.
std::vector<double> pressures(const LayoutFile &f, const WeightedInstance &inst);

// One path per polygon with its id as label; with pressures, regions that
// must shrink are green, ones that must grow red, balanced ones grey.
std::string render_svg(const LayoutFile &f, const std::vector<double> &pressure = {});

} // namespace rectcart
