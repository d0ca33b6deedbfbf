#include "rectcart/layout_io.hpp"

#include "rectcart/verify.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>

namespace rectcart {

using ojson = nlohmann::ordered_json;

namespace {

Rational number_of(const ojson &j, const std::string &what)
{
    if (j.is_number_integer())
        return Rational(mpz_class(j.dump()));
    if (j.is_number_float())
        return exact(j.get<double>());
    if (j.is_string()) {
        try {
            return parse_rational(j.get<std::string>());
        } catch (const GeometryError &) {
        }
    }
    throw InputError("malformed number for " + what);
}

ojson number_json(const Rational &q, bool exact_text)
{
    if (exact_text)
        return to_fraction_string(q);
    return q.get_d();
}

ojson rect_json(const Rect<Rational> &r, bool exact_text)
{
    return ojson::array({number_json(r.x0, exact_text), number_json(r.y0, exact_text), number_json(r.x1, exact_text),
                         number_json(r.y1, exact_text)});
}

Rect<Rational> rect_of(const ojson &j, const std::string &what)
{
    if (!j.is_array() || j.size() != 4)
        throw InputError("malformed rectangle for " + what);
    return {number_of(j[0], what), number_of(j[1], what), number_of(j[2], what), number_of(j[3], what)};
}

std::optional<Part> part_of(const std::string &name)
{
    for (Part p : {Part::H, Part::B, Part::L, Part::R})
        if (name == part_name(p))
            return p;
    return std::nullopt;
}

Rational min_side(const Rect<Rational> &r) { return std::min(r.width(), r.height()); }

} // namespace

LayoutFile layout_from_octagons(const OctagonLayout &o, const std::vector<std::string> &ids, std::string mode)
{
    LayoutFile f;
    f.mode = std::move(mode);
    f.ids = ids;
    f.bbox = o.bbox;
    f.lambda = o.lambda;
    f.polygons = o.polygons;
    for (const auto &vr : o.rects) {
        std::vector<std::pair<std::string, Rect<Rational>>> parts;
        const std::pair<Part, const std::optional<Rect<Rational>> *> named[] = {
            {Part::H, &vr.H}, {Part::B, &vr.B}, {Part::L, &vr.L}, {Part::R, &vr.R}};
        for (const auto &[p, r] : named)
            if (*r)
                parts.emplace_back(part_name(p), **r);
        f.rects.push_back(std::move(parts));
    }
    return f;
}

LayoutFile layout_from_hamiltonian(const HamLayout<Rational> &l, const std::vector<std::string> &ids,
                                   std::string mode)
{
    LayoutFile f;
    f.mode = std::move(mode);
    f.ids = ids;
    f.bbox = {0, 0, l.width, l.height};
    f.polygons = l.polygons();
    for (const auto &p : l.pieces) {
        std::vector<std::pair<std::string, Rect<Rational>>> parts{{"body", p.body}};
        if (p.left_leg)
            parts.emplace_back("left_leg", *p.left_leg);
        if (p.right_leg)
            parts.emplace_back("right_leg", *p.right_leg);
        f.rects.push_back(std::move(parts));
    }
    return f;
}

LayoutFile layout_from_outerplanar(const OuterplanarLayout &o, const std::vector<std::string> &ids)
{
    LayoutFile f;
    f.mode = "outerplanar6";
    f.ids = ids;
    const Rational cut = o.doubled.width / 2;
    f.bbox = {0, 0, cut, o.doubled.height};
    f.polygons = o.polygons;
    for (const auto &p : o.doubled.pieces) {
        std::vector<std::pair<std::string, Rect<Rational>>> parts{
            {"body", {p.body.x0, p.body.y0, std::min(p.body.x1, cut), p.body.y1}}};
        if (p.left_leg)
            parts.emplace_back("left_leg", *p.left_leg);
        f.rects.push_back(std::move(parts));
    }
    return f;
}

LayoutFile layout_from_relaxed(const CartogramLayout &c, const std::vector<std::string> &ids)
{
    LayoutFile f;
    f.mode = "relaxed";
    f.exact = false;
    f.ids = ids;
    f.bbox = {0, 0, exact(c.layout.width), exact(c.layout.height)};
    for (const auto &p : c.polygons)
        f.polygons.push_back(to_exact(p));
    f.rects.resize(ids.size());
    for (std::size_t r = 0; r < c.layout.rect_count(); ++r) {
        const auto box = c.layout.rect(r);
        f.rects[static_cast<std::size_t>(c.layout.owner[r])].emplace_back(
            part_name(c.layout.part[r]), Rect<Rational>{exact(box.x0), exact(box.y0), exact(box.x1), exact(box.y1)});
    }
    f.pressure = c.pressure;
    return f;
}

std::string write_layout(const LayoutFile &f)
{
    ojson doc;
    doc["mode"] = f.mode;
    doc["bbox"] = rect_json(f.bbox, f.exact);
    if (f.lambda)
        doc["lambda"] = to_fraction_string(*f.lambda);
    ojson polys = ojson::object();
    for (std::size_t v = 0; v < f.ids.size(); ++v) {
        ojson pts = ojson::array();
        for (const auto &p : f.polygons[v])
            pts.push_back(ojson::array({number_json(p.x, f.exact), number_json(p.y, f.exact)}));
        polys[f.ids[v]] = std::move(pts);
    }
    doc["polygons"] = std::move(polys);
    if (!f.rects.empty()) {
        ojson rects = ojson::object();
        for (std::size_t v = 0; v < f.ids.size(); ++v) {
            ojson parts = ojson::object();
            for (const auto &[name, r] : f.rects[v])
                parts[name] = rect_json(r, f.exact);
            rects[f.ids[v]] = std::move(parts);
        }
        doc["rects"] = std::move(rects);
    }
    if (!f.pressure.empty()) {
        ojson pr = ojson::object();
        for (std::size_t v = 0; v < f.ids.size(); ++v)
            pr[f.ids[v]] = f.pressure[v];
        doc["pressure"] = std::move(pr);
    }
    return doc.dump(1) + "\n";
}

LayoutFile parse_layout(const std::string &text)
{
    ojson doc;
    try {
        doc = ojson::parse(text);
    } catch (const ojson::parse_error &e) {
        throw InputError(std::string("malformed layout: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("polygons") || !doc.contains("bbox") || !doc.at("polygons").is_object())
        throw InputError("malformed layout: polygons and bbox are required");
    LayoutFile f;
    f.mode = doc.value("mode", std::string("unknown"));
    f.bbox = rect_of(doc.at("bbox"), "bbox");
    f.exact = doc.at("bbox")[0].is_string();
    if (doc.contains("lambda"))
        f.lambda = number_of(doc.at("lambda"), "lambda");
    std::map<std::string, std::size_t> index;
    for (auto it = doc.at("polygons").begin(); it != doc.at("polygons").end(); ++it) {
        index[it.key()] = f.ids.size();
        f.ids.push_back(it.key());
        Polygon<Rational> p;
        if (!it.value().is_array())
            throw InputError("malformed polygon for " + it.key());
        for (const auto &pt : it.value()) {
            if (!pt.is_array() || pt.size() != 2)
                throw InputError("malformed point in polygon " + it.key());
            p.push_back({number_of(pt[0], it.key()), number_of(pt[1], it.key())});
        }
        try {
            f.polygons.push_back(canonicalize(std::move(p)));
        } catch (const GeometryError &e) {
            throw InputError("polygon " + it.key() + ": " + e.what());
        }
    }
    if (doc.contains("rects")) {
        f.rects.resize(f.ids.size());
        for (auto it = doc.at("rects").begin(); it != doc.at("rects").end(); ++it) {
            auto v = index.find(it.key());
            if (v == index.end())
                throw InputError("rects for unknown vertex " + it.key());
            for (auto part = it.value().begin(); part != it.value().end(); ++part)
                f.rects[v->second].emplace_back(part.key(), rect_of(part.value(), it.key() + "." + part.key()));
        }
    }
    if (doc.contains("pressure")) {
        f.pressure.assign(f.ids.size(), 1.0);
        for (auto it = doc.at("pressure").begin(); it != doc.at("pressure").end(); ++it) {
            auto v = index.find(it.key());
            if (v == index.end() || !it.value().is_number())
                throw InputError("malformed pressure entry " + it.key());
            f.pressure[v->second] = it.value().get<double>();
        }
    }
    return f;
}

RectSubdivision layout_subdivision(const LayoutFile &f)
{
    RectSubdivision s{f.bbox, {}};
    for (std::size_t v = 0; v < f.rects.size(); ++v)
        for (const auto &[name, r] : f.rects[v]) {
            const auto p = part_of(name);
            if (!p)
                throw InputError("layout has no H/B/L/R breakdown (part " + name + ")");
            s.rects.push_back({static_cast<Vertex>(v), *p, r});
        }
    if (s.rects.empty())
        throw InputError("layout has no rectangles");
    return s;
}

namespace {

// Layout index of every instance vertex.
std::vector<std::size_t> match_ids(const LayoutFile &f, const WeightedInstance &inst)
{
    if (f.size() != inst.graph.size())
        throw InputError("layout and instance have different vertex counts");
    std::map<std::string, std::size_t> index;
    for (std::size_t v = 0; v < f.ids.size(); ++v)
        index[f.ids[v]] = v;
    std::vector<std::size_t> at;
    for (int v = 0; v < inst.graph.size(); ++v) {
        auto it = index.find(inst.graph.id(v));
        if (it == index.end())
            throw InputError("vertex " + inst.graph.id(v) + " has no polygon");
        at.push_back(it->second);
    }
    return at;
}

} // namespace

std::vector<double> pressures(const LayoutFile &f, const WeightedInstance &inst)
{
    const auto at = match_ids(f, inst);
    const double scale = f.bbox.area().get_d() / inst.total().get_d();
    std::vector<double> p(f.ids.size(), 1.0);
    for (int v = 0; v < inst.graph.size(); ++v) {
        const auto k = at[static_cast<std::size_t>(v)];
        p[k] = scale * inst.weights[static_cast<std::size_t>(v)].get_d() / polygon_area(f.polygons[k]).get_d();
    }
    return p;
}

LayoutCheck check_layout(const LayoutFile &f, const WeightedInstance &inst)
{
    const auto at = match_ids(f, inst);
    LayoutCheck c;
    c.bound = (f.mode == "onelegged6" || f.mode == "outerplanar6") ? 6 : 8;
    const Rational min_length = f.exact ? Rational(0) : Rational(exact(1e-9)) * min_side(f.bbox);
    std::vector<Edge> ref;
    for (auto [a, b] : inst.graph.edges())
        ref.emplace_back(static_cast<Vertex>(at[static_cast<std::size_t>(a)]),
                         static_cast<Vertex>(at[static_cast<std::size_t>(b)]));
    const auto rep = contact_graph<Rational>(f.polygons, &ref, min_length);
    c.overlap = rep.overlap;
    for (auto [a, b] : rep.missing)
        c.missing.emplace_back(f.ids[static_cast<std::size_t>(a)], f.ids[static_cast<std::size_t>(b)]);
    for (auto [a, b] : rep.spurious)
        c.spurious.emplace_back(f.ids[static_cast<std::size_t>(a)], f.ids[static_cast<std::size_t>(b)]);
    c.contacts_ok = rep.matches();
    c.holes_ok = holes_free<Rational>(f.polygons, f.exact ? Rational(0) : Rational(exact(1e-9)));
    c.max_sides = polygon_complexity<Rational>(f.polygons).max;
    c.sides_ok = c.max_sides <= c.bound;
    if (f.mode != "schnyder8") {
        double err = 0;
        for (double p : pressures(f, inst))
            err = std::max(err, std::abs(1 / p - 1));
        c.cartographic_error = err;
    }
    return c;
}

std::string check_json(const LayoutCheck &c)
{
    ojson doc;
    doc["ok"] = c.ok();
    doc["contacts_ok"] = c.contacts_ok;
    doc["overlap"] = c.overlap;
    auto pairs = [](const std::vector<std::pair<std::string, std::string>> &v) {
        ojson a = ojson::array();
        for (const auto &[x, y] : v)
            a.push_back(ojson::array({x, y}));
        return a;
    };
    doc["missing"] = pairs(c.missing);
    doc["spurious"] = pairs(c.spurious);
    doc["holes_free"] = c.holes_ok;
    doc["max_sides"] = c.max_sides;
    doc["side_bound"] = c.bound;
    if (c.cartographic_error)
        doc["cartographic_error"] = *c.cartographic_error;
    return doc.dump(1) + "\n";
}

namespace {

std::string hex_color(double r, double g, double b)
{
    char buf[8];
    auto c = [](double v) { return static_cast<int>(std::lround(std::clamp(v, 0.0, 1.0) * 255)); };
    std::snprintf(buf, sizeof buf, "#%02x%02x%02x", c(r), c(g), c(b));
    return buf;
}

// log2 pressure clamped to [-1, 1]: -1 green, 0 grey, +1 red
std::string pressure_color(double p)
{
    const double t = std::clamp(std::log2(p), -1.0, 1.0);
    const double grey = 0.85;
    if (std::abs(t) < 1e-9)
        return hex_color(grey, grey, grey);
    if (t < 0)
        return hex_color(grey + t * (grey - 0.17), grey + t * (grey - 0.63), grey + t * (grey - 0.17));
    return hex_color(grey + t * (0.84 - grey), grey - t * (grey - 0.15), grey - t * (grey - 0.16));
}

std::string xml_escape(const std::string &s)
{
    std::string out;
    for (char ch : s) {
        switch (ch) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        default: out += ch;
        }
    }
    return out;
}

} // namespace

std::string render_svg(const LayoutFile &f, const std::vector<double> &pressure)
{
    const double x0 = f.bbox.x0.get_d(), y0 = f.bbox.y0.get_d();
    const double w = f.bbox.width().get_d(), h = f.bbox.height().get_d();
    const double size = 800.0 / std::max(w, h);
    auto X = [&](const Rational &x) { return (x.get_d() - x0) * size; };
    auto Y = [&](const Rational &y) { return (h - (y.get_d() - y0)) * size; }; // y up

    std::ostringstream out;
    out.precision(10);
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w * size << "\" height=\"" << h * size
        << "\" viewBox=\"0 0 " << w * size << ' ' << h * size << "\">\n";
    for (std::size_t v = 0; v < f.polygons.size(); ++v) {
        const auto &p = f.polygons[v];
        const std::string fill = pressure.empty() ? "#f2f2f2" : pressure_color(pressure[v]);
        out << "<path id=\"" << xml_escape(f.ids[v]) << "\" d=\"";
        for (std::size_t i = 0; i < p.size(); ++i)
            out << (i ? " L " : "M ") << X(p[i].x) << ' ' << Y(p[i].y);
        out << " Z\" fill=\"" << fill << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
    }
    for (std::size_t v = 0; v < f.polygons.size(); ++v) {
        // label in the largest slab of the polygon
        const auto slabs = decompose(f.polygons[v]);
        const auto best = std::max_element(slabs.begin(), slabs.end(), [](const auto &a, const auto &b) {
            return a.area() < b.area();
        });
        const Rational cx = (best->x0 + best->x1) / 2, cy = (best->y0 + best->y1) / 2;
        out << "<text x=\"" << X(cx) << "\" y=\"" << Y(cy)
            << "\" font-size=\"12\" text-anchor=\"middle\" dominant-baseline=\"middle\">" << xml_escape(f.ids[v]) << "</text>\n";
    }
    out << "</svg>\n";
    return out.str();
}

} // namespace rectcart
