#include "rectcart/instance.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

namespace rectcart {

using nlohmann::json;

Rational WeightedInstance::total() const
{
    Rational s = 0;
    for (const auto &w : weights)
        s += w;
    return s;
}

std::vector<double> WeightedInstance::weights_double() const
{
    std::vector<double> out;
    out.reserve(weights.size());
    for (const auto &w : weights)
        out.push_back(w.get_d());
    return out;
}

std::pair<Rational, Rational> square_frame(const Rational &a)
{
    Rational h(std::sqrt(a.get_d()));
    Rational w = a / h;
    return {w, h};
}

WeightedInstance make_instance(PlaneTriangulation g, std::vector<Rational> weights,
                               std::optional<std::pair<Rational, Rational>> frame)
{
    if (static_cast<int>(weights.size()) != g.size())
        throw InputError("weight count does not match vertex count");
    Rational sum = 0;
    for (std::size_t v = 0; v < weights.size(); ++v) {
        weights[v].canonicalize();
        if (weights[v] <= 0)
            throw InputError("non-positive weight at vertex " + g.id(static_cast<Vertex>(v)));
        sum += weights[v];
    }
    WeightedInstance inst;
    inst.graph = std::move(g);
    if (frame) {
        if (frame->first <= 0 || frame->second <= 0)
            throw InputError("frame sides must be positive");
        inst.width = frame->first;
        inst.height = frame->second;
        inst.scale = inst.width * inst.height / sum;
        for (auto &w : weights)
            w *= inst.scale;
    } else {
        std::tie(inst.width, inst.height) = square_frame(sum);
    }
    inst.weights = std::move(weights);
    return inst;
}

namespace {

Rational number_of(const json &j, const std::string &what)
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

} // namespace

WeightedInstance parse_instance(const std::string &text)
{
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error &e) {
        throw InputError(std::string("malformed instance: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("rotation") || !doc.contains("outer"))
        throw InputError("malformed instance: rotation and outer are required");

    std::vector<std::string> ids;
    std::map<std::string, Vertex> index;
    std::vector<Rational> weights;
    auto add_vertex = [&](const std::string &id) {
        if (index.count(id))
            throw InputError("duplicate vertex id " + id);
        index[id] = static_cast<Vertex>(ids.size());
        ids.push_back(id);
        weights.emplace_back(1);
    };
    if (doc.contains("vertices")) {
        for (const auto &v : doc.at("vertices")) {
            if (!v.is_object() || !v.contains("id"))
                throw InputError("malformed vertex entry");
            const auto &idj = v.at("id");
            add_vertex(idj.is_string() ? idj.get<std::string>() : idj.dump());
            if (v.contains("weight"))
                weights.back() = number_of(v.at("weight"), "weight of " + ids.back());
        }
    }
    const auto &rot = doc.at("rotation");
    if (!rot.is_object())
        throw InputError("malformed instance: rotation must be an object");
    for (auto it = rot.begin(); it != rot.end(); ++it)
        if (!index.count(it.key()))
            add_vertex(it.key());

    auto lookup = [&](const json &j) {
        const std::string id = j.is_string() ? j.get<std::string>() : j.dump();
        auto it = index.find(id);
        if (it == index.end())
            throw InputError("unknown vertex id " + id);
        return it->second;
    };
    std::vector<std::vector<Vertex>> rotation(ids.size());
    for (auto it = rot.begin(); it != rot.end(); ++it) {
        auto &r = rotation[static_cast<std::size_t>(index.at(it.key()))];
        for (const auto &u : it.value())
            r.push_back(lookup(u));
    }
    std::vector<Vertex> outer;
    for (const auto &u : doc.at("outer"))
        outer.push_back(lookup(u));
    std::vector<Vertex> cycle;
    if (doc.contains("cycle"))
        for (const auto &u : doc.at("cycle"))
            cycle.push_back(lookup(u));

    for (std::size_t v = 0; v < weights.size(); ++v)
        if (weights[v] <= 0)
            throw InputError("non-positive weight at vertex " + ids[v]);

    PlaneTriangulation g(std::move(rotation), std::move(outer), std::move(ids));
    const auto report = validate(g);
    if (!report.ok()) {
        std::string msg = "invalid graph:";
        for (const auto &p : report.problems)
            msg += " " + p + ";";
        throw InputError(msg);
    }
    std::optional<std::pair<Rational, Rational>> frame;
    if (doc.contains("frame")) {
        const auto &f = doc.at("frame");
        if (!f.is_array() || f.size() != 2)
            throw InputError("frame must be [W, H]");
        frame.emplace(number_of(f[0], "frame"), number_of(f[1], "frame"));
    }
    auto inst = make_instance(std::move(g), std::move(weights), frame);
    inst.cycle = std::move(cycle);
    return inst;
}

std::string read_file(const std::string &path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw InputError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string &path, const std::string &text)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw InputError("cannot write " + path);
    out << text;
}

WeightedInstance load_instance(const std::string &path) { return parse_instance(read_file(path)); }

std::string write_instance(const PlaneTriangulation &g, const std::vector<Rational> &weights,
                           const std::vector<Vertex> &cycle)
{
    json doc;
    doc["vertices"] = json::array();
    for (Vertex v = 0; v < g.size(); ++v) {
        const Rational &w = weights.at(static_cast<std::size_t>(v));
        json entry{{"id", g.id(v)}};
        if (w.get_den() == 1)
            entry["weight"] = json::parse(w.get_num().get_str());
        else
            entry["weight"] = to_fraction_string(w);
        doc["vertices"].push_back(entry);
    }
    json rot = json::object();
    for (Vertex v = 0; v < g.size(); ++v) {
        json list = json::array();
        for (Vertex u : g.neighbors(v))
            list.push_back(g.id(u));
        rot[g.id(v)] = list;
    }
    doc["rotation"] = rot;
    doc["outer"] = json::array();
    for (Vertex v : g.outer())
        doc["outer"].push_back(g.id(v));
    if (!cycle.empty()) {
        doc["cycle"] = json::array();
        for (Vertex v : cycle)
            doc["cycle"].push_back(g.id(v));
    }
    return doc.dump(1) + "\n";
}

} // namespace rectcart
