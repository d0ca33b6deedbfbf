#pragma once

#include "rectcart/geometry.hpp"
#include "rectcart/plane_graph.hpp"

#include <optional>
#include <string>
#include <vector>

namespace rectcart {

// Graph plus positive weights, normalized so that W * H equals the weight sum.
struct WeightedInstance {
    PlaneTriangulation graph;
    std::vector<Rational> weights;
    Rational width, height;
    Rational scale = 1; // factor applied to the file's weights
    std::vector<Vertex> cycle; // optional Hamiltonian cycle from the file

    Rational total() const;
    std::vector<double> weights_double() const;
};

// Rational H close to sqrt(a), W = a / H exactly.
std::pair<Rational, Rational> square_frame(const Rational &a);

// Scales weights to the frame; without a frame, W = H ~ sqrt(sum).
WeightedInstance make_instance(PlaneTriangulation g, std::vector<Rational> weights,
                               std::optional<std::pair<Rational, Rational>> frame = std::nullopt);

// Instance JSON:
// {"vertices":[{"id":..,"weight":..}], "rotation":{id:[ids]}, "outer":[ids],
//  "frame":[W,H]?, "cycle":[ids]?}
// Throws InputError; the graph is validated.
WeightedInstance parse_instance(const std::string &text);
WeightedInstance load_instance(const std::string &path);
std::string write_instance(const PlaneTriangulation &g, const std::vector<Rational> &weights,
                           const std::vector<Vertex> &cycle = {});

std::string read_file(const std::string &path);
void write_file(const std::string &path, const std::string &text);

} // namespace rectcart
