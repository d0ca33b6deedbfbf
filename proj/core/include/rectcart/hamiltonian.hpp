#pragma once

// Direct cartograms along a Hamiltonian cycle: every vertex is a body
// rectangle with up to two legs hanging down in reserved vertical strips.

#include "rectcart/geometry.hpp"
#include "rectcart/instance.hpp"
#include "rectcart/plane_graph.hpp"

#include <optional>
#include <set>
#include <vector>

namespace rectcart {

// Per cycle position j (0-based): strips open above the body of v_j, i.e.
// positions k > j with a left (right) edge (i, k), i <= j.
struct LegSets {
    std::vector<std::vector<int>> left, right;
};

LegSets leg_sets(const LeftRightSplit &split);

template <class T>
struct HamPiece {
    Rect<T> body;
    std::optional<Rect<T>> left_leg, right_leg;
    T lambda;
};

template <class T>
struct HamLayout {
    T width, height;
    std::vector<HamPiece<T>> pieces; // indexed by vertex

    Polygon<T> polygon(Vertex v) const;
    std::vector<Polygon<T>> polygons() const;
};

// Throws PreconditionError if the graph is not maximal, the cycle is invalid
// or (v1, vn) is not on the outer face. T is Rational (exact) or double.
template <class T = Rational>
HamLayout<T> ham_cartogram(const WeightedInstance &inst, const HamiltonianCycle &cycle);

// Same construction on an explicit split; weights are indexed by cycle
// position and must sum to width * height.
template <class T>
HamLayout<T> ham_cartogram(const LeftRightSplit &split, const std::vector<T> &weights, const T &width,
                           const T &height);

// Vertices v_j with a left and a right neighbour v_i, i < j - 1.
std::set<Vertex> two_legged_set(const PlaneTriangulation &g, const HamiltonianCycle &cycle);

// Throws PreconditionError if the cycle is not one-legged.
HamLayout<Rational> six_sided_cartogram(const WeightedInstance &inst, const HamiltonianCycle &cycle);

struct OuterplanarLayout {
    HamLayout<Rational> doubled;     // frame 2W x H, all weights doubled
    std::vector<Polygon<Rational>> polygons; // left half, frame W x H
    std::vector<Vertex> cycle;       // outer face order used as the cycle
};

// inst.graph must be maximal outer-planar (all vertices on the outer face,
// inner faces triangles).
OuterplanarLayout outerplanar_cartogram(const WeightedInstance &inst);

struct EquivalenceReport {
    bool one_legged = false;      // (a) no two-legged vertex
    bool outer_edges = false;     // (b) (v_{i-1}, v_i) on the outer face of G_i
    bool two_back = false;        // (c) v_{n-1} outer, v_i has two later neighbours
    bool reverse_canonical = false; // (d) vn .. v1 is a canonical order
    bool leaf_realizer = false;   // (e) realizer with inner vertices leaves in S1 or S2

    bool agree() const
    {
        return one_legged == outer_edges && outer_edges == two_back && two_back == reverse_canonical &&
               reverse_canonical == leaf_realizer;
    }
};

EquivalenceReport one_legged_report(const PlaneTriangulation &g, const HamiltonianCycle &cycle);

} // namespace rectcart
