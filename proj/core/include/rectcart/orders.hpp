#pragma once

// Canonical (shelling) orders, Schnyder realizers and the conversions
// between them.

#include "rectcart/plane_graph.hpp"

#include <array>
#include <span>
#include <string>
#include <vector>

namespace rectcart {

struct CanonicalOrder {
    std::vector<Vertex> seq;  // v1 .. vn
    std::vector<int> number;  // 1-based position of each vertex in seq

    int n() const { return static_cast<int>(seq.size()); }
    Vertex at(int k) const { return seq[static_cast<std::size_t>(k - 1)]; }
    int of(Vertex v) const { return number[static_cast<std::size_t>(v)]; }
};

CanonicalOrder make_order(std::vector<Vertex> seq);

// Parents in the three trees. phi[k][v] is -1 for the roots; the layout
// additionally uses phi1(v2) = phi1(vn) = v1 and phi2(vn) = v2, available
// through layout_parent().
struct SchnyderRealizer {
    Vertex r1 = -1, r2 = -1, r3 = -1;
    std::array<std::vector<Vertex>, 3> phi;

    int n() const { return static_cast<int>(phi[0].size()); }
    Vertex parent(int tree, Vertex v) const { return phi[static_cast<std::size_t>(tree - 1)][static_cast<std::size_t>(v)]; }
    bool interior(Vertex v) const { return v != r1 && v != r2 && v != r3; }
    Vertex layout_parent(int tree, Vertex v) const;

    friend bool operator==(const SchnyderRealizer &, const SchnyderRealizer &) = default;
};

// Reverse shelling with chord counts. g must be maximal and valid.
CanonicalOrder canonical_order(const PlaneTriangulation &g);

// Direct simulation of the shelling conditions. The first two entries must
// form an edge of the outer face (either direction) and the last one must be
// the remaining outer vertex.
bool verify_canonical(const PlaneTriangulation &g, std::span<const Vertex> seq);

// phi1/phi2 = first/last predecessor in rotation order, phi3 = highest
// numbered successor.
SchnyderRealizer realizer_from_order(const PlaneTriangulation &g, const CanonicalOrder &order);

// Topological order of S1^-1 u S2^-1 u S3 (with the root arcs), ties to the
// smallest vertex index. Throws PreconditionError on a cycle.
CanonicalOrder order_from_realizer(const PlaneTriangulation &g, const SchnyderRealizer &s);

bool verify_realizer(const PlaneTriangulation &g, const SchnyderRealizer &s);

// pi: rank in a topological order of S1^-1 u S2 over all vertices except vn,
// ties to the smallest canonical number. Values 1 .. n-1; pi(vn) = 0.
struct TopoIndex {
    std::vector<int> pi;
    int of(Vertex v) const { return pi[static_cast<std::size_t>(v)]; }
};

TopoIndex topo_pi(const PlaneTriangulation &g, const SchnyderRealizer &s, const CanonicalOrder &order);

// vertex id -> {phi1, phi2, phi3, canon, pi}
std::string dump_orders_json(const PlaneTriangulation &g, const CanonicalOrder &order, const SchnyderRealizer &s,
                             const TopoIndex &pi);

} // namespace rectcart
