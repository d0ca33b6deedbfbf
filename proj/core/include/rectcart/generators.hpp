#pragma once

// Seeded instance generators and the exhaustive small-n enumeration.

#include "rectcart/plane_graph.hpp"

#include <cstdint>
#include <vector>

namespace rectcart {

// Random insertion into a random inner face, then random diagonal flips.
PlaneTriangulation random_triangulation(int n, std::uint64_t seed, int flips_per_vertex = 2);

// Rotation system of a straight-line drawing; outer is listed so that the
// drawing's outer face lies to the right of outer[0] -> outer[1].
PlaneTriangulation from_straight_line(const std::vector<std::pair<double, double>> &pts, const std::vector<Edge> &edges,
                                      std::vector<Vertex> outer);

// Random maximal outer-planar graph: random triangulation of a convex n-gon.
// The outer face is the whole polygon.
PlaneTriangulation random_outerplanar(int n, std::uint64_t seed);

struct HamiltonianInstance {
    PlaneTriangulation graph;
    HamiltonianCycle cycle; // (v1, vn) on the outer face
};

// Random triangulations of the cycle's inside and outside (no chord twice).
HamiltonianInstance random_hamiltonian(int n, std::uint64_t seed);
// v1 fans the inside, vn fans the outside.
HamiltonianInstance stacked_fans(int n);
// Builds the graph from explicit chord lists over cycle positions 0..n-1.
// Throws if the result is not a valid triangulation.
HamiltonianInstance hamiltonian_from_chords(int n, const std::vector<Edge> &inside, const std::vector<Edge> &outside);

// All maximal plane graphs on n vertices (3 <= n <= 10), one per
// orientation-preserving isomorphism class of the embedding. Each comes with
// an arbitrary outer face; use with_each_outer_face to enumerate choices.
std::vector<PlaneTriangulation> all_triangulations(int n);
std::vector<PlaneTriangulation> with_each_outer_face(const PlaneTriangulation &g);

} // namespace rectcart
