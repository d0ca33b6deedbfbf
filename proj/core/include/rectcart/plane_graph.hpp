#pragma once

// Combinatorial plane graphs given by a rotation system.
//
// Conventions used throughout the library:
//  * rotation(v) lists the neighbours of v in the file's cyclic order
//    ("clockwise" in instance files);
//  * faces are traced by next(a->b) = (b, succ_b(a)), where succ_b(a) is the
//    neighbour following a in rotation(b);
//  * the outer face is the face containing the dart outer[0] -> outer[1], and
//    tracing it visits outer[0], outer[1], ..., outer[k-1].

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace rectcart {

using Vertex = int;
using Edge = std::pair<Vertex, Vertex>;

class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class PreconditionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class PlaneTriangulation {
public:
    PlaneTriangulation() = default;
    // Throws InputError on out-of-range indices, self-loops or repeated
    // neighbours. Everything else is reported by validate().
    PlaneTriangulation(std::vector<std::vector<Vertex>> rotation, std::vector<Vertex> outer,
                       std::vector<std::string> ids = {});

    int size() const { return static_cast<int>(rotation_.size()); }
    std::size_t edge_count() const { return edge_count_; }
    bool is_maximal() const { return outer_.size() == 3; }

    std::span<const Vertex> neighbors(Vertex v) const { return rotation_[static_cast<std::size_t>(v)]; }
    int degree(Vertex v) const { return static_cast<int>(rotation_[static_cast<std::size_t>(v)].size()); }
    const std::vector<Vertex> &outer() const { return outer_; }
    const std::string &id(Vertex v) const { return ids_[static_cast<std::size_t>(v)]; }
    const std::vector<std::string> &ids() const { return ids_; }
    const std::vector<std::vector<Vertex>> &rotation() const { return rotation_; }

    bool adjacent(Vertex u, Vertex v) const;
    // Index of u in rotation(v), or -1.
    int position(Vertex v, Vertex u) const;
    Vertex succ(Vertex v, Vertex u) const;
    Vertex pred(Vertex v, Vertex u) const;
    Vertex find(const std::string &id) const;

    // All facial walks, each starting at its smallest dart.
    std::vector<std::vector<Vertex>> faces() const;
    // Facial walk containing the dart a -> b.
    std::vector<Vertex> face_of(Vertex a, Vertex b) const;
    std::vector<Edge> edges() const;

    // Same embedding with reversed rotations (mirror image); the outer face
    // keeps its vertex set and is re-anchored accordingly.
    PlaneTriangulation mirrored() const;
    // Same rotation system with a different outer face, given as a facial walk.
    PlaneTriangulation with_outer(std::vector<Vertex> outer) const;

private:
    static std::uint64_t key(Vertex a, Vertex b)
    {
        return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(a)) << 32) | static_cast<std::uint32_t>(b);
    }

    std::vector<std::vector<Vertex>> rotation_;
    std::vector<Vertex> outer_;
    std::vector<std::string> ids_;
    std::unordered_map<std::uint64_t, int> pos_;
    std::size_t edge_count_ = 0;
};

struct ValidationReport {
    std::vector<std::string> problems;
    bool ok() const { return problems.empty(); }
};

// Rotation consistency, simple outer face, triangular inner faces and the
// edge count m = 3n - 3 - k for an outer face of length k.
ValidationReport validate(const PlaneTriangulation &g);

struct Augmented {
    PlaneTriangulation graph;
    std::vector<Vertex> added; // {v1, v2}, empty when g was already maximal
};

// Adds two vertices around a non-triangular outer face so the result is
// maximal with outer face (added[0], added[1], old outer[0]).
Augmented augment_to_maximal(const PlaneTriangulation &g);

struct HamiltonianCycle {
    std::vector<Vertex> order; // v1 .. vn
};

// Throws PreconditionError if the sequence is not a Hamiltonian cycle.
void check_cycle(const PlaneTriangulation &g, const HamiltonianCycle &c);

// Exhaustive enumeration of undirected Hamiltonian cycles, each reported once
// starting at vertex 0 with order[1] < order[n-1]. Refuses n > 12 without a limit.
std::vector<HamiltonianCycle> find_hamiltonian_cycles(const PlaneTriangulation &g, std::size_t limit = 0);

// Left/right graphs of a Hamiltonian cycle, as edges over cycle positions
// (i < k, 0-based). Path edges appear in both; the closing edge (v1, vn)
// belongs to the left graph only.
struct LeftRightSplit {
    int n = 0;
    std::vector<Edge> left;
    std::vector<Edge> right;
};

LeftRightSplit split_left_right(const PlaneTriangulation &g, const HamiltonianCycle &c);

// Rotates/reverses the cycle so that (v1, vn) is an edge of the outer face,
// if any cycle edge lies on it. Returns false otherwise.
bool anchor_cycle_on_outer_face(const PlaneTriangulation &g, HamiltonianCycle &c);

} // namespace rectcart
