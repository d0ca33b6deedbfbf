#pragma once

// Air-pressure relaxation of a rectangular subdivision towards prescribed
// areas. Every rectangle side lies on a maximal segment; segments carry the
// coordinates, so moving one keeps all incident rectangles attached.

#include "rectcart/geometry.hpp"
#include "rectcart/octo_layout.hpp"

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace rectcart {

struct RelaxLayout {
    double width = 0, height = 0;
    int vertices = 0;
    std::vector<Vertex> owner; // per rectangle
    std::vector<Part> part;
    std::vector<std::array<int, 4>> sides; // segment ids: left, bottom, right, top
    std::vector<double> pos;               // per segment
    std::vector<char> horizontal, fixed;

    std::size_t rect_count() const { return owner.size(); }
    std::size_t segment_count() const { return pos.size(); }
    Rect<double> rect(std::size_t r) const;
    std::vector<double> vertex_areas() const;
    std::vector<Polygon<double>> polygons() const;
};

// Affine image of an exact subdivision in [0, W] x [0, H].
RelaxLayout seed_layout(const RectSubdivision &sub, int vertices, double width, double height);

// Re-spaces the distinct x and y coordinates of a layout (monotone on each
// axis, frame kept) to raise sum t_r log A_r over the split_weights targets.
// Coordinate order is kept, so the result is combinatorially equivalent to
// the input; no gap shrinks below a tenth of the smallest input gap on its axis.
RelaxLayout balance_seed(const RelaxLayout &seed, const std::vector<double> &weights, int rounds = 20);

// Target area per rectangle: H and B get w/2 each (w when B is missing),
// L and R get 0.
std::vector<double> split_weights(const std::vector<double> &weights, const RelaxLayout &layout);

struct PressureContact {
    double pressure, length;
};
// F = sum over the low side of P*l minus the same over the high side.
double wall_force(std::span<const PressureContact> low, std::span<const PressureContact> high);

// Force on every segment (0 on the frame) from the polygon pressures
// w(v)/A(v). Throws on a zero-area polygon.
std::vector<double> forces(const RelaxLayout &layout, const std::vector<double> &weights);
// Same with every rectangle as its own region holding its target area.
std::vector<double> rect_forces(const RelaxLayout &layout, const std::vector<double> &targets);

// Polygon pressure balances whole polygons; rectangle pressure drives every
// rectangle to its split target. The polygon mode adds split_pull times the
// rectangle pressure, which keeps H and B near their share of the weight.
enum class Pressure { polygon, rectangle };

struct RelaxParams {
    double eta = 1.0;
    Pressure pressure = Pressure::polygon;
    double split_pull = 0.1;
    long max_iterations = 1000000;
    double target_error = 0.01;
    double delta_rel = 1e-6; // minimal size / contact length, relative to min(W, H)
    std::uint64_t seed = 0;
};

struct RelaxStats {
    long iterations = 0;
    double final_error = 0;
    double milliseconds = 0;
    bool converged = false;
};

// Keeps the constraint system between steps.
class Relaxer {
public:
    Relaxer(RelaxLayout seed, std::vector<double> weights, RelaxParams params = {});

    const RelaxLayout &layout() const { return layout_; }
    const std::vector<double> &targets() const { return targets_; }
    double error() const;
    // Moves the segment with the largest |force| that can move, together with
    // the segments it presses against through tight gaps. Returns the moved
    // segment, or nothing when no segment can move.
    std::optional<int> step();
    RelaxStats run(const std::function<void(const Relaxer &)> &observer = nullptr);

private:
    struct Gap {
        int other;
        double min;
    };
    RelaxLayout layout_;
    std::vector<double> weights_, targets_;
    std::vector<std::array<int, 2>> region_; // polygon region, rectangle region (-1 if unused)
    std::vector<double> region_weight_;
    RelaxParams params_;
    // per segment: the segment must stay at least `min` above (below) `other`
    std::vector<std::vector<Gap>> above_, below_;
    std::vector<std::vector<int>> low_rects_, high_rects_;

    struct Candidate {
        double magnitude; // total force along dir
        int segment;      // member with the largest |force|
        int dir;
        std::size_t begin, end; // members in scratch_.groups
    };
    // buffers reused across steps
    struct Scratch {
        std::vector<double> areas, felt, force, coef, weight, cap;
        std::vector<int> root, start, fill, order, local, groups, parent, queue;
        std::vector<std::pair<int, int>> tight, arcs, live;
        std::vector<char> member, blocked, chosen;
        std::vector<std::size_t> touched;
        std::vector<Candidate> cands;
    };
    Scratch scratch_;
    void collect_candidates();
    double delta_ = 0;
};

RelaxLayout relax_step(const RelaxLayout &layout, const std::vector<double> &weights, const RelaxParams &params = {});

struct CartogramLayout {
    RelaxLayout layout;
    std::vector<double> weights, areas, pressure;
    std::vector<Polygon<double>> polygons;
};

std::pair<CartogramLayout, RelaxStats> relax(const RelaxLayout &seed, const std::vector<double> &weights,
                                             const RelaxParams &params = {},
                                             const std::function<void(const Relaxer &)> &observer = nullptr);

// max over vertices of |A(v) - w(v)| / w(v), from polygon areas.
double cartographic_error(std::span<const Polygon<double>> polygons, const std::vector<double> &weights);
// Smallest side over rectangles with positive target area.
double min_feature_size(const RelaxLayout &layout, const std::vector<double> &targets);

std::string stats_csv_header();
std::string stats_csv_row(const std::string &id, int n, const RelaxStats &s);

} // namespace rectcart
