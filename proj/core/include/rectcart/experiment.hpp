#pragma once

// Seeded relaxation experiments: random maximal graphs with uniform weights,
// seeded through the octagon pipeline.

#include "rectcart/plane_graph.hpp"
#include "rectcart/relax.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace rectcart {

struct BenchCase {
    std::string id;
    int n = 0;
    PlaneTriangulation graph;
    std::vector<double> weights;
};

// `trials` cases per size, weights uniform in [wmin, wmax].
std::vector<BenchCase> bench_cases(const std::vector<int> &sizes, int trials, double wmin, double wmax,
                                   std::uint64_t seed);

// Exact subdivision scaled into the square of area sum(w), then balanced.
RelaxLayout bench_seed(const BenchCase &c);

// Median number of steps the cases need to reach `level`.
long calibrate_budget(const std::vector<BenchCase> &cases, double level, RelaxParams params = {});

struct BenchRow {
    std::string id;
    int n = 0;
    RelaxStats to_target;   // run until params.target_error
    long budget = 0;
    double budget_error = 0; // error after `budget` steps
};

BenchRow bench_case(const BenchCase &c, const RelaxParams &params, long budget);

std::string bench_csv_header();
std::string bench_csv_row(const BenchRow &r);

} // namespace rectcart
