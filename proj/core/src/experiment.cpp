#include "rectcart/experiment.hpp"

#include "rectcart/generators.hpp"
#include "rectcart/octo_layout.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

namespace rectcart {

std::vector<BenchCase> bench_cases(const std::vector<int> &sizes, int trials, double wmin, double wmax,
                                   std::uint64_t seed)
{
    if (!(wmin > 0) || wmax < wmin)
        throw PreconditionError("bench_cases: need 0 < wmin <= wmax");
    std::mt19937_64 rng(seed);
    std::vector<BenchCase> out;
    for (int n : sizes)
        for (int t = 0; t < trials; ++t) {
            BenchCase c;
            c.n = n;
            c.id = "n" + std::to_string(n) + "_t" + std::to_string(t);
            c.graph = random_triangulation(n, rng());
            std::uniform_real_distribution<double> d(wmin, wmax);
            for (int v = 0; v < n; ++v)
                c.weights.push_back(d(rng));
            out.push_back(std::move(c));
        }
    return out;
}

RelaxLayout bench_seed(const BenchCase &c)
{
    double area = 0;
    for (double w : c.weights)
        area += w;
    const auto p = schnyder_pipeline(c.graph);
    return balance_seed(seed_layout(subdivide(p.layout), c.n, std::sqrt(area), std::sqrt(area)), c.weights);
}

long calibrate_budget(const std::vector<BenchCase> &cases, double level, RelaxParams params)
{
    if (cases.empty())
        return 0;
    params.target_error = level;
    std::vector<long> steps;
    for (const auto &c : cases)
        steps.push_back(relax(bench_seed(c), c.weights, params).second.iterations);
    std::sort(steps.begin(), steps.end());
    return steps[steps.size() / 2];
}

BenchRow bench_case(const BenchCase &c, const RelaxParams &params, long budget)
{
    BenchRow r;
    r.id = c.id;
    r.n = c.n;
    const auto seed = bench_seed(c);
    r.to_target = relax(seed, c.weights, params).second;
    r.budget = budget;
    RelaxParams capped = params;
    capped.max_iterations = budget;
    r.budget_error = relax(seed, c.weights, capped).second.final_error;
    return r;
}

std::string bench_csv_header() { return "instance,n,iterations,final_error,ms,converged,budget,budget_error\n"; }

std::string bench_csv_row(const BenchRow &r)
{
    std::ostringstream out;
    out.precision(9);
    out << r.id << ',' << r.n << ',' << r.to_target.iterations << ',' << r.to_target.final_error << ','
        << r.to_target.milliseconds << ',' << (r.to_target.converged ? 1 : 0) << ',' << r.budget << ','
        << r.budget_error << '\n';
    return out.str();
}

} // namespace rectcart
