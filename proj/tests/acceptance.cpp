// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include "oracles.hpp"
#include "rectcart/experiment.hpp"
#include "rectcart/generators.hpp"
#include "rectcart/hamiltonian.hpp"
#include "rectcart/instance.hpp"
#include "rectcart/octo_layout.hpp"
#include "rectcart/orders.hpp"
#include "rectcart/relax.hpp"
#include "rectcart/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>

using namespace rectcart;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

// id -> printed line; printed in order at the end
std::map<int, std::pair<bool, std::string>> results;

void report(int id, const std::string &name, bool ok, const std::string &detail)
{
    std::ostringstream line;
    line << (ok ? "PASS" : "FAIL") << "  criterion " << id << " (" << name << "): " << detail;
    std::cerr << line.str() << std::endl; // progress
    results[id] = {ok, line.str()};
}

// Runs one criterion; an exception counts as a failure with its message.
void criterion(int id, const std::string &name, const std::function<std::pair<bool, std::string>()> &body)
{
    try {
        const auto [ok, detail] = body();
        report(id, name, ok, detail);
    } catch (const std::exception &e) {
        report(id, name, false, std::string("exception: ") + e.what());
    }
}

template <class... Args>
std::string fmt(const char *f, Args... args)
{
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

bool same_layout(const OctagonLayout &a, const OctagonLayout &b)
{
    if (!(a.bbox == b.bbox) || a.polygons != b.polygons || a.rects.size() != b.rects.size())
        return false;
    for (std::size_t v = 0; v < a.rects.size(); ++v)
        if (a.rects[v].H != b.rects[v].H || a.rects[v].B != b.rects[v].B || a.rects[v].L != b.rects[v].L ||
            a.rects[v].R != b.rects[v].R)
            return false;
    return true;
}

template <class T>
std::size_t max_sides(const std::vector<Polygon<T>> &polys)
{
    return polygon_complexity(std::span<const Polygon<T>>(polys)).max;
}

template <class T>
bool contacts_exact(const PlaneTriangulation &g, const std::vector<Polygon<T>> &polys)
{
    const auto edges = g.edges();
    return contact_graph(std::span<const Polygon<T>>(polys), &edges).matches();
}

bool areas_exact(const WeightedInstance &inst, const std::vector<Polygon<Rational>> &polys)
{
    for (std::size_t v = 0; v < polys.size(); ++v)
        if (oracle::shoelace(polys[v]) != inst.weights[v])
            return false;
    return true;
}

Rational min_piece(const HamLayout<Rational> &l)
{
    Rational m = l.width;
    auto take = [&](const Rect<Rational> &r) { m = std::min({m, r.width(), r.height()}); };
    for (const auto &p : l.pieces) {
        take(p.body);
        if (p.left_leg)
            take(*p.left_leg);
        if (p.right_leg)
            take(*p.right_leg);
    }
    return m;
}

Rational min_lambda(const HamLayout<Rational> &l)
{
    Rational m = l.pieces.front().lambda;
    for (const auto &p : l.pieces)
        m = std::min(m, p.lambda);
    return m;
}

WeightedInstance random_weights(const PlaneTriangulation &g, std::mt19937_64 &rng)
{
    std::uniform_int_distribution<long> num(10, 100), den(1, 7);
    std::vector<Rational> w;
    for (int v = 0; v < g.size(); ++v)
        w.emplace_back(num(rng), den(rng));
    return make_instance(g, std::move(w));
}

// Criteria 1-3 share the instances.
void schnyder_criteria()
{
    std::mt19937_64 rng(20240601);
    std::uniform_int_distribution<int> size(10, 50);
    std::vector<PlaneTriangulation> graphs;
    for (int i = 0; i < 200; ++i)
        graphs.push_back(random_triangulation(size(rng), rng()));

    criterion(1, "at most 8 sides, hole-free, exact contacts", [&] {
        const auto t0 = Clock::now();
        std::size_t worst = 0;
        int bad = 0;
        for (const auto &g : graphs) {
            const auto p = schnyder_pipeline(g);
            const auto &polys = p.layout.polygons;
            worst = std::max(worst, max_sides(polys));
            bad += !(max_sides(polys) <= 8 && holes_free(std::span<const Polygon<Rational>>(polys)) &&
                     contacts_exact(g, polys));
        }
        const double s = seconds_since(t0);
        return std::pair{bad == 0 && s < 10,
                         fmt("200 instances, n in [10,50], %d failing, max sides %zu, %.2f s (limit 10 s)", bad, worst, s)};
    });

    criterion(2, "area-universal subdivisions", [&] {
        int bad = 0;
        for (const auto &g : graphs)
            bad += !is_area_universal(subdivide(schnyder_pipeline(g).layout));
        return std::pair{bad == 0, fmt("%d of 200 subdivisions with a two-sided maximal segment", bad)};
    });

    criterion(3, "fatten-and-fill equals direct octagons", [&] {
        int bad = 0;
        for (const auto &g : graphs) {
            const auto order = canonical_order(g);
            const auto s = realizer_from_order(g, order);
            const auto pi = topo_pi(g, s, order);
            for (const Rational lambda : {Rational(1, 2), Rational(1, 3)})
                bad += !same_layout(fatten_and_fill(t_contacts(g, order, s, pi), lambda),
                                    octagons_direct(g, order, s, pi, lambda));
        }
        return std::pair{bad == 0, fmt("%d mismatches over 200 instances x lambda in {1/2, 1/3}", bad)};
    });
}

// Criteria 4, 5 (relaxed part) and 10 come from one pass over the relaxation
// instances. Every step is checked for area conservation; combinatorial
// equivalence with the seed is checked every `equiv_every` steps and on the
// final layout.
struct RelaxRun {
    RelaxStats stats;
    std::vector<double> trajectory; // error after each step
    long first_below_5 = -1;
    bool conserved = true, equivalent = true, feature_ok = true, contacts_ok = true;
    long equiv_checks = 0;
    double feature = 0, feature_bound = 0;
};

constexpr long equiv_every = 50;

void relaxation_criteria()
{
    const auto cases = bench_cases({10, 20, 30, 40, 50}, 25, 10, 100, 20240602);
    std::vector<RelaxRun> runs;
    double relax_seconds = 0, check_seconds = 0;
    for (const auto &c : cases) {
        RelaxRun run;
        const auto seed = bench_seed(c);
        const auto seed_polys = seed.polygons();
        const double total = seed.width * seed.height;
        long step = 0;
        const auto t0 = Clock::now();
        double in_checks = 0;
        auto [out, st] = relax(seed, c.weights, {}, [&](const Relaxer &r) {
            const auto c0 = Clock::now();
            ++step;
            const double e = r.error();
            run.trajectory.push_back(e);
            if (run.first_below_5 < 0 && e < 0.05)
                run.first_below_5 = step;
            double a = 0;
            for (double x : r.layout().vertex_areas())
                a += x;
            run.conserved = run.conserved && std::abs(a - total) <= 1e-9 * total;
            if (step % equiv_every == 0) {
                const auto polys = r.layout().polygons();
                run.equivalent = run.equivalent && combinatorial_equiv(std::span<const Polygon<double>>(seed_polys),
                                                                       std::span<const Polygon<double>>(polys));
                ++run.equiv_checks;
            }
            in_checks += seconds_since(c0);
        });
        const double wall = seconds_since(t0);
        relax_seconds += wall - in_checks;
        check_seconds += in_checks;
        run.stats = st;
        if (run.first_below_5 < 0 && st.iterations == 0 && st.final_error < 0.05)
            run.first_below_5 = 0;
        run.equivalent = run.equivalent && combinatorial_equiv(std::span<const Polygon<double>>(seed_polys),
                                                               std::span<const Polygon<double>>(out.polygons));
        ++run.equiv_checks;
        run.contacts_ok = contacts_exact(c.graph, out.polygons) && max_sides(out.polygons) <= 8;
        double wmin = c.weights[0], area = 0;
        for (double w : c.weights) {
            wmin = std::min(wmin, w);
            area += w;
        }
        run.feature = min_feature_size(out.layout, split_weights(c.weights, out.layout));
        run.feature_bound = 0.9 * wmin / (2 * std::sqrt(area));
        run.feature_ok = run.feature >= run.feature_bound;
        runs.push_back(std::move(run));
    }

    criterion(4, "relaxation reaches 1% and calibrated budget", [&] {
        int converged = 0;
        long worst_steps = 0;
        for (const auto &r : runs) {
            converged += r.stats.converged && r.contacts_ok;
            worst_steps = std::max(worst_steps, r.stats.iterations);
        }
        // A run capped at `budget` steps is the prefix of the full run.
        auto error_at = [](const RelaxRun &r, long budget) {
            if (budget == 0)
                return r.trajectory.empty() ? r.stats.final_error : r.trajectory.front();
            if (budget <= static_cast<long>(r.trajectory.size()))
                return r.trajectory[static_cast<std::size_t>(budget - 1)];
            return r.stats.final_error;
        };
        auto steps_to_5 = [](const RelaxRun &r) { return r.first_below_5 < 0 ? r.stats.iterations : r.first_below_5; };
        auto median_budget = [&](int n) {
            std::vector<long> to5;
            for (std::size_t i = 0; i < runs.size(); ++i)
                if (n == 0 || cases[i].n == n)
                    to5.push_back(steps_to_5(runs[i]));
            std::sort(to5.begin(), to5.end());
            return to5[to5.size() / 2];
        };
        // Budget calibrated per size, one per sample point of 25 graphs.
        int within = 0;
        std::string budgets;
        for (int n : {10, 20, 30, 40, 50}) {
            const long b = median_budget(n);
            budgets += (budgets.empty() ? "" : "/") + std::to_string(b);
            for (std::size_t i = 0; i < runs.size(); ++i)
                if (cases[i].n == n)
                    within += error_at(runs[i], b) < 0.10;
        }
        // For reference: a single budget across all sizes.
        const long global = median_budget(0);
        int global_within = 0;
        for (const auto &r : runs)
            global_within += error_at(r, global) < 0.10;
        const int n = static_cast<int>(runs.size());
        const bool ok = converged == n && within * 10 >= 9 * n && relax_seconds < 60;
        return std::pair{ok, fmt("%d/%d below 1%% (max %ld steps, relaxation %.1f s of 60 s); budget = median steps to "
                                 "5%% per n (%s): %d/%d below 10%% (need 90%%) [one budget for all n, %ld steps: %d/%d]",
                                 converged, n, worst_steps, relax_seconds, budgets.c_str(), within, n, global,
                                 global_within, n)};
    });

    criterion(10, "relaxation keeps the layout", [&] {
        int conserved = 0, equivalent = 0;
        long checks = 0, steps = 0;
        for (const auto &r : runs) {
            conserved += r.conserved;
            equivalent += r.equivalent;
            checks += r.equiv_checks;
            steps += r.stats.iterations;
        }
        const int n = static_cast<int>(runs.size());
        return std::pair{conserved == n && equivalent == n,
                         fmt("%ld steps: area conserved to 1e-9 A on every step in %d/%d runs; combinatorially "
                             "equivalent at %ld sampled layouts (every %ld steps and final) in %d/%d runs; checks %.1f s",
                             steps, conserved, n, checks, equiv_every, equivalent, n, check_seconds)};
    });

    criterion(5, "feature size", [&] {
        int relaxed_ok = 0;
        double worst = 1e300;
        for (const auto &r : runs) {
            relaxed_ok += r.feature_ok;
            worst = std::min(worst, r.feature / r.feature_bound);
        }
        // exact Hamiltonian construction on random cycles, sizes 4..60
        std::mt19937_64 rng(20240605);
        int ham_ok = 0;
        const int ham_total = 100;
        for (int i = 0; i < ham_total; ++i) {
            const auto h = random_hamiltonian(4 + i % 57, rng());
            const auto l = ham_cartogram(random_weights(h.graph, rng), h.cycle);
            ham_ok += min_piece(l) >= min_lambda(l);
        }
        const int n = static_cast<int>(runs.size());
        return std::pair{relaxed_ok == n && ham_ok == ham_total,
                         fmt("relaxed: %d/%d at or above 0.9 w_min/(2 max(W,H)) (worst ratio %.2f); Hamiltonian: "
                             "%d/%d with min piece >= min lambda exactly",
                             relaxed_ok, n, worst, ham_ok, ham_total)};
    });
}

void hamiltonian_criteria()
{
    criterion(6, "Hamiltonian cartograms exact and linear", [&] {
        std::mt19937_64 rng(20240606);
        std::vector<std::pair<PlaneTriangulation, HamiltonianCycle>> inst;
        // cycles found by search on random triangulations, n <= 12
        std::uniform_int_distribution<int> small(4, 12);
        while (inst.size() < 70) {
            const auto g = random_triangulation(small(rng), rng());
            for (auto c : find_hamiltonian_cycles(g, 16))
                if (anchor_cycle_on_outer_face(g, c)) {
                    inst.emplace_back(g, c);
                    break;
                }
        }
        // larger families
        for (int i = 0; i < 20; ++i) {
            auto h = random_hamiltonian(20 + 9 * i, rng());
            inst.emplace_back(std::move(h.graph), std::move(h.cycle));
        }
        for (int n : {13, 16, 25, 40, 64, 100, 150, 200, 300, 400}) {
            auto h = stacked_fans(n);
            inst.emplace_back(std::move(h.graph), std::move(h.cycle));
        }
        int bad = 0;
        std::size_t worst = 0;
        for (const auto &[g, c] : inst) {
            const auto w = random_weights(g, rng);
            const auto polys = ham_cartogram(w, c).polygons();
            worst = std::max(worst, max_sides(polys));
            bad += !(areas_exact(w, polys) && max_sides(polys) <= 8 && contacts_exact(g, polys) &&
                     holes_free(std::span<const Polygon<Rational>>(polys)));
        }

        // scaling on stacked fans, floating point; sizes interleaved, best of 15
        // rounds so that one noisy sample cannot decide the ratio
        const std::vector<int> sizes{10000, 20000, 40000};
        std::vector<HamiltonianInstance> fans;
        std::vector<WeightedInstance> unit;
        for (int n : sizes) {
            fans.push_back(stacked_fans(n));
            unit.push_back(make_instance(fans.back().graph,
                                         std::vector<Rational>(static_cast<std::size_t>(n), Rational(1))));
        }
        std::vector<double> times(sizes.size(), 1e300);
        for (int round = 0; round < 15; ++round)
            for (std::size_t k = 0; k < sizes.size(); ++k) {
                const auto t0 = Clock::now();
                const auto l = ham_cartogram<double>(unit[k], fans[k].cycle);
                times[k] = std::min(times[k], seconds_since(t0));
                if (l.pieces.size() != static_cast<std::size_t>(sizes[k]))
                    ++bad;
            }
        const double r1 = times[1] / times[0], r2 = times[2] / times[1];
        return std::pair{bad == 0 && r1 <= 2.5 && r2 <= 2.5,
                         fmt("%zu instances (70 searched cycles n<=12, 30 generated n<=400), %d failing, max sides "
                             "%zu; stacked fans 1e4/2e4/4e4: %.1f/%.1f/%.1f ms, ratios %.2f %.2f (limit 2.5)",
                             inst.size(), bad, worst, times[0] * 1e3, times[1] * 1e3, times[2] * 1e3, r1, r2)};
    });
}

// Criteria 7 and 8 share the exhaustive cycle sweep.
void sweep_criteria()
{
    std::size_t cycles = 0, disagree = 0, one_legged = 0, six_bad = 0, worst_six = 0;
    const auto t0 = Clock::now();
    for (int n = 3; n <= 9; ++n)
        for (const auto &base : all_triangulations(n))
            for (const auto &g : with_each_outer_face(base))
                for (const auto &c : oracle::anchored_cycles(g)) {
                    ++cycles;
                    const auto r = one_legged_report(g, c);
                    disagree += !r.agree();
                    if (!r.one_legged)
                        continue;
                    ++one_legged;
                    const auto inst =
                        make_instance(g, std::vector<Rational>(static_cast<std::size_t>(n), Rational(1)));
                    const auto polys = six_sided_cartogram(inst, c).polygons();
                    worst_six = std::max(worst_six, max_sides(polys));
                    six_bad += !(max_sides(polys) <= 6 && areas_exact(inst, polys) && contacts_exact(g, polys));
                }
    const double sweep_s = seconds_since(t0);

    criterion(7, "six-sided constructions", [&] {
        std::mt19937_64 rng(20240607);
        std::size_t worst = 0;
        int bad = 0;
        for (int i = 0; i < 50; ++i) {
            const auto g = random_outerplanar(3 + i, rng());
            const auto inst = random_weights(g, rng);
            const auto polys = outerplanar_cartogram(inst).polygons;
            worst = std::max(worst, max_sides(polys));
            bad += !(max_sides(polys) <= 6 && areas_exact(inst, polys) && contacts_exact(g, polys));
        }
        return std::pair{bad == 0 && six_bad == 0 && one_legged > 0,
                         fmt("outer-planar: 50 instances n in [3,52], %d failing, max sides %zu; one-legged cycles "
                             "n<=9: %zu, %zu failing, max sides %zu",
                             bad, worst, one_legged, six_bad, worst_six)};
    });

    criterion(8, "five one-legged characterisations agree", [&] {
        return std::pair{disagree == 0 && cycles > 0,
                         fmt("%zu anchored Hamiltonian cycles of all maximal plane graphs n<=9 (every outer face), "
                             "%zu disagreements, %zu one-legged, %.1f s",
                             cycles, disagree, one_legged, sweep_s)};
    });
}

void round_trip_criterion()
{
    criterion(9, "realizer/order round trip", [&] {
        const auto t0 = Clock::now();
        std::size_t orders = 0, bad = 0;
        for (int n = 3; n <= 8; ++n)
            for (const auto &base : all_triangulations(n))
                for (const auto &face : base.faces())
                    for (int rot = 0; rot < 3; ++rot) {
                        std::vector<Vertex> outer(face.begin(), face.end());
                        std::rotate(outer.begin(), outer.begin() + rot, outer.end());
                        const auto g = base.with_outer(outer);
                        for (const auto &seq : oracle::all_canonical_orders(g)) {
                            ++orders;
                            const auto s = realizer_from_order(g, make_order(seq));
                            if (!verify_realizer(g, s)) {
                                ++bad;
                                continue;
                            }
                            bad += !(realizer_from_order(g, order_from_realizer(g, s)) == s);
                        }
                    }
        return std::pair{bad == 0 && orders > 0,
                         fmt("%zu canonical orders over all triangulations n<=8, every outer face and rotation: "
                             "%zu failing, %.1f s",
                             orders, bad, seconds_since(t0))};
    });
}

} // namespace

int main()
{
    schnyder_criteria();
    relaxation_criteria();
    hamiltonian_criteria();
    sweep_criteria();
    round_trip_criterion();
    int failures = 0;
    for (const auto &[id, r] : results) {
        std::cout << r.second << '\n';
        failures += !r.first;
    }
    std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << std::endl;
    return failures == 0 ? 0 : 1;
}
