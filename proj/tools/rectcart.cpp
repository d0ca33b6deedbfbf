// rectcart: build, relax, verify and draw rectilinear duals and cartograms.
//
// Exit codes: 0 success, 2 invalid input or failed precondition/check,
// 3 relaxation budget exhausted (the best layout is still written).

#include "rectcart/experiment.hpp"
#include "rectcart/generators.hpp"
#include "rectcart/hamiltonian.hpp"
#include "rectcart/instance.hpp"
#include "rectcart/layout_io.hpp"
#include "rectcart/octo_layout.hpp"
#include "rectcart/relax.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <map>
#include <random>

using namespace rectcart;

namespace {

constexpr int exit_invalid = 2;
constexpr int exit_budget = 3;

std::uint64_t default_seed()
{
    if (const char *s = std::getenv("RECTCART_SEED")) {
        try {
            return std::stoull(s);
        } catch (const std::exception &) {
            throw InputError(std::string("RECTCART_SEED is not a number: ") + s);
        }
    }
    return 1;
}

void emit(const std::string &path, const std::string &text)
{
    if (path.empty() || path == "-")
        std::cout << text;
    else
        write_file(path, text);
}

// Instance weights in the layout's vertex order.
std::vector<double> weights_for(const LayoutFile &f, const WeightedInstance &inst)
{
    std::map<std::string, double> by_id;
    for (int v = 0; v < inst.graph.size(); ++v)
        by_id[inst.graph.id(v)] = inst.weights[static_cast<std::size_t>(v)].get_d();
    std::vector<double> w;
    for (const auto &id : f.ids) {
        auto it = by_id.find(id);
        if (it == by_id.end())
            throw InputError("layout vertex " + id + " is not in the instance");
        w.push_back(it->second);
    }
    if (static_cast<int>(w.size()) != inst.graph.size())
        throw InputError("layout and instance have different vertex counts");
    return w;
}

HamiltonianCycle cycle_of(const WeightedInstance &inst)
{
    if (inst.cycle.empty())
        throw PreconditionError("instance has no \"cycle\"; Hamiltonian modes need one");
    return HamiltonianCycle{inst.cycle};
}

LayoutFile build(const WeightedInstance &inst, std::string mode, const Rational &lambda)
{
    if (mode == "onelgged6")
        mode = "onelegged6";
    const auto &g = inst.graph;
    if (mode == "schnyder8") {
        if (g.is_maximal())
            return layout_from_octagons(schnyder_pipeline(g, lambda).layout, g.ids(), mode);
        const auto aug = augment_to_maximal(g);
        const auto p = schnyder_pipeline(aug.graph, lambda);
        return layout_from_octagons(strip_augmentation(p.layout, p.order, aug.graph.size()), g.ids(), mode);
    }
    if (mode == "hamiltonian8")
        return layout_from_hamiltonian(ham_cartogram(inst, cycle_of(inst)), g.ids(), mode);
    if (mode == "onelegged6")
        return layout_from_hamiltonian(six_sided_cartogram(inst, cycle_of(inst)), g.ids(), mode);
    if (mode == "outerplanar6")
        return layout_from_outerplanar(outerplanar_cartogram(inst), g.ids());
    throw InputError("unknown mode " + mode);
}

std::vector<int> size_range(int lo, int hi, int step)
{
    if (lo < 3 || hi < lo || step < 1)
        throw InputError("bad size range");
    std::vector<int> out;
    for (int n = lo; n <= hi; n += step)
        out.push_back(n);
    return out;
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Rectilinear duals and cartograms of plane triangulations"};
    app.require_subcommand(1);

    std::uint64_t seed = 0;
    std::string input, output = "-", instance_path, mode = "schnyder8", lambda_text = "1/2", stats_path, kind;
    double eps = 0.01, eta = 1.0, wmin = 10, wmax = 100;
    long max_iters = 1000000, budget = 0;
    int n = 10, n_min = 10, n_max = 50, n_step = 10, trials = 5;
    bool color = false;

    auto *gen = app.add_subcommand("gen", "Write a random instance");
    gen->add_option("--kind", kind, "triangulation | hamiltonian | fans | outerplanar")
        ->default_val("triangulation")
        ->check(CLI::IsMember({"triangulation", "hamiltonian", "fans", "outerplanar"}));
    gen->add_option("-n", n, "Vertex count")->check(CLI::Range(3, 10000000));
    gen->add_option("--seed", seed, "Seed (default: $RECTCART_SEED or 1)");
    gen->add_option("--wmin", wmin, "Smallest integer weight")->default_val(10);
    gen->add_option("--wmax", wmax, "Largest integer weight")->default_val(100);
    gen->add_option("-o,--output", output, "Output file (default stdout)");

    auto *bld = app.add_subcommand("build", "Construct a layout");
    bld->add_option("input", input, "Instance JSON")->required();
    bld->add_option("-m,--mode", mode, "schnyder8 | hamiltonian8 | onelegged6 | outerplanar6")
        ->check(CLI::IsMember({"schnyder8", "hamiltonian8", "onelegged6", "onelgged6", "outerplanar6"}));
    bld->add_option("--lambda", lambda_text, "Fattening width for schnyder8, 0 < lambda < 1");
    bld->add_option("-o,--output", output, "Layout JSON (default stdout)");

    auto *rlz = app.add_subcommand("realize", "Relax a schnyder8 layout towards the instance weights");
    rlz->add_option("layout", input, "Layout JSON")->required();
    rlz->add_option("--instance", instance_path, "Instance JSON with weights")->required();
    rlz->add_option("--eps", eps, "Target cartographic error")->default_val(0.01);
    rlz->add_option("--max-iters", max_iters, "Step budget")->default_val(1000000);
    rlz->add_option("--eta", eta, "Step scale")->default_val(1.0);
    rlz->add_option("--seed", seed, "Seed (recorded; the relaxation is deterministic)");
    rlz->add_option("--stats", stats_path, "Append the stats row to this CSV file");
    rlz->add_option("-o,--output", output, "Relaxed layout JSON (default stdout)");

    auto *ver = app.add_subcommand("verify", "Check contacts, side counts and holes of a layout");
    ver->add_option("layout", input, "Layout JSON")->required();
    ver->add_option("--instance", instance_path, "Instance JSON")->required();
    ver->add_option("-o,--output", output, "Report JSON (default stdout)");

    auto *rnd = app.add_subcommand("render", "Draw a layout as SVG");
    rnd->add_option("layout", input, "Layout JSON")->required();
    rnd->add_option("--instance", instance_path, "Instance JSON, for pressure colouring");
    rnd->add_flag("--color", color, "Colour regions by pressure");
    rnd->add_option("-o,--output", output, "SVG file (default stdout)");

    auto *bch = app.add_subcommand("bench", "Relaxation benchmark on random instances");
    bch->add_option("--n-min", n_min)->default_val(10);
    bch->add_option("--n-max", n_max)->default_val(50);
    bch->add_option("--n-step", n_step)->default_val(10);
    bch->add_option("--trials", trials)->default_val(5);
    bch->add_option("--wmin", wmin)->default_val(10);
    bch->add_option("--wmax", wmax)->default_val(100);
    bch->add_option("--eps", eps, "Target cartographic error")->default_val(0.01);
    bch->add_option("--budget", budget, "Fixed step budget; 0 calibrates it per size to the median steps for 5%")
        ->default_val(0);
    bch->add_option("--seed", seed, "Seed (default: $RECTCART_SEED or 1)");
    bch->add_option("-o,--output", output, "CSV file (default stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        auto seed_or_default = [&](CLI::App *cmd) { return cmd->count("--seed") ? seed : default_seed(); };

        if (*gen) {
            const std::uint64_t s = seed_or_default(gen);
            PlaneTriangulation g;
            std::vector<Vertex> cycle;
            if (kind == "triangulation") {
                g = random_triangulation(n, s);
            } else if (kind == "outerplanar") {
                g = random_outerplanar(n, s);
            } else {
                auto h = kind == "fans" ? stacked_fans(n) : random_hamiltonian(n, s);
                g = std::move(h.graph);
                cycle = h.cycle.order;
            }
            if (!(wmin > 0) || wmax < wmin)
                throw InputError("need 0 < wmin <= wmax");
            std::mt19937_64 rng(s ^ 0x9e3779b97f4a7c15ULL);
            std::uniform_int_distribution<long> d(static_cast<long>(wmin), static_cast<long>(wmax));
            std::vector<Rational> w;
            for (int v = 0; v < g.size(); ++v)
                w.emplace_back(d(rng));
            emit(output, write_instance(g, w, cycle));
            return 0;
        }
        if (*bld) {
            const Rational lambda = parse_rational(lambda_text);
            if (!(lambda > 0) || !(lambda < 1))
                throw InputError("lambda must lie strictly between 0 and 1");
            emit(output, write_layout(build(load_instance(input), mode, lambda)));
            return 0;
        }
        if (*rlz) {
            const auto layout = parse_layout(read_file(input));
            if (layout.mode != "schnyder8" && layout.mode != "relaxed")
                throw PreconditionError("realize needs a schnyder8 layout; " + layout.mode + " layouts are exact");
            const auto inst = load_instance(instance_path);
            const auto w = weights_for(layout, inst);
            double area = 0;
            for (double x : w)
                area += x;
            const double side = std::sqrt(area);
            RelaxParams params;
            params.target_error = eps;
            params.max_iterations = max_iters;
            params.eta = eta;
            params.seed = seed_or_default(rlz);
            // exact layouts start from their balanced re-spacing; relaxed ones resume as they are
            auto seed_rl = seed_layout(layout_subdivision(layout), layout.size(), side, side);
            if (layout.exact)
                seed_rl = balance_seed(seed_rl, w);
            const auto [cart, stats] = relax(seed_rl, w, params);
            emit(output, write_layout(layout_from_relaxed(cart, layout.ids)));
            const std::string row = stats_csv_row(input, layout.size(), stats);
            if (stats_path.empty()) {
                std::cerr << stats_csv_header() << row;
            } else {
                const bool fresh = [&] {
                    try {
                        return read_file(stats_path).empty();
                    } catch (const std::exception &) {
                        return true;
                    }
                }();
                std::string text = fresh ? stats_csv_header() : read_file(stats_path);
                write_file(stats_path, text + row);
            }
            return stats.converged ? 0 : exit_budget;
        }
        if (*ver) {
            const auto check = check_layout(parse_layout(read_file(input)), load_instance(instance_path));
            emit(output, check_json(check));
            return check.ok() ? 0 : exit_invalid;
        }
        if (*rnd) {
            const auto layout = parse_layout(read_file(input));
            std::vector<double> p;
            if (color) {
                if (!instance_path.empty())
                    p = pressures(layout, load_instance(instance_path));
                else if (!layout.pressure.empty())
                    p = layout.pressure;
                else
                    throw InputError("--color needs --instance or a layout with recorded pressure");
            }
            emit(output, render_svg(layout, p));
            return 0;
        }
        if (*bch) {
            const auto cases = bench_cases(size_range(n_min, n_max, n_step), trials, wmin, wmax,
                                           seed_or_default(bch));
            RelaxParams params;
            params.target_error = eps;
            // without --budget, each size gets the median step count to 5% of its own cases
            std::map<int, long> budgets;
            for (int size : size_range(n_min, n_max, n_step)) {
                std::vector<BenchCase> group;
                for (const auto &c : cases)
                    if (c.n == size)
                        group.push_back(c);
                budgets[size] = budget > 0 ? budget : calibrate_budget(group, 0.05, params);
            }
            std::string csv = bench_csv_header();
            for (const auto &c : cases)
                csv += bench_csv_row(bench_case(c, params, budgets[c.n]));
            emit(output, csv);
            return 0;
        }
    } catch (const InputError &e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_invalid;
    } catch (const PreconditionError &e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_invalid;
    } catch (const GeometryError &e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_invalid;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
