#include "fixtures.hpp"
#include "oracles.hpp"
#include "rectcart/generators.hpp"
#include "rectcart/hamiltonian.hpp"
#include "rectcart/instance.hpp"
#include "rectcart/verify.hpp"

#include <doctest.h>

#include <random>

using namespace rectcart;

namespace {

WeightedInstance weighted(const PlaneTriangulation &g, std::uint64_t seed,
                          std::optional<std::pair<Rational, Rational>> frame = std::nullopt)
{
    std::mt19937_64 rng(seed);
    std::vector<Rational> w;
    for (int v = 0; v < g.size(); ++v)
        w.emplace_back(static_cast<long>(rng() % 91 + 10), static_cast<long>(rng() % 7 + 1));
    return make_instance(g, std::move(w), frame);
}

WeightedInstance uniform(const PlaneTriangulation &g, const Rational &each,
                         std::optional<std::pair<Rational, Rational>> frame = std::nullopt)
{
    return make_instance(g, std::vector<Rational>(static_cast<std::size_t>(g.size()), each), frame);
}

// Areas by shoelace, contacts against the graph, no overlap or holes.
void check_exact(const WeightedInstance &inst, const std::vector<Polygon<Rational>> &polys, std::size_t max_sides)
{
    for (int v = 0; v < inst.graph.size(); ++v)
        CHECK(oracle::shoelace(polys[static_cast<std::size_t>(v)]) == inst.weights[static_cast<std::size_t>(v)]);
    const auto edges = inst.graph.edges();
    const auto rep = contact_graph<Rational>(polys, &edges);
    CHECK(rep.matches());
    CHECK(holes_free<Rational>(polys));
    CHECK(polygon_complexity<Rational>(polys).max <= max_sides);
}

// Smallest side of any body or leg.
Rational min_piece_size(const HamLayout<Rational> &l)
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

// Hub 5 joined to rim 0..4; rim chords (0,2), (0,3) inside the cycle
// 0..5, hub chords outside. Hub = v6: neighbour v1 on the left through the
// closing edge, v2..v4 on the right, both below v5, so it is two-legged.
HamiltonianInstance wheel_two_legged()
{
    return hamiltonian_from_chords(6, {{0, 2}, {0, 3}, {0, 4}}, {{1, 5}, {2, 5}, {3, 5}});
}

} // namespace

TEST_CASE("leg widths on K4")
{
    const auto g = fixtures::k4();
    const auto inst = uniform(g, 1, std::make_pair(Rational(2), Rational(2)));
    const HamiltonianCycle c{{0, 3, 1, 2}}; // u, c, v, w
    const auto l = ham_cartogram(inst, c);
    for (const auto &p : l.pieces)
        CHECK(p.lambda == Rational(1, 6));
    check_exact(inst, l.polygons(), 8);
    CHECK(l.pieces[0].body == Rect<Rational>{0, 0, 2, Rational(1, 2)});
}

TEST_CASE("leg sets follow the left and right graphs")
{
    const auto h = wheel_two_legged();
    const auto sets = leg_sets(split_left_right(h.graph, h.cycle));
    // v1 opens strips for v2..v6 on the left (chords and closing edge), v2 on the right
    CHECK(sets.left[0] == std::vector<int>{5, 4, 3, 2, 1});
    CHECK(sets.right[0] == std::vector<int>{1});
    CHECK(sets.right[1] == std::vector<int>{5, 2});
    CHECK(sets.left[4].empty());
}

TEST_CASE("exact areas, contacts and feature size on random Hamiltonian instances")
{
    for (int t = 0; t < 100; ++t) {
        const int n = 4 + t % 27;
        const auto h = random_hamiltonian(n, 1000 + static_cast<std::uint64_t>(t));
        const auto inst = weighted(h.graph, static_cast<std::uint64_t>(t));
        const auto l = ham_cartogram(inst, h.cycle);
        check_exact(inst, l.polygons(), 8);
        CHECK(min_piece_size(l) >= min_lambda(l));
        for (const auto &p : l.pieces)
            CHECK(p.body.width() >= 2 * p.lambda);
    }
}

TEST_CASE("random Hamiltonian generator scales")
{
    for (int n : {60, 500, 3000}) {
        const auto h = random_hamiltonian(n, static_cast<std::uint64_t>(n));
        CHECK(validate(h.graph).ok());
        CHECK(h.graph.is_maximal());
        CHECK_NOTHROW(check_cycle(h.graph, h.cycle));
        const auto l = ham_cartogram(uniform(h.graph, Rational(1)), h.cycle);
        CHECK(l.pieces.size() == static_cast<std::size_t>(n));
    }
}

TEST_CASE("stacked fans and anchored cycles of small graphs")
{
    for (int n : {3, 4, 5, 12, 40}) {
        const auto h = stacked_fans(n);
        const auto inst = weighted(h.graph, static_cast<std::uint64_t>(n));
        check_exact(inst, ham_cartogram(inst, h.cycle).polygons(), 8);
    }
    const auto g = fixtures::octahedron();
    for (const auto &c : oracle::anchored_cycles(g)) {
        const auto inst = weighted(g, 5);
        check_exact(inst, ham_cartogram(inst, c).polygons(), 8);
    }
}

TEST_CASE("wide frame gives the stated feature size")
{
    // A = 8, W = sqrt(2A) = 4, H = sqrt(A/2) = 2 -> lambda_min = w_min / (2 sqrt 2 sqrt A) = w_min / 8
    const auto h = random_hamiltonian(16, 77);
    std::vector<Rational> w(16, Rational(1, 2));
    w[3] = Rational(1, 4);
    w[7] = Rational(3, 4);
    const auto inst = make_instance(h.graph, w, std::make_pair(Rational(4), Rational(2)));
    REQUIRE(inst.scale == 1);
    const auto l = ham_cartogram(inst, h.cycle);
    CHECK(min_lambda(l) == Rational(1, 4) / 8);
    CHECK(min_piece_size(l) >= Rational(1, 32));
    check_exact(inst, l.polygons(), 8);
}

TEST_CASE("double arithmetic matches the exact layout")
{
    const auto h = random_hamiltonian(25, 3);
    const auto inst = weighted(h.graph, 3);
    const auto exact = ham_cartogram(inst, h.cycle);
    const auto approx = ham_cartogram<double>(inst, h.cycle);
    for (std::size_t v = 0; v < exact.pieces.size(); ++v) {
        CHECK(approx.pieces[v].body.y1 == doctest::Approx(exact.pieces[v].body.y1.get_d()));
        CHECK(approx.pieces[v].body.x0 == doctest::Approx(exact.pieces[v].body.x0.get_d()));
    }
}

TEST_CASE("invalid inputs")
{
    const auto g = fixtures::k4();
    const auto inst = uniform(g, 1);
    CHECK_THROWS_AS(ham_cartogram(inst, HamiltonianCycle{{0, 1, 2}}), PreconditionError);
    CHECK_THROWS_AS(ham_cartogram(inst, HamiltonianCycle{{0, 3, 3, 2}}), PreconditionError);
    // (v1, vn) = (c, v) is not an outer edge
    CHECK_THROWS_AS(ham_cartogram(inst, HamiltonianCycle{{3, 0, 2, 1}}), PreconditionError);
    const auto sq = fixtures::square_with_diagonal();
    CHECK_THROWS_AS(ham_cartogram(uniform(sq, 1), HamiltonianCycle{{0, 1, 2, 3}}), PreconditionError);
}

TEST_CASE("two-legged vertices")
{
    const auto t = fixtures::triangle();
    CHECK(two_legged_set(t, HamiltonianCycle{{0, 1, 2}}).empty());
    const auto h = wheel_two_legged();
    CHECK(two_legged_set(h.graph, h.cycle) == std::set<Vertex>{5});
    // reversing the cycle puts the hub first; nothing is two-legged then
    HamiltonianCycle rev{{5, 4, 3, 2, 1, 0}};
    CHECK(two_legged_set(h.graph, rev).empty());
}

TEST_CASE("six-sided construction")
{
    const auto h = wheel_two_legged();
    CHECK_THROWS_AS(six_sided_cartogram(uniform(h.graph, 1), h.cycle), PreconditionError);
    HamiltonianCycle rev{{5, 4, 3, 2, 1, 0}};
    const auto inst = weighted(h.graph, 9);
    check_exact(inst, six_sided_cartogram(inst, rev).polygons(), 6);

    // triangle: v3 touches v1 through a left leg, so it is an L, not a rectangle
    const auto t = uniform(fixtures::triangle(), 1);
    const auto l = six_sided_cartogram(t, HamiltonianCycle{{0, 1, 2}});
    check_exact(t, l.polygons(), 6);
    CHECK(side_count(l.polygon(0)) == 4);
    CHECK(side_count(l.polygon(1)) == 4);
    CHECK(side_count(l.polygon(2)) == 6);
}

TEST_CASE("eight sides exactly for two-legged vertices")
{
    for (int n = 4; n <= 7; ++n)
        for (const auto &base : all_triangulations(n))
            for (const auto &c : oracle::anchored_cycles(base)) {
                const auto legged = two_legged_set(base, c);
                const auto l = ham_cartogram(uniform(base, 1), c);
                for (Vertex v = 0; v < n; ++v)
                    CHECK((side_count(l.polygon(v)) == 8) == (legged.count(v) == 1));
            }
}

TEST_CASE("outer-planar doubling")
{
    SUBCASE("fan on five vertices")
    {
        const auto inst = uniform(fixtures::pentagon_fan(), 1);
        const auto o = outerplanar_cartogram(inst);
        check_exact(inst, o.polygons, 6);
    }
    SUBCASE("triangle gives stacked rectangles")
    {
        const auto inst = weighted(fixtures::triangle(), 4);
        const auto o = outerplanar_cartogram(inst);
        check_exact(inst, o.polygons, 6);
    }
    SUBCASE("doubled layout is mirror symmetric")
    {
        const auto inst = weighted(random_outerplanar(12, 5), 5);
        const auto o = outerplanar_cartogram(inst);
        const Rational axis = inst.width;
        for (const auto &poly : o.doubled.polygons()) {
            Polygon<Rational> mirror;
            for (const auto &p : poly)
                mirror.push_back({2 * axis - p.x, p.y});
            CHECK(canonicalize(mirror) == poly);
        }
    }
    SUBCASE("random outer-planar graphs")
    {
        for (int t = 0; t < 50; ++t) {
            const auto g = random_outerplanar(3 + t % 20, static_cast<std::uint64_t>(t));
            const auto inst = weighted(g, static_cast<std::uint64_t>(t) + 99);
            check_exact(inst, outerplanar_cartogram(inst).polygons, 6);
        }
    }
    CHECK_THROWS_AS(outerplanar_cartogram(uniform(fixtures::k4(), 1)), PreconditionError);
}

TEST_CASE("equivalent characterizations of one-legged cycles")
{
    SUBCASE("triangle")
    {
        const auto r = one_legged_report(fixtures::triangle(), HamiltonianCycle{{0, 1, 2}});
        CHECK(r.one_legged);
        CHECK(r.outer_edges);
        CHECK(r.two_back);
        CHECK(r.reverse_canonical);
        CHECK(r.leaf_realizer);
    }
    SUBCASE("two-legged wheel")
    {
        const auto h = wheel_two_legged();
        const auto r = one_legged_report(h.graph, h.cycle);
        CHECK_FALSE(r.one_legged);
        CHECK_FALSE(r.outer_edges);
        CHECK_FALSE(r.two_back);
        CHECK_FALSE(r.reverse_canonical);
        CHECK_FALSE(r.leaf_realizer);
    }
    SUBCASE("outer-edge predicate against a dual flood fill")
    {
        for (int n = 4; n <= 7; ++n)
            for (const auto &base : all_triangulations(n))
                for (const auto &g : with_each_outer_face(base))
                    for (const auto &c : oracle::anchored_cycles(g)) {
                        bool all = true;
                        for (int p = 1; p < n; ++p)
                            all = all && oracle::prefix_edge_outer(g, c.order, p);
                        CHECK(one_legged_report(g, c).outer_edges == all);
                    }
    }
    SUBCASE("exhaustive agreement up to eight vertices")
    {
        std::size_t cycles = 0, one_legged = 0;
        for (int n = 3; n <= 8; ++n)
            for (const auto &base : all_triangulations(n))
                for (const auto &g : with_each_outer_face(base))
                    for (const auto &c : oracle::anchored_cycles(g)) {
                        const auto r = one_legged_report(g, c);
                        CHECK(r.agree());
                        ++cycles;
                        one_legged += r.one_legged;
                    }
        CHECK(one_legged > 0);
        CHECK(one_legged < cycles);
    }
}
