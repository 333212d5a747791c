#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "kclab/errors.hpp"
#include "kclab/kcenter.hpp"
#include "kclab/reduction.hpp"
#include "kclab/rng.hpp"
#include "oracles.hpp"

using namespace kclab;

namespace {

Metric line_metric(int n) {
    std::vector<std::pair<Rational, Rational>> pts;
    for (int t = 0; t < n; ++t) pts.emplace_back(Rational(t), Rational(0));
    return oracles::l1_metric(pts);
}

Metric uniform_metric(int n) {
    Metric m(n);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) m.set_dist(u, v, Rational(1));
    return m;
}

Metric cycle_metric(int n) {
    WeightedGraph g(n);
    for (int v = 0; v < n; ++v) g.add_edge(v, (v + 1) % n, Rational(1));
    return metric_of(g);
}

bool net_laws_hold(const Metric& m, const Net& net) {
    return validate_net(m, net).empty();
}

} // namespace

TEST_CASE("cost evaluates the exact max-min distance") {
    Metric line = line_metric(4);
    CHECK(cost(line, CenterSet::of({0, 1, 2, 3})) == Rational(0));
    CHECK(cost(line, CenterSet::of({1})) == Rational(2));
    CHECK(cost(line, CenterSet::of({0, 3})) == Rational(1));
    CHECK_THROWS_AS(cost(line, CenterSet{}), EmptyCenterSetError);
    CHECK_THROWS_AS(CenterSet::of({1, 1}), InvalidInstanceError);
}

TEST_CASE("decide_cover on the 20-cycle (n=1 gadget cycle)") {
    Metric m = cycle_metric(20);

    auto sat = decide_cover(m, 4, Rational(2));
    REQUIRE(sat.has_value());
    CHECK(sat->ids == std::vector<int>{0, 5, 10, 15}); // equidistant, 5 vertices per ball
    CHECK(cost(m, *sat) <= Rational(2));
    CHECK(oracles::brute_force_coverable(m, 4, Rational(2)));

    CHECK_FALSE(decide_cover(m, 4, Rational(1)).has_value()); // 4 balls x 3 vertices < 20
    CHECK_FALSE(oracles::brute_force_coverable(m, 4, Rational(1)));

    auto all = decide_cover(m, 20, Rational(0));
    REQUIRE(all.has_value());
    CHECK(all->size() == 20);
}

TEST_CASE("decide_cover matches brute force on random small metrics") {
    std::mt19937_64 rng(2025);
    for (int trial = 0; trial < 40; ++trial) {
        Metric m = trial % 2 == 0
                       ? oracles::l1_metric(oracles::random_points(rng, rng_range(rng, 2, 10), 8))
                       : metric_of(oracles::random_connected_graph(rng, rng_range(rng, 2, 10),
                                                                   rng_range(rng, 0, 6)));
        int k = rng_range(rng, 1, 4);
        auto radii = candidate_radii(m);
        // probe a few radii across the range, including the extremes
        for (std::size_t pick : {std::size_t(0), radii.size() / 3, radii.size() - 1}) {
            const Rational& r = radii[pick];
            bool brute = oracles::brute_force_coverable(m, k, r);
            auto mine = decide_cover(m, k, r);
            CHECK(mine.has_value() == brute);
            if (mine) CHECK(cost(m, *mine) <= r);
        }
    }
}

TEST_CASE("solve_exact finds the optimum") {
    CHECK(solve_exact(line_metric(4), 2).cost == Rational(1));
    CHECK(solve_exact(line_metric(4), 2).status == SolveStatus::optimal);
    CHECK(solve_exact(line_metric(4), 7).cost == Rational(0)); // k >= |V|

    std::mt19937_64 rng(321);
    for (int trial = 0; trial < 25; ++trial) {
        Metric m = oracles::l1_metric(oracles::random_points(rng, rng_range(rng, 2, 12), 9));
        int k = rng_range(rng, 1, 4);
        SolveOutcome outcome = solve_exact(m, k);
        CHECK(outcome.cost == oracles::brute_force_kcenter(m, k));
        CHECK(cost(m, outcome.centers) == outcome.cost);
        CHECK(outcome.centers.size() <= k);
    }
    CHECK_THROWS_AS(solve_exact(line_metric(3), 0), InfeasibleParamsError);
}

TEST_CASE("solve_exact on a planted reduction instance reaches the 2n^2 witness") {
    GTInstance gt = gen_gt(2, 2, 2, true, 123);
    ReductionInstance inst = build_reduction(gt);
    REQUIRE(solve_gt(gt).has_value());
    Metric m = metric_of(inst.graph);
    SolveOutcome outcome = solve_exact(m, inst.k);
    CHECK(outcome.cost <= inst.threshold); // the forward direction provides the witness
    CHECK(outcome.centers.size() <= 20);
    // the optimal center set carries the full backward-direction structure
    auto extracted = assignment_from_centers(inst, outcome.centers);
    CHECK(extracted.ok());
}

TEST_CASE("farthest_first trace and guarantee") {
    Metric line = line_metric(4);
    CenterSet greedy = farthest_first(line, 2);
    CHECK(greedy.ids == std::vector<int>{0, 3}); // picks 0 then the farthest point
    CHECK(cost(line, greedy) == Rational(1));

    Metric uniform = uniform_metric(6);
    for (int k = 1; k <= 5; ++k) CHECK(cost(uniform, farthest_first(uniform, k)) == Rational(1));
    CHECK(cost(uniform, farthest_first(uniform, 6)) == Rational(0)); // k = |V|

    std::mt19937_64 rng(55);
    for (int trial = 0; trial < 25; ++trial) {
        Metric m = oracles::l1_metric(oracles::random_points(rng, rng_range(rng, 2, 14), 10));
        int k = rng_range(rng, 1, 4);
        Rational greedy_cost = cost(m, farthest_first(m, k));
        Rational best = oracles::brute_force_kcenter(m, k);
        CHECK(greedy_cost <= best + best); // classical 2-approximation
    }
}

TEST_CASE("greedy_net scan order and laws") {
    Metric line = line_metric(4);
    Net net = greedy_net(line, Rational(1));
    CHECK(net.points == std::vector<int>{0, 2});
    CHECK(net_laws_hold(line, net));

    Net all = greedy_net(line, Rational(1, 2)); // delta below the min distance
    CHECK(all.points == std::vector<int>{0, 1, 2, 3});

    Net single = greedy_net(line_metric(1), Rational(100));
    CHECK(single.points == std::vector<int>{0});

    CHECK_THROWS_AS(greedy_net(line, Rational(-1)), InvalidScaleError);

    std::mt19937_64 rng(91);
    for (int trial = 0; trial < 30; ++trial) {
        Metric m = oracles::l1_metric(oracles::random_points(rng, rng_range(rng, 1, 15), 9));
        Rational delta(rng_range(rng, 0, 12), rng_range(rng, 1, 3));
        CHECK(net_laws_hold(m, greedy_net(m, delta)));
    }
}

TEST_CASE("epas_doubling meets the (1+epsilon) guarantee") {
    Metric line = line_metric(4);
    SolveOutcome half = epas_doubling(line, 2, Rational(1, 2));
    CHECK(half.cost <= Rational(3, 2)); // (1+1/2) * rho_star

    SolveOutcome tight = epas_doubling(line, 2, Rational(1, 100));
    CHECK(tight.cost == Rational(1)); // net degenerates to every point

    SolveOutcome trivial = epas_doubling(line_metric(1), 1, Rational(1, 2));
    CHECK(trivial.cost == Rational(0));

    std::mt19937_64 rng(1212);
    for (int trial = 0; trial < 20; ++trial) {
        Metric m = oracles::l1_metric(oracles::random_points(rng, rng_range(rng, 2, 12), 8));
        int k = rng_range(rng, 1, 3);
        Rational best = oracles::brute_force_kcenter(m, k);
        for (const Rational& eps : {Rational(1, 10), Rational(1, 2), Rational(1)}) {
            int nets_seen = 0;
            EpasOptions options;
            options.net_observer = [&](const Net& net) {
                ++nets_seen;
                CHECK(net_laws_hold(m, net));
            };
            SolveOutcome outcome = epas_doubling(m, k, eps, options);
            CHECK(outcome.cost <= (Rational(1) + eps) * best);
            if (m.point_count() > k) CHECK(nets_seen > 0);
        }
    }

    EpasOptions tiny_cap;
    tiny_cap.net_cap = 2;
    CHECK_THROWS_AS(epas_doubling(line, 1, Rational(1, 100), tiny_cap), BudgetExceededError);
    CHECK_THROWS_AS(epas_doubling(line, 2, Rational(0)), InfeasibleParamsError);
}

TEST_CASE("solvers are deterministic across repeated runs") {
    std::mt19937_64 rng(8080);
    Metric m = oracles::l1_metric(oracles::random_points(rng, 14, 9));
    SolveOutcome a = solve_exact(m, 3);
    SolveOutcome b = solve_exact(m, 3);
    CHECK(a.centers == b.centers);
    CHECK(a.cost == b.cost);
    CHECK(farthest_first(m, 3) == farthest_first(m, 3));
    CHECK(epas_doubling(m, 3, Rational(1, 2)).centers ==
          epas_doubling(m, 3, Rational(1, 2)).centers);
    auto c1 = decide_cover(m, 3, a.cost);
    auto c2 = decide_cover(m, 3, a.cost);
    REQUIRE(c1.has_value());
    CHECK(c1->ids == c2->ids);
}

TEST_CASE("candidate radii are the distinct distances plus zero") {
    Metric line = line_metric(4);
    auto radii = candidate_radii(line);
    CHECK(radii == std::vector<Rational>{Rational(0), Rational(1), Rational(2), Rational(3)});
}
