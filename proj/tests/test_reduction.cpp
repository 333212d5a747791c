#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <random>
#include <sstream>

#include "kclab/errors.hpp"
#include "kclab/gridtiling.hpp"
#include "kclab/kcenter.hpp"
#include "kclab/reduction.hpp"
#include "kclab/rng.hpp"
#include "oracles.hpp"

using namespace kclab;

namespace {

GTInstance singleton_instance(int kappa, int n,
                              const std::vector<std::pair<int, int>>& pairs_row_major) {
    GTInstance inst;
    inst.kappa = kappa;
    inst.n = n;
    for (auto p : pairs_row_major) inst.sets.push_back({p});
    inst.validate();
    return inst;
}

Rational edge_length(const WeightedGraph& g, int u, int v) {
    if (u > v) std::swap(u, v);
    for (const Edge& e : g.edges())
        if (e.u == u && e.v == v) return e.length;
    throw std::logic_error("edge not found");
}

// nearest-center distance per vertex from per-center Dijkstra rows
std::vector<Rational> coverage_distances(const WeightedGraph& g, const CenterSet& centers) {
    Adjacency adj = build_adjacency(g);
    std::vector<std::optional<Rational>> best(g.vertex_count());
    for (int c : centers.ids) {
        auto row = shortest_paths(adj, c);
        for (int v = 0; v < g.vertex_count(); ++v)
            if (!best[v] || *row[v] < *best[v]) best[v] = *row[v];
    }
    std::vector<Rational> out;
    out.reserve(g.vertex_count());
    for (auto& d : best) out.push_back(*d);
    return out;
}

} // namespace

TEST_CASE("build_reduction counts for the one-element kappa=1, n=2 instance") {
    ReductionInstance inst = build_reduction(singleton_instance(1, 2, {{1, 1}}));
    CHECK(inst.graph.vertex_count() == 73); // 68-cycle + x1..x4 + y
    CHECK(inst.graph.edges().size() == 76); // 68 cycle + 4 y + 4 element edges
    CHECK(inst.k == 5);
    CHECK(inst.threshold == Rational(8));
}

TEST_CASE("k = 5 kappa^2") {
    CHECK(build_reduction(gen_gt(3, 2, 1, true, 1)).k == 45);
    CHECK(build_reduction(gen_gt(2, 2, 1, true, 1)).k == 20);
}

TEST_CASE("element edge lengths for n=2, s=(1,2)") {
    ReductionInstance inst = build_reduction(singleton_instance(1, 2, {{1, 2}}));
    const LabelMap& lm = inst.labels;
    // tau = 1, 4n^2+1 = 17
    CHECK(edge_length(inst.graph, lm.x_id(1, 1, 1), lm.cycle_id(1, 1, 1)) == Rational(23, 3));
    CHECK(edge_length(inst.graph, lm.x_id(1, 1, 2), lm.cycle_id(1, 1, 18)) == Rational(23, 3));
    CHECK(edge_length(inst.graph, lm.x_id(1, 1, 3), lm.cycle_id(1, 1, 35)) == Rational(22, 3));
    CHECK(edge_length(inst.graph, lm.x_id(1, 1, 4), lm.cycle_id(1, 1, 52)) == Rational(22, 3));
}

TEST_CASE("structural invariants of the built graph") {
    GTInstance gt = gen_gt(2, 2, 2, true, 99);
    ReductionInstance inst = build_reduction(gt);
    const LabelMap& lm = inst.labels;

    int cycle_edges = 0, y_edges = 0, element_edges = 0, path_edges = 0;
    for (const Edge& e : inst.graph.edges()) {
        const VertexRole& ru = lm.role(e.u);
        const VertexRole& rv = lm.role(e.v);
        bool u_cycle = ru.kind == VertexKind::cycle;
        bool v_cycle = rv.kind == VertexKind::cycle;
        if (u_cycle && v_cycle) {
            ++cycle_edges;
            CHECK(e.length == Rational(1));
        } else if (ru.kind == VertexKind::y || rv.kind == VertexKind::y) {
            ++y_edges;
            CHECK(e.length == Rational(9)); // 2n^2+1
        } else if (u_cycle || v_cycle) {
            ++element_edges;
            CHECK(e.length > Rational(7)); // 2n^2-1 < l < 2n^2
            CHECK(e.length < Rational(8));
        } else {
            ++path_edges;
            CHECK(e.length == Rational(1, 4)); // 1/(n+2)
        }
    }
    CHECK(cycle_edges == 4 * 68);
    CHECK(y_edges == 4 * 4);
    CHECK(element_edges == 4 * 4 * 2); // sigma = 2 per gadget
    CHECK(path_edges == 4 * 4);        // 2*kappa*(kappa-1) paths, n+2 edges each

    // Euler bound, planarity sanity
    CHECK(3 * inst.graph.vertex_count() - 6 >=
          static_cast<int>(inst.graph.edges().size()));
}

TEST_CASE("vertex and edge counts match the closed forms") {
    std::mt19937_64 rng(5);
    for (int kappa = 1; kappa <= 3; ++kappa) {
        for (int n = 2; n <= 4; ++n) {
            int set_size = rng_range(rng, 1, std::min(4, n * n));
            GTInstance gt = gen_gt(kappa, n, set_size, true, rng());
            ReductionInstance inst = build_reduction(gt);
            int expected_v = kappa * kappa * (16 * n * n + 9) + 2 * kappa * (kappa - 1) * (n + 1);
            int sigma_total = 0;
            for (const auto& cell : gt.sets) sigma_total += static_cast<int>(cell.size());
            int expected_e = kappa * kappa * (16 * n * n + 4) + 4 * kappa * kappa +
                             4 * sigma_total + 2 * kappa * (kappa - 1) * (n + 2);
            CHECK(inst.graph.vertex_count() == expected_v);
            CHECK(static_cast<int>(inst.graph.edges().size()) == expected_e);
        }
    }
}

TEST_CASE("centers_from_assignment places the five per-gadget centers") {
    ReductionInstance inst = build_reduction(singleton_instance(1, 2, {{1, 1}}));
    CenterSet centers = centers_from_assignment(inst, GTAssignment{{1}});
    const LabelMap& lm = inst.labels;
    // positions 1, 18, 35, 52 (= tau + q(4n^2+1)) plus y
    CHECK(centers.ids == std::vector<int>{lm.cycle_id(1, 1, 1), lm.cycle_id(1, 1, 18),
                                           lm.cycle_id(1, 1, 35), lm.cycle_id(1, 1, 52),
                                           lm.y_id(1, 1)});
    CHECK_THROWS_AS(centers_from_assignment(inst, GTAssignment{{2}}), IndexOutOfRangeError);
}

TEST_CASE("center sets always have 5 kappa^2 members and cost within threshold") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 4; ++trial) {
        int kappa = rng_range(rng, 1, 2);
        int n = rng_range(rng, 2, 3);
        GTInstance gt = gen_gt(kappa, n, rng_range(rng, 1, 2), true, rng());
        ReductionInstance inst = build_reduction(gt);
        auto assignment = solve_gt(gt);
        REQUIRE(assignment.has_value());
        CenterSet centers = centers_from_assignment(inst, *assignment);
        CHECK(centers.size() == 5 * kappa * kappa);

        auto dists = coverage_distances(inst.graph, centers);
        Rational worst(0);
        for (const Rational& d : dists)
            if (d > worst) worst = d;
        CHECK(worst <= inst.threshold); // forward direction bound 2n^2
    }
}

TEST_CASE("assignment round-trips through the center translation") {
    std::mt19937_64 rng(77);
    for (int trial = 0; trial < 12; ++trial) {
        int kappa = rng_range(rng, 1, 3);
        int n = rng_range(rng, 2, 3);
        GTInstance gt = gen_gt(kappa, n, rng_range(rng, 1, 3), true, rng());
        ReductionInstance inst = build_reduction(gt);
        auto assignment = solve_gt(gt);
        REQUIRE(assignment.has_value());
        auto extracted = assignment_from_centers(inst, centers_from_assignment(inst, *assignment));
        REQUIRE(extracted.ok());
        CHECK(*extracted.assignment == *assignment);
    }
}

TEST_CASE("assignment_from_centers names the violated structural fact") {
    GTInstance gt = singleton_instance(2, 2, {{1, 1}, {1, 2}, {2, 1}, {2, 2}});
    ReductionInstance inst = build_reduction(gt);
    const LabelMap& lm = inst.labels;
    GTAssignment good{{1, 1, 1, 1}};
    CenterSet baseline = centers_from_assignment(inst, good);

    SUBCASE("missing y center") {
        std::vector<int> ids;
        for (int id : baseline.ids)
            if (id != lm.y_id(1, 1)) ids.push_back(id);
        auto result = assignment_from_centers(inst, CenterSet::of(ids));
        CHECK(result.fault == StructureFault::missing_y_center);
    }
    SUBCASE("five centers on one cycle, three on another") {
        std::vector<int> ids;
        for (int id : baseline.ids)
            if (id != lm.cycle_id(2, 2, 1)) ids.push_back(id); // drop one from (2,2)
        ids.push_back(lm.cycle_id(1, 1, 9));                   // extra on (1,1)
        auto result = assignment_from_centers(inst, CenterSet::of(ids));
        CHECK(result.fault == StructureFault::cycle_center_count_mismatch);
    }
    SUBCASE("four cycle centers that are not equidistant") {
        std::vector<int> ids;
        for (int id : baseline.ids)
            if (id != lm.cycle_id(1, 1, 18)) ids.push_back(id);
        ids.push_back(lm.cycle_id(1, 1, 19));
        auto result = assignment_from_centers(inst, CenterSet::of(ids));
        CHECK(result.fault == StructureFault::non_equidistant_cycle_centers);
    }
    SUBCASE("equidistant quadruple with no matching element") {
        std::vector<int> ids;
        for (int id : baseline.ids) {
            const VertexRole& r = lm.role(id);
            if (r.kind == VertexKind::cycle && r.i == 1 && r.j == 1)
                ids.push_back(lm.cycle_id(1, 1, r.pos + 2)); // shift to tau = 3 > sigma
            else
                ids.push_back(id);
        }
        auto result = assignment_from_centers(inst, CenterSet::of(ids));
        CHECK(result.fault == StructureFault::no_matching_element);
    }
    SUBCASE("stray non-cycle center") {
        // swapping a cycle center for a path vertex trips the count check
        std::vector<int> tampered = baseline.ids;
        for (int& id : tampered)
            if (id == lm.cycle_id(1, 1, 1)) id = lm.path_p_interior(1, 1, 1);
        auto swapped = assignment_from_centers(inst, CenterSet::of(tampered));
        CHECK(swapped.fault == StructureFault::cycle_center_count_mismatch);

        // intact structure plus one extra vertex is a stray
        std::vector<int> extra = baseline.ids;
        extra.push_back(lm.path_p_interior(1, 1, 1));
        auto stray = assignment_from_centers(inst, CenterSet::of(extra));
        CHECK(stray.fault == StructureFault::stray_center);
    }
    SUBCASE("valid baseline extracts cleanly") {
        auto result = assignment_from_centers(inst, baseline);
        REQUIRE(result.ok());
        CHECK(*result.assignment == good);
    }
}

TEST_CASE("extraction is purely structural; constraint checking stays with the caller") {
    // a structurally perfect center set for a constraint-violating assignment
    GTInstance gt = singleton_instance(2, 2, {{1, 2}, {1, 1}, {2, 1}, {2, 1}});
    ReductionInstance inst = build_reduction(gt);
    GTAssignment violating{{1, 1, 1, 1}};
    CHECK_FALSE(check_gt_assignment(gt, violating));
    auto extracted = assignment_from_centers(inst, centers_from_assignment(inst, violating));
    REQUIRE(extracted.ok());
    CHECK(*extracted.assignment == violating);
    CHECK_FALSE(check_gt_assignment(gt, *extracted.assignment));
}

TEST_CASE("metric_of agrees with Floyd-Warshall on a full gadget graph") {
    ReductionInstance inst = build_reduction(singleton_instance(1, 2, {{2, 1}}));
    Metric m = metric_of(inst.graph);
    auto fw = oracles::floyd_warshall(inst.graph);
    for (int u = 0; u < inst.graph.vertex_count(); ++u)
        for (int v = 0; v < inst.graph.vertex_count(); ++v)
            CHECK(*fw[u][v] == m.dist(u, v));
}

TEST_CASE("violated adjacency leaves an uncovered path vertex at radius 2n^2") {
    // b = 2 in (1,1) against b' = 1 in (1,2): the P_{1,1} gap opens
    GTInstance gt = singleton_instance(2, 2, {{1, 2}, {1, 1}, {2, 1}, {2, 1}});
    ReductionInstance inst = build_reduction(gt);
    const LabelMap& lm = inst.labels;
    GTAssignment picks{{1, 1, 1, 1}};
    CHECK_FALSE(check_gt_assignment(gt, picks));
    CenterSet centers = centers_from_assignment(inst, picks);

    // the two centers facing P_{1,1} sit >= 4n^2 + 1/(n+1) apart
    Metric metric = metric_of(inst.graph);
    int v_left = lm.cycle_id(1, 1, 1 + 17);  // tau + 4n^2+1
    int v_right = lm.cycle_id(1, 2, 1 + 51); // tau + 12n^2+3
    CHECK(metric.dist(v_left, v_right) >= Rational(16) + Rational(1, 3));

    auto dists = coverage_distances(inst.graph, centers);
    bool uncovered_path_vertex = false;
    for (int t = 1; t <= 3; ++t)
        if (dists[lm.path_p_interior(1, 1, t)] > inst.threshold) uncovered_path_vertex = true;
    CHECK(uncovered_path_vertex);
}

TEST_CASE("label sidecar round-trips and reconstructs the layout") {
    ReductionInstance inst = build_reduction(gen_gt(2, 3, 2, true, 8));
    std::ostringstream first;
    write_labels(inst.labels, first);
    std::istringstream in(first.str());
    LabelMap parsed = read_labels(in);
    CHECK(parsed.kappa() == 2);
    CHECK(parsed.n() == 3);
    CHECK(parsed.vertex_count() == inst.labels.vertex_count());
    std::ostringstream second;
    write_labels(parsed, second);
    CHECK(second.str() == first.str());

    std::istringstream bad("role 0 cycle 1 1 1\nrole 1 cycle 1 1 3\n");
    CHECK_THROWS_AS(read_labels(bad), FormatError);
}
