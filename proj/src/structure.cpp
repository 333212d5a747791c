#include "kclab/structure.hpp"

#include <algorithm>

#include "kclab/errors.hpp"
#include "kclab/setcover.hpp"

namespace kclab {

int PathDecomposition::width() const {
    int max_bag = 0;
    for (const auto& bag : bags) max_bag = std::max(max_bag, static_cast<int>(bag.size()));
    return max_bag - 1;
}

namespace {

std::vector<int> sorted_unique(std::vector<int> ids) {
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    return ids;
}

} // namespace

PathDecomposition build_path_decomposition(const LabelMap& lm) {
    const int kappa = lm.kappa();
    const int n = lm.n();
    const int cyc = lm.cycle_length();

    // K_{i,j} = {y,x1,x3} + x2 of rows 1..i + x4 of rows i..kappa (column j)
    auto base_bag = [&](int i, int j) {
        std::vector<int> bag{lm.y_id(i, j), lm.x_id(i, j, 1), lm.x_id(i, j, 3)};
        for (int r = 1; r <= i; ++r) bag.push_back(lm.x_id(r, j, 2));
        for (int r = i; r <= kappa; ++r) bag.push_back(lm.x_id(r, j, 4));
        return bag;
    };
    // K'_{i,j} = x2 of rows 1..i (column j) + x4 of rows i..kappa (column j+1)
    auto prime_bag = [&](int i, int j) {
        std::vector<int> bag;
        for (int r = 1; r <= i; ++r) bag.push_back(lm.x_id(r, j, 2));
        for (int r = i; r <= kappa; ++r) bag.push_back(lm.x_id(r, j + 1, 4));
        return bag;
    };

    PathDecomposition pd;
    auto push = [&](std::vector<int> bag) { pd.bags.push_back(sorted_unique(std::move(bag))); };

    for (int j = 1; j <= kappa; ++j) {
        for (int i = 1; i <= kappa; ++i) {
            std::vector<int> base = base_bag(i, j);
            push(base);
            for (int tau = 1; tau <= cyc - 1; ++tau) {
                std::vector<int> bag = base;
                bag.push_back(lm.cycle_id(i, j, 1));
                bag.push_back(lm.cycle_id(i, j, tau));
                bag.push_back(lm.cycle_id(i, j, tau + 1));
                push(std::move(bag));
            }
            if (i < kappa) {
                for (int tau = 1; tau <= n + 2; ++tau) {
                    std::vector<int> bag = base;
                    bag.push_back(lm.path_pp_vertex(i, j, tau - 1));
                    bag.push_back(lm.path_pp_vertex(i, j, tau));
                    push(std::move(bag));
                }
            } else if (j < kappa) {
                // walk back up the column covering the P paths
                for (int r = kappa; r >= 1; --r) {
                    std::vector<int> prime = prime_bag(r, j);
                    for (int tau = 1; tau <= n + 2; ++tau) {
                        std::vector<int> bag = prime;
                        bag.push_back(lm.path_p_vertex(r, j, tau - 1));
                        bag.push_back(lm.path_p_vertex(r, j, tau));
                        push(std::move(bag));
                    }
                    push(prime);
                }
            }
        }
    }
    return pd;
}

PathDecomposition build_path_decomposition(const ReductionInstance& inst) {
    return build_path_decomposition(inst.labels);
}

PathDecompositionReport validate_path_decomposition(const WeightedGraph& g,
                                                    const PathDecomposition& pd) {
    PathDecompositionReport report;
    const int n = g.vertex_count();
    std::vector<std::vector<int>> occurrences(n);
    bool ids_ok = true;
    for (int b = 0; b < static_cast<int>(pd.bags.size()); ++b) {
        for (int v : pd.bags[b]) {
            if (v < 0 || v >= n) {
                report.violations.push_back("bag " + std::to_string(b) + " references vertex " +
                                            std::to_string(v) + " outside the graph");
                ids_ok = false;
                continue;
            }
            occurrences[v].push_back(b);
        }
    }

    for (int v = 0; v < n; ++v)
        if (occurrences[v].empty())
            report.violations.push_back("vertex " + std::to_string(v) + " is in no bag");

    for (const Edge& e : g.edges()) {
        bool found = false;
        const auto& a = occurrences[e.u];
        const auto& b = occurrences[e.v];
        std::size_t ia = 0, ib = 0;
        while (ia < a.size() && ib < b.size()) {
            if (a[ia] == b[ib]) { found = true; break; }
            if (a[ia] < b[ib]) ++ia;
            else ++ib;
        }
        if (!found)
            report.violations.push_back("edge {" + std::to_string(e.u) + "," +
                                        std::to_string(e.v) + "} is in no bag");
    }

    for (int v = 0; v < n; ++v) {
        const auto& occ = occurrences[v];
        if (occ.empty()) continue;
        if (occ.back() - occ.front() + 1 != static_cast<int>(occ.size()))
            report.violations.push_back("bags containing vertex " + std::to_string(v) +
                                        " do not form a contiguous subpath");
    }

    report.width = pd.width();
    report.valid = ids_ok && report.violations.empty();
    return report;
}

HubSet build_hub_set(const LabelMap& lm, const Rational& r, const Rational& c) {
    if (r.sign() <= 0) throw InvalidScaleError("hub scale r must be > 0");
    if (c < Rational(4)) throw InvalidScaleError("hub constant c must be >= 4");
    const int kappa = lm.kappa();
    const int n = lm.n();
    const int cyc = lm.cycle_length();
    const Rational big(8 * n * n + 2);

    std::vector<int> hubs;
    auto add_connectors = [&] {
        for (int i = 1; i <= kappa; ++i)
            for (int j = 1; j <= kappa; ++j) {
                for (int q = 1; q <= 4; ++q) hubs.push_back(lm.x_id(i, j, q));
                hubs.push_back(lm.y_id(i, j));
            }
    };

    if (r > big) {
        add_connectors();
    } else if (r >= Rational(1)) {
        add_connectors();
        const int step = static_cast<int>(r.floor().get_si());
        for (int i = 1; i <= kappa; ++i)
            for (int j = 1; j <= kappa; ++j)
                for (int pos = 1; pos <= cyc; pos += step) hubs.push_back(lm.cycle_id(i, j, pos));
    } else {
        for (int i = 1; i <= kappa; ++i)
            for (int j = 1; j <= kappa; ++j) {
                for (int pos = 1; pos <= cyc; ++pos) hubs.push_back(lm.cycle_id(i, j, pos));
                for (int q = 1; q <= 4; ++q) hubs.push_back(lm.x_id(i, j, q));
                hubs.push_back(lm.y_id(i, j));
            }
        // the written step floor(r(n+2)) collapses to 0 below r = 1/(n+2);
        // clamping to 1 keeps consecutive hubs within distance r
        int step = static_cast<int>((r * Rational(n + 2)).floor().get_si());
        if (step < 1) step = 1;
        for (int i = 1; i <= kappa; ++i)
            for (int j = 1; j <= kappa - 1; ++j)
                for (int t = step; t <= n + 1; t += step)
                    hubs.push_back(lm.path_p_interior(i, j, t));
        for (int i = 1; i <= kappa - 1; ++i)
            for (int j = 1; j <= kappa; ++j)
                for (int t = step; t <= n + 1; t += step)
                    hubs.push_back(lm.path_pp_interior(i, j, t));
    }
    return HubSet{r, c, sorted_unique(std::move(hubs))};
}

HubSet build_hub_set(const ReductionInstance& inst, const Rational& r, const Rational& c) {
    return build_hub_set(inst.labels, r, c);
}

HubValidationReport validate_hub_set(const WeightedGraph& g, const Rational& r,
                                     const std::vector<int>& hubs, const Rational& c) {
    const int n = g.vertex_count();
    std::vector<char> is_hub(n, 0);
    for (int h : hubs) {
        if (h < 0 || h >= n) throw InvalidVertexError("hub id " + std::to_string(h));
        is_hub[h] = 1;
    }

    Adjacency full = build_adjacency(g);
    Adjacency pruned(n); // hub vertices become isolated
    for (const Edge& e : g.edges()) {
        if (is_hub[e.u] || is_hub[e.v]) continue;
        pruned[e.u].emplace_back(e.v, e.length);
        pruned[e.v].emplace_back(e.u, e.length);
    }

    HubValidationReport report;
    const Rational ball_radius = c * r;
    for (int u = 0; u < n; ++u) {
        auto row = shortest_paths(full, u);

        int in_ball = 0;
        for (int h : hubs)
            if (row[h] && *row[h] <= ball_radius) ++in_ball;
        if (in_ball > report.max_ball_hub_count) {
            report.max_ball_hub_count = in_ball;
            report.max_ball_center = u;
        }

        if (is_hub[u]) continue;
        auto pruned_row = shortest_paths(pruned, u);
        for (int v = u + 1; v < n; ++v) {
            if (is_hub[v] || !row[v] || *row[v] <= r) continue;
            if (pruned_row[v] && *pruned_row[v] == *row[v])
                report.violations.push_back({u, v});
        }
    }
    return report;
}

namespace {

SetCoverProblem ball_problem(const Metric& metric, const std::vector<int>& ball,
                             const Rational& r, const Rational& two_r) {
    const int m = static_cast<int>(ball.size());
    SetCoverProblem p;
    p.universe = m;
    p.covers.assign(metric.point_count(), Bitset(m));
    p.conflict.assign(m, Bitset(m));
    for (int c = 0; c < metric.point_count(); ++c)
        for (int t = 0; t < m; ++t)
            if (metric.dist(c, ball[t]) <= r) p.covers[c].set(t);
    for (int s = 0; s < m; ++s)
        for (int t = 0; t < m; ++t)
            if (metric.dist(ball[s], ball[t]) > two_r) p.conflict[s].set(t);
    return p;
}

} // namespace

CoverReport ball_cover_number(const Metric& metric, int center, const Rational& r,
                              CoverMode mode, const CoverOptions& options) {
    if (r.sign() <= 0) throw InvalidScaleError("cover radius must be > 0");
    if (center < 0 || center >= metric.point_count())
        throw InvalidVertexError("ball center out of range");

    const Rational two_r = r + r;
    std::vector<int> ball;
    for (int u = 0; u < metric.point_count(); ++u)
        if (metric.dist(center, u) <= two_r) ball.push_back(u);

    CoverReport report;
    report.center = center;
    report.radius = r;
    report.ball_size = static_cast<int>(ball.size());

    if (mode == CoverMode::exact && report.ball_size > options.exact_cap)
        throw BallTooLargeError("ball of " + std::to_string(report.ball_size) +
                                " points exceeds exact cap " + std::to_string(options.exact_cap));

    SetCoverProblem p = ball_problem(metric, ball, r, two_r);
    if (mode == CoverMode::exact) {
        auto size = min_set_cover_size(p);
        if (!size) throw std::logic_error("ball cover infeasible; every point covers itself");
        report.cover_count = *size;
        report.exact = true;
    } else {
        report.cover_count = greedy_set_cover_count(p);
        report.exact = false;
    }
    return report;
}

std::vector<CoverReport> doubling_cover_samples(const Metric& metric, const LabelMap& lm,
                                                const CoverOptions& options) {
    const int n = lm.n();
    const int nsq = n * n;

    std::vector<int> centers{lm.cycle_id(1, 1, 1), lm.x_id(1, 1, 2), lm.y_id(1, 1)};
    if (lm.kappa() >= 2) centers.push_back(lm.path_p_interior(1, 1, 1));

    // boundaries of the case analysis plus a step past each
    std::vector<Rational> radii{Rational(1, 2), Rational(1),          Rational(nsq - 1),
                                Rational(nsq),  Rational(2 * nsq + 1), Rational(2 * nsq + 2),
                                Rational(12 * nsq + 5), Rational(12 * nsq + 6)};

    std::vector<CoverReport> reports;
    for (int center : centers) {
        for (const Rational& r : radii) {
            const Rational two_r = r + r;
            int ball_size = 0;
            for (int u = 0; u < metric.point_count(); ++u)
                if (metric.dist(center, u) <= two_r) ++ball_size;
            CoverMode mode = ball_size <= options.exact_cap ? CoverMode::exact : CoverMode::greedy;
            reports.push_back(ball_cover_number(metric, center, r, mode, options));
        }
    }
    return reports;
}

GadgetDistanceReport check_gadget_distances(const WeightedGraph& g, const LabelMap& lm) {
    const int kappa = lm.kappa();
    const int n = lm.n();
    const Rational lo(7 * n * n - 1);
    const Rational hi(8 * n * n + 2);
    const Rational y_floor(2 * n * n);

    Adjacency adj = build_adjacency(g);
    GadgetDistanceReport report;
    bool first_pair = true;
    bool first_y = true;

    for (int i = 1; i <= kappa; ++i) {
        for (int j = 1; j <= kappa; ++j) {
            std::vector<std::vector<std::optional<Rational>>> rows(4);
            for (int q = 1; q <= 4; ++q) rows[q - 1] = shortest_paths(adj, lm.x_id(i, j, q));
            for (int q = 1; q <= 4; ++q) {
                for (int p = q + 1; p <= 4; ++p) {
                    const auto& d = rows[q - 1][lm.x_id(i, j, p)];
                    if (!d) {
                        report.violations.push_back("x" + std::to_string(q) + "-x" +
                                                    std::to_string(p) + " unreachable in gadget (" +
                                                    std::to_string(i) + "," + std::to_string(j) + ")");
                        continue;
                    }
                    ++report.x_pairs_checked;
                    if (first_pair || *d < report.min_x_pair) report.min_x_pair = *d;
                    if (first_pair || *d > report.max_x_pair) report.max_x_pair = *d;
                    first_pair = false;
                    if (*d < lo || *d > hi)
                        report.violations.push_back(
                            "dist(x" + std::to_string(q) + ",x" + std::to_string(p) +
                            ") in gadget (" + std::to_string(i) + "," + std::to_string(j) +
                            ") is " + d->str() + ", outside [" + lo.str() + ", " + hi.str() + "]");
                }
            }

            auto y_row = shortest_paths(adj, lm.y_id(i, j));
            const Rational* nearest = nullptr;
            for (int v = 0; v < g.vertex_count(); ++v) {
                if (v == lm.y_id(i, j) || !y_row[v]) continue;
                if (!nearest || *y_row[v] < *nearest) nearest = &*y_row[v];
            }
            if (nearest) {
                if (first_y || *nearest < report.min_y_distance) report.min_y_distance = *nearest;
                first_y = false;
                if (!(*nearest > y_floor))
                    report.violations.push_back("y(" + std::to_string(i) + "," +
                                                std::to_string(j) + ") is within " +
                                                nearest->str() + " <= " + y_floor.str() +
                                                " of another vertex");
            }
        }
    }
    return report;
}

GadgetDistanceReport check_gadget_distances(const ReductionInstance& inst) {
    return check_gadget_distances(inst.graph, inst.labels);
}

} // namespace kclab
