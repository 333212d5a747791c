#include "kclab/kcenter.hpp"

#include <algorithm>

#include "kclab/errors.hpp"
#include "kclab/setcover.hpp"

namespace kclab {

CenterSet CenterSet::of(std::vector<int> ids) {
    std::sort(ids.begin(), ids.end());
    if (std::adjacent_find(ids.begin(), ids.end()) != ids.end())
        throw InvalidInstanceError("duplicate center id");
    return CenterSet{std::move(ids)};
}

bool CenterSet::contains(int id) const {
    return std::binary_search(ids.begin(), ids.end(), id);
}

std::string to_string(SolveStatus status) {
    switch (status) {
    case SolveStatus::sat: return "SAT";
    case SolveStatus::unsat: return "UNSAT";
    case SolveStatus::optimal: return "OPTIMAL";
    }
    return "?";
}

Rational cost(const Metric& metric, const CenterSet& centers) {
    if (centers.ids.empty()) throw EmptyCenterSetError("cost of empty center set");
    const int n = metric.point_count();
    Rational worst(0);
    for (int u = 0; u < n; ++u) {
        const Rational* best = nullptr;
        for (int c : centers.ids) {
            if (c < 0 || c >= n) throw InvalidVertexError("center id out of range");
            const Rational& d = metric.dist(u, c);
            if (!best || d < *best) best = &d;
        }
        if (*best > worst) worst = *best;
    }
    return worst;
}

bool cost_within(const Metric& metric, const std::vector<int>& centers, const Rational& bound) {
    const int n = metric.point_count();
    for (int u = 0; u < n; ++u) {
        bool covered = false;
        for (int c : centers) {
            if (metric.dist(u, c) <= bound) {
                covered = true;
                break;
            }
        }
        if (!covered) return false;
    }
    return true;
}

namespace {

SetCoverProblem cover_problem(const Metric& metric, const Rational& radius) {
    const int n = metric.point_count();
    Rational two_r = radius + radius;
    SetCoverProblem p;
    p.universe = n;
    p.covers.assign(n, Bitset(n));
    p.conflict.assign(n, Bitset(n));
    for (int u = 0; u < n; ++u) {
        for (int v = 0; v < n; ++v) {
            const Rational& d = metric.dist(u, v);
            if (d <= radius) p.covers[u].set(v);
            if (d > two_r) p.conflict[u].set(v);
        }
    }
    return p;
}

} // namespace

std::optional<CenterSet> decide_cover(const Metric& metric, int k, const Rational& radius) {
    if (k < 0) throw InfeasibleParamsError("k must be >= 0");
    auto chosen = decide_set_cover(cover_problem(metric, radius), k);
    if (!chosen) return std::nullopt;
    return CenterSet::of(std::move(*chosen));
}

std::vector<Rational> candidate_radii(const Metric& metric) {
    const int n = metric.point_count();
    std::vector<Rational> radii;
    radii.reserve(static_cast<std::size_t>(n) * (n - 1) / 2 + 1);
    radii.push_back(Rational(0));
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) radii.push_back(metric.dist(u, v));
    std::sort(radii.begin(), radii.end());
    radii.erase(std::unique(radii.begin(), radii.end()), radii.end());
    return radii;
}

SolveOutcome solve_exact(const Metric& metric, int k) {
    if (k < 1) throw InfeasibleParamsError("k must be >= 1");
    auto radii = candidate_radii(metric);
    // optimum cost is always a pairwise distance (or 0); binary search the
    // smallest feasible one
    std::size_t lo = 0, hi = radii.size() - 1;
    while (lo < hi) {
        std::size_t mid = lo + (hi - lo) / 2;
        if (decide_cover(metric, k, radii[mid]))
            hi = mid;
        else
            lo = mid + 1;
    }
    auto witness = decide_cover(metric, k, radii[lo]);
    if (!witness) throw std::logic_error("solve_exact: binary search lost feasibility");
    return SolveOutcome{SolveStatus::optimal, std::move(*witness), radii[lo]};
}

CenterSet farthest_first(const Metric& metric, int k) {
    if (k < 1) throw InfeasibleParamsError("k must be >= 1");
    const int n = metric.point_count();
    std::vector<int> chosen{0};
    std::vector<Rational> nearest(n);
    for (int u = 0; u < n; ++u) nearest[u] = metric.dist(u, 0);
    while (static_cast<int>(chosen.size()) < std::min(k, n)) {
        int far = 0;
        for (int u = 1; u < n; ++u)
            if (nearest[u] > nearest[far]) far = u; // ties keep the smaller id
        if (nearest[far] == Rational(0)) break;     // every point already a center
        chosen.push_back(far);
        for (int u = 0; u < n; ++u)
            if (metric.dist(u, far) < nearest[u]) nearest[u] = metric.dist(u, far);
    }
    return CenterSet::of(std::move(chosen));
}

Net greedy_net(const Metric& metric, const Rational& delta) {
    if (delta.sign() < 0) throw InvalidScaleError("net delta must be >= 0");
    const int n = metric.point_count();
    Net net;
    net.delta = delta;
    for (int u = 0; u < n; ++u) {
        bool apart = true;
        for (int y : net.points) {
            if (metric.dist(u, y) <= delta) {
                apart = false;
                break;
            }
        }
        if (apart) net.points.push_back(u);
    }
    return net;
}

std::vector<std::string> validate_net(const Metric& metric, const Net& net) {
    std::vector<std::string> violations;
    for (int u = 0; u < metric.point_count(); ++u) {
        bool covered = false;
        for (int y : net.points) {
            if (metric.dist(u, y) <= net.delta) {
                covered = true;
                break;
            }
        }
        if (!covered)
            violations.push_back("point " + std::to_string(u) + " farther than " +
                                 net.delta.str() + " from every net point");
    }
    for (std::size_t s = 0; s < net.points.size(); ++s)
        for (std::size_t t = s + 1; t < net.points.size(); ++t)
            if (metric.dist(net.points[s], net.points[t]) <= net.delta)
                violations.push_back("net points " + std::to_string(net.points[s]) + " and " +
                                     std::to_string(net.points[t]) + " within " +
                                     net.delta.str());
    return violations;
}

namespace {

// Ascending lexicographic m-subsets of 0..size-1.
bool next_combination(std::vector<int>& idx, int size) {
    const int m = static_cast<int>(idx.size());
    int t = m - 1;
    while (t >= 0 && idx[t] == size - m + t) --t;
    if (t < 0) return false;
    ++idx[t];
    for (int s = t + 1; s < m; ++s) idx[s] = idx[s - 1] + 1;
    return true;
}

} // namespace

SolveOutcome epas_doubling(const Metric& metric, int k, const Rational& epsilon,
                           const EpasOptions& options) {
    if (k < 1) throw InfeasibleParamsError("k must be >= 1");
    if (epsilon.sign() <= 0) throw InfeasibleParamsError("epsilon must be > 0");
    const int n = metric.point_count();
    const Rational one_plus_eps = Rational(1) + epsilon;
    const Rational half_eps = epsilon / Rational(2);

    for (const Rational& rho : candidate_radii(metric)) {
        if (rho.sign() == 0) {
            // a zero-cost solution exists exactly when every point is a center
            if (k >= n) {
                std::vector<int> all(n);
                for (int u = 0; u < n; ++u) all[u] = u;
                return SolveOutcome{SolveStatus::sat, CenterSet::of(std::move(all)), Rational(0)};
            }
            continue;
        }
        Net net = greedy_net(metric, half_eps * rho);
        if (options.net_observer) options.net_observer(net);
        if (static_cast<int>(net.points.size()) > options.net_cap)
            throw BudgetExceededError("net of " + std::to_string(net.points.size()) +
                                      " points exceeds cap " + std::to_string(options.net_cap) +
                                      "; epsilon too small for this instance");
        const int m = std::min<int>(k, static_cast<int>(net.points.size()));
        const Rational bound = one_plus_eps * rho;
        std::vector<int> idx(m);
        for (int t = 0; t < m; ++t) idx[t] = t;
        std::vector<int> subset(m);
        do {
            for (int t = 0; t < m; ++t) subset[t] = net.points[idx[t]];
            if (cost_within(metric, subset, bound)) {
                CenterSet centers = CenterSet::of(subset);
                return SolveOutcome{SolveStatus::sat, centers, cost(metric, centers)};
            }
        } while (next_combination(idx, static_cast<int>(net.points.size())));
    }
    throw std::logic_error("epas_doubling: no candidate radius admitted a solution");
}

} // namespace kclab
