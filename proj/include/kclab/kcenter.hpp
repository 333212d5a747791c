#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "kclab/graph.hpp"
#include "kclab/rational.hpp"

namespace kclab {

struct CenterSet {
    std::vector<int> ids; // ascending, unique

    static CenterSet of(std::vector<int> ids);
    bool contains(int id) const;
    int size() const { return static_cast<int>(ids.size()); }

    friend bool operator==(const CenterSet&, const CenterSet&) = default;
};

enum class SolveStatus { sat, unsat, optimal };
std::string to_string(SolveStatus status);

struct SolveOutcome {
    SolveStatus status = SolveStatus::unsat;
    CenterSet centers;
    Rational cost;
};

// delta-cover whose points are pairwise more than delta apart.
struct Net {
    std::vector<int> points; // ascending
    Rational delta;
};

// Exact max-min distance of the center set.
Rational cost(const Metric& metric, const CenterSet& centers);

// Early-exit test: every point within bound of some listed center.
bool cost_within(const Metric& metric, const std::vector<int>& centers, const Rational& bound);

// Exact decision: a witness of <= k centers with cost <= radius, or a
// certified nullopt. Deterministic branch and bound over the set-cover view.
std::optional<CenterSet> decide_cover(const Metric& metric, int k, const Rational& radius);

// Exact optimum via binary search on the candidate radius list.
SolveOutcome solve_exact(const Metric& metric, int k);

// Classic farthest-first traversal from point 0; 2-approximation.
CenterSet farthest_first(const Metric& metric, int k);

// Greedy scan in ascending id order.
Net greedy_net(const Metric& metric, const Rational& delta);

// Cover law (every point within delta of a net point) and packing law (net
// points pairwise farther than delta); violations returned as data.
std::vector<std::string> validate_net(const Metric& metric, const Net& net);

struct EpasOptions {
    int net_cap = 64;                             // throw BudgetExceededError beyond this
    std::function<void(const Net&)> net_observer; // diagnostics hook, may be empty
};

// (1+epsilon)-approximation for low-doubling metrics: per candidate radius
// rho ascending, brute-force all k-subsets of an (epsilon*rho/2)-net and
// return the first solution with cost <= (1+epsilon)*rho.
SolveOutcome epas_doubling(const Metric& metric, int k, const Rational& epsilon,
                           const EpasOptions& options = {});

// 0 plus every distinct pairwise distance, ascending.
std::vector<Rational> candidate_radii(const Metric& metric);

} // namespace kclab
