#pragma once

#include <string>
#include <vector>

#include "kclab/graph.hpp"
#include "kclab/rational.hpp"
#include "kclab/reduction.hpp"

namespace kclab {

struct PathDecomposition {
    std::vector<std::vector<int>> bags;

    int width() const; // max bag size - 1, or -1 when there are no bags
};

struct PathDecompositionReport {
    bool valid = false;
    int width = -1;
    std::vector<std::string> violations;
};

// The explicit bag family for the reduction graphs: per column the K bags
// interleaved with cycle bags K^tau, connector-path bags J^tau, and at column
// ends the I^tau / K' bags walking back up the column. Max bag size kappa+7.
PathDecomposition build_path_decomposition(const LabelMap& labels);
PathDecomposition build_path_decomposition(const ReductionInstance& inst);

// Checks the three defining properties: vertices covered, edges covered,
// occurrences of each vertex contiguous.
PathDecompositionReport validate_path_decomposition(const WeightedGraph& g,
                                                    const PathDecomposition& pd);

struct HubSet {
    Rational scale;      // r
    Rational constant_c; // c >= 4
    std::vector<int> hubs; // ascending
};

// Scale-indexed hub families: r > 8n^2+2 keeps only the connector/hub
// vertices X; 1 <= r <= 8n^2+2 adds every floor(r)-th cycle vertex; r < 1
// adds all gadget vertices plus evenly spaced path vertices.
HubSet build_hub_set(const LabelMap& labels, const Rational& r, const Rational& c);
HubSet build_hub_set(const ReductionInstance& inst, const Rational& r, const Rational& c);

struct HubViolation {
    int u;
    int v; // u < v; some shortest u-v path of length > r avoids every hub
};

struct HubValidationReport {
    std::vector<HubViolation> violations;
    int max_ball_hub_count = 0; // max |hubs ∩ B_cr(v)| over all v
    int max_ball_center = -1;
};

// Deletion test: for every non-hub pair with dist > r, the distance must
// strictly grow once all hub vertices are removed.
HubValidationReport validate_hub_set(const WeightedGraph& g, const Rational& r,
                                     const std::vector<int>& hubs, const Rational& c);

struct CoverReport {
    int center = -1;
    Rational radius;
    int ball_size = 0;  // |B_center(2r)|
    int cover_count = 0; // number of radius-r balls covering it
    bool exact = false;
};

enum class CoverMode { exact, greedy };

struct CoverOptions {
    int exact_cap = 200; // exact mode refuses larger balls
};

// Minimum (exact mode) or greedy (upper bound) number of radius-r balls,
// centered anywhere in the metric, covering the radius-2r ball around center.
CoverReport ball_cover_number(const Metric& metric, int center, const Rational& r,
                              CoverMode mode, const CoverOptions& options = {});

// The doubling-law sample grid: one representative per vertex class times a
// radius ladder spanning the small/medium/large regimes; exact where the
// ball is small enough, greedy beyond the cap.
std::vector<CoverReport> doubling_cover_samples(const Metric& metric, const LabelMap& labels,
                                                const CoverOptions& options = {});

struct GadgetDistanceReport {
    std::vector<std::string> violations;
    Rational min_x_pair;    // over all intra-gadget x pairs
    Rational max_x_pair;
    Rational min_y_distance; // min over all y and all other vertices
    int x_pairs_checked = 0;

    bool pass() const { return violations.empty(); }
};

// Every intra-gadget x-pair distance must lie in [7n^2-1, 8n^2+2] and every
// y must be farther than 2n^2 from everything else.
GadgetDistanceReport check_gadget_distances(const WeightedGraph& g, const LabelMap& labels);
GadgetDistanceReport check_gadget_distances(const ReductionInstance& inst);

} // namespace kclab
