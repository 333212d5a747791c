#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "kclab/graph.hpp"
#include "kclab/gridtiling.hpp"
#include "kclab/kcenter.hpp"
#include "kclab/rational.hpp"

namespace kclab {

enum class VertexKind { cycle, x1, x2, x3, x4, y, path_p, path_pprime };
std::string to_string(VertexKind kind);

struct VertexRole {
    VertexKind kind;
    int i; // gadget row, 1-based
    int j; // gadget column, 1-based
    int pos; // cycle position 1..16n^2+4 or interior path index 1..n+1; 0 otherwise
};

// Deterministic id layout: gadgets row-major, inside a gadget the cycle
// positions ascending, then x1..x4, then y; after all gadgets the P paths
// (row-major, interiors from the x2 end), then the P' paths (row-major,
// interiors from the x3 end).
class LabelMap {
public:
    LabelMap() = default;
    LabelMap(int kappa, int n);

    int kappa() const { return kappa_; }
    int n() const { return n_; }
    int cycle_length() const { return 16 * n_ * n_ + 4; }
    int gadget_block() const { return 16 * n_ * n_ + 9; }
    int vertex_count() const;

    int cycle_id(int i, int j, int pos) const; // pos 1-based, wraps modulo the cycle
    int x_id(int i, int j, int q) const;       // q in 1..4
    int y_id(int i, int j) const;
    int path_p_interior(int i, int j, int t) const;  // t in 1..n+1, j <= kappa-1
    int path_pp_interior(int i, int j, int t) const; // t in 1..n+1, i <= kappa-1

    // Path vertices including endpoints: t = 0 is the owning x vertex,
    // t = n+2 the far x vertex of the neighbouring gadget.
    int path_p_vertex(int i, int j, int t) const;
    int path_pp_vertex(int i, int j, int t) const;

    const VertexRole& role(int id) const;
    std::string vertex_label(int id) const;

private:
    void check_cell(int i, int j) const;

    int kappa_ = 0;
    int n_ = 0;
    std::vector<VertexRole> roles_;
};

struct ReductionInstance {
    WeightedGraph graph;
    LabelMap labels;
    int k = 0;          // 5 kappa^2
    Rational threshold; // 2 n^2
    GTInstance source;
};

ReductionInstance build_reduction(const GTInstance& gt);

// Forward direction: the five centers per gadget named by the picked element.
CenterSet centers_from_assignment(const ReductionInstance& inst, const GTAssignment& assignment);

// One name per structural fact of the backward direction.
enum class StructureFault {
    none,
    missing_y_center,
    cycle_center_count_mismatch,
    non_equidistant_cycle_centers,
    no_matching_element,
    stray_center,
};
std::string to_string(StructureFault fault);

struct ExtractResult {
    std::optional<GTAssignment> assignment;
    StructureFault fault = StructureFault::none;
    std::string detail;

    bool ok() const { return fault == StructureFault::none; }
};

// Backward direction: defensively checks the required structure (every y
// present, exactly four equidistant cycle centers aligned to one element, no
// strays) and recovers the picks. The caller separately runs
// check_gt_assignment on the result.
ExtractResult assignment_from_centers(const ReductionInstance& inst, const CenterSet& centers);

// Sidecar format: one line "role <id> <kind> <i> <j> [<pos>]" per vertex.
void write_labels(const LabelMap& labels, std::ostream& out);
LabelMap read_labels(std::istream& in);
void save_labels(const LabelMap& labels, const std::string& path);
LabelMap load_labels(const std::string& path);

} // namespace kclab
