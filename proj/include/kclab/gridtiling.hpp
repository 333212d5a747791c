#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace kclab {

// Grid tiling with inequality: pick one pair per cell of a kappa x kappa grid
// of sets over [n]^2 so that first coordinates never decrease down a column
// and second coordinates never decrease along a row.
struct GTInstance {
    int kappa = 0;
    int n = 0;
    // Row-major cells; element order inside a set is fixed at construction
    // and defines the 1-based tau indexing.
    std::vector<std::vector<std::pair<int, int>>> sets;

    const std::vector<std::pair<int, int>>& set_at(int i, int j) const; // 1-based
    void validate() const; // throws InvalidInstanceError
};

struct GTAssignment {
    std::vector<int> picks; // row-major, 1-based tau per cell

    int pick_at(int kappa, int i, int j) const { return picks[(i - 1) * kappa + (j - 1)]; }

    friend bool operator==(const GTAssignment&, const GTAssignment&) = default;
};

bool check_gt_assignment(const GTInstance& instance, const GTAssignment& assignment);

// Deterministic backtracking search, cells filled column-major with ascending
// tau and row/column prefix pruning. nullopt means certified UNSAT.
std::optional<GTAssignment> solve_gt(const GTInstance& instance);

// Deterministic for a fixed seed. Planted instances embed a monotone grid of
// pairs so they are SAT by construction.
GTInstance gen_gt(int kappa, int n, int set_size, bool planted, std::uint64_t seed);

// Text format: "gt <kappa> <n>" then one row-major line per set:
// "set <i> <j> : a1,b1 a2,b2 ...". Listed order defines tau.
void write_gt(const GTInstance& instance, std::ostream& out);
GTInstance read_gt(std::istream& in);
void save_gt(const GTInstance& instance, const std::string& path);
GTInstance load_gt(const std::string& path);

} // namespace kclab
