#pragma once

#include <cstdint>
#include <optional>
#include <vector>

namespace kclab {

// Word-backed bitset sized once per problem.
class Bitset {
public:
    Bitset() = default;
    explicit Bitset(int bits) : bits_(bits), w_((bits + 63) / 64, 0) {}

    int size() const { return bits_; }
    void set(int i) { w_[i >> 6] |= std::uint64_t(1) << (i & 63); }
    bool test(int i) const { return (w_[i >> 6] >> (i & 63)) & 1; }
    int count() const;
    bool any() const;
    int first_set() const; // -1 if none

    Bitset& operator|=(const Bitset& o);
    friend Bitset operator|(Bitset a, const Bitset& b) { a |= b; return a; }
    friend bool operator==(const Bitset&, const Bitset&) = default;

    // |this & ~mask| and the smallest set bit of (this & ~mask)
    int count_minus(const Bitset& mask) const;
    int first_set_minus(const Bitset& mask) const;
    bool subset_of(const Bitset& o) const;

private:
    int bits_ = 0;
    std::vector<std::uint64_t> w_;
};

// Covering problem: every universe point must land in some chosen candidate
// set. conflict[p] lists points that no single candidate set may contain
// together with p; maximal conflict-cliques found greedily give the lower
// bound used for pruning.
struct SetCoverProblem {
    int universe = 0;
    std::vector<Bitset> covers;   // per candidate, over universe points
    std::vector<Bitset> conflict; // per universe point, over universe points
};

// Deterministic branch and bound: forced-candidate propagation, greedy
// conflict (anticover) lower bound, branching on the uncovered point with
// fewest remaining candidates, candidates in ascending id. Returns a cover
// of size <= limit or nullopt if none exists.
std::optional<std::vector<int>> decide_set_cover(const SetCoverProblem& p, int limit);

// Greedy cover size (upper bound); -1 when the candidates cannot cover the
// universe at all.
int greedy_set_cover_count(const SetCoverProblem& p);

// Exact minimum cover size; nullopt when infeasible.
std::optional<int> min_set_cover_size(const SetCoverProblem& p);

} // namespace kclab
