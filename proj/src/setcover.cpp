#include "kclab/setcover.hpp"

#include <algorithm>
#include <bit>
#include <limits>

namespace kclab {

int Bitset::count() const {
    int total = 0;
    for (std::uint64_t w : w_) total += std::popcount(w);
    return total;
}

bool Bitset::any() const {
    for (std::uint64_t w : w_)
        if (w) return true;
    return false;
}

int Bitset::first_set() const {
    for (std::size_t i = 0; i < w_.size(); ++i)
        if (w_[i]) return static_cast<int>(i * 64) + std::countr_zero(w_[i]);
    return -1;
}

Bitset& Bitset::operator|=(const Bitset& o) {
    for (std::size_t i = 0; i < w_.size(); ++i) w_[i] |= o.w_[i];
    return *this;
}

int Bitset::count_minus(const Bitset& mask) const {
    int total = 0;
    for (std::size_t i = 0; i < w_.size(); ++i) total += std::popcount(w_[i] & ~mask.w_[i]);
    return total;
}

int Bitset::first_set_minus(const Bitset& mask) const {
    for (std::size_t i = 0; i < w_.size(); ++i) {
        std::uint64_t w = w_[i] & ~mask.w_[i];
        if (w) return static_cast<int>(i * 64) + std::countr_zero(w);
    }
    return -1;
}

bool Bitset::subset_of(const Bitset& o) const {
    for (std::size_t i = 0; i < w_.size(); ++i)
        if (w_[i] & ~o.w_[i]) return false;
    return true;
}

namespace {

// Transposed incidence: per universe point, the candidates covering it.
std::vector<Bitset> candidates_of(const SetCoverProblem& p) {
    const int c_count = static_cast<int>(p.covers.size());
    std::vector<Bitset> cand(p.universe, Bitset(c_count));
    for (int c = 0; c < c_count; ++c)
        for (int q = 0; q < p.universe; ++q)
            if (p.covers[c].test(q)) cand[q].set(c);
    return cand;
}

// Points pairwise in conflict each need their own set.
int anticover_bound(const SetCoverProblem& p, const Bitset& covered) {
    std::vector<int> picked;
    for (int q = 0; q < p.universe; ++q) {
        if (covered.test(q)) continue;
        bool apart = true;
        for (int r : picked)
            if (!p.conflict[q].test(r)) { apart = false; break; }
        if (apart) picked.push_back(q);
    }
    return static_cast<int>(picked.size());
}

struct Search {
    const SetCoverProblem& p;
    const std::vector<Bitset>& cand;
    int limit;
    std::vector<int> chosen;
    std::optional<std::vector<int>> found;

    bool run(Bitset covered, Bitset excluded) {
        const std::size_t base = chosen.size();
        for (;;) {
            if (covered.count() == p.universe) {
                found = chosen;
                return true;
            }
            if (static_cast<int>(chosen.size()) >= limit) break;

            int forced = -1;
            int best_point = -1;
            int best_avail = std::numeric_limits<int>::max();
            for (int q = 0; q < p.universe; ++q) {
                if (covered.test(q)) continue;
                int avail = cand[q].count_minus(excluded);
                if (avail == 0) { best_point = -2; break; }
                if (avail == 1) { forced = cand[q].first_set_minus(excluded); break; }
                if (avail < best_avail) {
                    best_avail = avail;
                    best_point = q;
                }
            }
            if (best_point == -2) break; // dead point
            if (forced >= 0) {
                chosen.push_back(forced);
                covered |= p.covers[forced];
                continue;
            }

            if (static_cast<int>(chosen.size()) + anticover_bound(p, covered) > limit) break;

            Bitset child_excluded = excluded;
            for (int c = cand[best_point].first_set_minus(child_excluded); c != -1;
                 c = cand[best_point].first_set_minus(child_excluded)) {
                chosen.push_back(c);
                if (run(covered | p.covers[c], child_excluded)) return true;
                chosen.pop_back();
                child_excluded.set(c);
            }
            break;
        }
        chosen.resize(base);
        return false;
    }
};

// Drop candidates whose cover is a subset of another's (ties keep the
// smaller id); preserves the optimal cover size.
std::vector<int> dominant_candidates(const SetCoverProblem& p) {
    const int c_count = static_cast<int>(p.covers.size());
    std::vector<int> keep;
    for (int c = 0; c < c_count; ++c) {
        bool dominated = false;
        for (int d = 0; d < c_count && !dominated; ++d) {
            if (d == c || !p.covers[c].subset_of(p.covers[d])) continue;
            bool equal = p.covers[c] == p.covers[d];
            dominated = !equal || d < c;
        }
        if (!dominated) keep.push_back(c);
    }
    return keep;
}

} // namespace

std::optional<std::vector<int>> decide_set_cover(const SetCoverProblem& p, int limit) {
    if (limit < 0) return std::nullopt;
    if (p.universe == 0) return std::vector<int>{};
    auto cand = candidates_of(p);
    Search search{p, cand, limit, {}, std::nullopt};
    search.run(Bitset(p.universe), Bitset(static_cast<int>(p.covers.size())));
    return search.found;
}

int greedy_set_cover_count(const SetCoverProblem& p) {
    Bitset covered(p.universe);
    int count = 0;
    while (covered.count() < p.universe) {
        int best = -1, best_gain = 0;
        for (int c = 0; c < static_cast<int>(p.covers.size()); ++c) {
            int gain = p.covers[c].count_minus(covered);
            if (gain > best_gain) {
                best_gain = gain;
                best = c;
            }
        }
        if (best < 0) return -1;
        covered |= p.covers[best];
        ++count;
    }
    return count;
}

std::optional<int> min_set_cover_size(const SetCoverProblem& p) {
    if (p.universe == 0) return 0;
    int greedy = greedy_set_cover_count(p);
    if (greedy < 0) return std::nullopt;

    SetCoverProblem reduced;
    reduced.universe = p.universe;
    reduced.conflict = p.conflict;
    for (int c : dominant_candidates(p)) reduced.covers.push_back(p.covers[c]);

    int lo = std::max(anticover_bound(p, Bitset(p.universe)), 1);
    int hi = greedy;
    while (lo < hi) {
        int mid = lo + (hi - lo) / 2;
        if (decide_set_cover(reduced, mid))
            hi = mid;
        else
            lo = mid + 1;
    }
    return lo;
}

} // namespace kclab
