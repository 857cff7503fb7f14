#pragma once

// Max-Sum Diversification over an explicitly listed point set: best-swap
// local search with a fixed iteration budget, the one-at-a-time greedy,
// exhaustive search for constant k, and the PTAS driver that picks between
// them.

#include <cmath>
#include <cstdint>
#include <vector>

#include "divsol/core.hpp"

namespace divsol {

/// Exact rational accuracy parameter in (0, 1).
struct Epsilon {
    std::int64_t num = 0;
    std::int64_t den = 1;

    void validate() const {
        if (den <= 0 || num <= 0 || num >= den) fail_invalid("epsilon must lie in (0,1)");
    }
    /// True when k < 2/epsilon, i.e. the brute-force / exact branch applies.
    bool exact_branch(std::size_t k) const {
        validate();
        return static_cast<Wide>(k) * num < Wide(2) * den;
    }
};

/// Pairwise-distinct solutions over one ground set.
struct ExplicitPointSet {
    std::vector<Solution> points;

    void validate(const GroundSet& g) const {
        if (points.empty()) fail_invalid("point set must be nonempty");
        for (const Solution& p : points)
            if (p.universe() != g.size()) fail_invalid("point does not match the ground set");
        std::vector<const Solution*> order;
        order.reserve(points.size());
        for (const Solution& p : points) order.push_back(&p);
        std::sort(order.begin(), order.end(),
                  [](const Solution* a, const Solution* b) { return canonical_less(*a, *b); });
        for (std::size_t i = 1; i < order.size(); ++i)
            if (*order[i - 1] == *order[i]) fail_invalid("point set contains duplicates");
    }
};

/// Swap-iteration budget ceil(k(k-1)/(k+1) * ln((k+2)(k-1)^2 / 4)).
inline std::size_t iteration_budget(std::size_t k) {
    if (k < 2) fail_invalid("iteration budget requires k >= 2");
    const long double kk = static_cast<long double>(k);
    const long double t =
        kk * (kk - 1) / (kk + 1) * std::log((kk + 2) * (kk - 1) * (kk - 1) / 4.0L);
    return static_cast<std::size_t>(std::ceil(t));
}

struct LocalSearchReport {
    std::size_t iterations_run = 0;
    std::size_t improvements_made = 0;
    Value final_value = 0;
    std::vector<std::size_t> selected;  // k distinct indices into the point set
};

namespace detail {

/// Distance evaluator with an optional dense cache.
class PointDistances {
public:
    PointDistances(const ExplicitPointSet& pts, const GroundSet& g)
        : pts_(pts), g_(g), n_(pts.points.size()) {
        if (n_ <= 4096) {
            cache_.assign(n_ * n_, 0);
            for (std::size_t i = 0; i < n_; ++i)
                for (std::size_t j = i + 1; j < n_; ++j)
                    cache_[i * n_ + j] = cache_[j * n_ + i] =
                        hamming_distance(g_, pts_.points[i], pts_.points[j]);
            cached_ = true;
        }
    }

    Value operator()(std::size_t i, std::size_t j) const {
        if (i == j) return 0;
        if (cached_) return cache_[i * n_ + j];
        return hamming_distance(g_, pts_.points[i], pts_.points[j]);
    }

private:
    const ExplicitPointSet& pts_;
    const GroundSet& g_;
    std::size_t n_;
    bool cached_ = false;
    std::vector<Value> cache_;
};

inline Value selection_value(const PointDistances& d, const std::vector<std::size_t>& sel) {
    Wide total = 0;
    for (std::size_t i = 0; i < sel.size(); ++i)
        for (std::size_t j = i + 1; j < sel.size(); ++j) total += d(sel[i], sel[j]);
    return narrow_checked(total, "selection_value");
}

}  // namespace detail

/// Best-swap local search. Starts from the first k points in input order;
/// every iteration applies the single swap (x in, y out) with the largest
/// strict diversity gain, ties broken by smallest (y, x) index pair.
inline LocalSearchReport local_search(const ExplicitPointSet& points, const GroundSet& g,
                                      std::size_t k) {
    points.validate(g);
    if (k < 2) fail_invalid("local search requires k >= 2");
    const std::size_t n = points.points.size();
    if (n < k) fail_infeasible("fewer points than k");

    detail::PointDistances dist(points, g);
    LocalSearchReport rep;
    std::vector<std::size_t> sel(k);
    for (std::size_t i = 0; i < k; ++i) sel[i] = i;
    std::vector<char> in_sel(n, 0);
    for (std::size_t i : sel) in_sel[i] = 1;

    Value cur = detail::selection_value(dist, sel);
    const std::size_t budget = iteration_budget(k);
    std::vector<Value> row(n, 0);  // summed distance from each point to the selection

    for (std::size_t iter = 1; iter <= budget; ++iter) {
        rep.iterations_run = iter;
        for (std::size_t p = 0; p < n; ++p) {
            Wide s = 0;
            for (std::size_t q : sel) s += dist(p, q);
            row[p] = narrow_checked(s, "local_search row");
        }
        Value best_gain = 0;
        std::size_t best_y = 0, best_x = 0;
        bool found = false;
        for (std::size_t y : sel) {
            for (std::size_t x = 0; x < n; ++x) {
                if (in_sel[x]) continue;
                const Value gain = row[x] - row[y] - dist(x, y);
                if (gain > best_gain) {
                    best_gain = gain;
                    best_y = y;
                    best_x = x;
                    found = true;
                }
            }
        }
        if (!found) break;  // every later iteration would be the same no-op
        for (std::size_t& s : sel)
            if (s == best_y) s = best_x;
        std::sort(sel.begin(), sel.end());
        in_sel[best_y] = 0;
        in_sel[best_x] = 1;
        cur += best_gain;
        ++rep.improvements_made;
    }

    rep.final_value = cur;
    rep.selected = sel;
    return rep;
}

/// One-at-a-time greedy: start from the first point, repeatedly add the
/// point with the largest summed distance to the chosen set (smallest index
/// on ties).
inline std::vector<std::size_t> greedy(const ExplicitPointSet& points, const GroundSet& g,
                                       std::size_t k) {
    points.validate(g);
    if (k < 1) fail_invalid("greedy requires k >= 1");
    const std::size_t n = points.points.size();
    if (n < k) fail_infeasible("fewer points than k");

    detail::PointDistances dist(points, g);
    std::vector<std::size_t> chosen{0};
    std::vector<char> picked(n, 0);
    picked[0] = 1;
    std::vector<Wide> summed(n, 0);
    for (std::size_t p = 0; p < n; ++p) summed[p] = dist(p, 0);

    while (chosen.size() < k) {
        std::size_t best = n;
        for (std::size_t p = 0; p < n; ++p) {
            if (picked[p]) continue;
            if (best == n || summed[p] > summed[best]) best = p;
        }
        picked[best] = 1;
        chosen.push_back(best);
        for (std::size_t p = 0; p < n; ++p) summed[p] += dist(p, best);
    }
    std::sort(chosen.begin(), chosen.end());
    return chosen;
}

/// Exhaustive optimum over all k-subsets of the point set. Deterministic
/// tie-break: the lexicographically smallest index tuple.
inline std::vector<std::size_t> exact_bruteforce(const ExplicitPointSet& points,
                                                 const GroundSet& g, std::size_t k,
                                                 std::uint64_t budget = 10'000'000) {
    points.validate(g);
    const std::size_t n = points.points.size();
    if (k < 1) fail_invalid("exact search requires k >= 1");
    if (n < k) fail_infeasible("fewer points than k");
    {
        // C(n, k) against the budget, clamped.
        std::uint64_t c = 1;
        const std::uint64_t kk = std::min<std::uint64_t>(k, n - k);
        for (std::uint64_t i = 1; i <= kk && c < budget; ++i) c = c * (n - kk + i) / i;
        if (c >= budget) fail_resource("k-subset enumeration exceeds the configured budget");
    }

    detail::PointDistances dist(points, g);
    std::vector<std::size_t> best, pick;
    Value best_value = -1;
    auto rec = [&](auto&& self, std::size_t next, Value acc) -> void {
        if (pick.size() == k) {
            if (acc > best_value) {
                best_value = acc;
                best = pick;
            }
            return;
        }
        for (std::size_t i = next; i + (k - pick.size()) <= n; ++i) {
            Wide add = 0;
            for (std::size_t p : pick) add += dist(p, i);
            pick.push_back(i);
            self(self, i + 1, narrow_checked(acc + add, "exact_bruteforce"));
            pick.pop_back();
        }
    };
    rec(rec, 0, 0);
    return best;
}

/// PTAS branch: exhaustive search while k < 2/epsilon (the answer is then
/// exact), best-swap local search otherwise (factor 1 - 2/k >= 1 - epsilon).
inline std::vector<std::size_t> ptas_select(const ExplicitPointSet& points, const GroundSet& g,
                                            std::size_t k, const Epsilon& epsilon,
                                            std::uint64_t bruteforce_budget = 10'000'000) {
    epsilon.validate();
    if (epsilon.exact_branch(k)) return exact_bruteforce(points, g, k, bruteforce_budget);
    return local_search(points, g, k).selected;
}

}  // namespace divsol
