#pragma once

// Oracle-driven Max-Sum Diverse Solutions: top-k enumeration by Lawler
// partitioning over a Weighted Extension oracle, and the local-search /
// greedy solvers built on it. The feasible set is never materialized.

#include <cassert>
#include <future>
#include <map>
#include <optional>
#include <queue>
#include <vector>

#include "divsol/core.hpp"
#include "divsol/diversify.hpp"
#include "divsol/extension.hpp"

namespace divsol {

struct SolveStats {
    std::size_t oracle_calls = 0;
    std::size_t iterations = 0;
    std::size_t improvements = 0;

    void merge(const SolveStats& o) { oracle_calls += o.oracle_calls; }
};

/// How equal-objective solutions are ordered in topk_enumerate.
enum class TieOrder {
    /// Exact: equal-score runs appear in canonical solution order, matching
    /// a full sort of the feasible set. Boundary ties cost extra oracle
    /// calls to resolve.
    Canonical,
    /// Arbitrary-but-deterministic (whatever the oracle returns). Used for
    /// the all-zero initialization objective, where every solution ties.
    OracleGiven,
};

namespace detail {

struct LawlerNode {
    std::vector<ElementId> forced_in;
    std::vector<ElementId> forced_out;
    Solution best;
    Value score = 0;
};

inline std::optional<Solution> node_solve(const ExtensionOracle& oracle, std::size_t ground,
                                          const SignedWeights& objective,
                                          const std::vector<ElementId>& in,
                                          const std::vector<ElementId>& out,
                                          SolveStats& stats) {
    ExtensionQuery q;
    q.forced_in = Solution(ground, in);
    q.forced_out = Solution(ground, out);
    q.objective = objective;
    ++stats.oracle_calls;
    return oracle.solve(q);
}

/// Replace node.best with the canonical-least maximizer of its subproblem by
/// deciding each element's membership in ascending order.
inline void pin_canonical(const ExtensionOracle& oracle, std::size_t ground,
                          const SignedWeights& objective, LawlerNode& node, SolveStats& stats) {
    std::vector<ElementId> in(node.forced_in);
    std::vector<ElementId> out(node.forced_out);
    std::vector<char> decided(ground, 0);
    for (ElementId e : in) decided[e] = 1;
    for (ElementId e : out) decided[e] = 1;
    for (ElementId e = 0; e < ground; ++e) {
        if (decided[e]) continue;
        in.push_back(e);
        std::sort(in.begin(), in.end());
        const auto sol = node_solve(oracle, ground, objective, in, out, stats);
        Value score = 0;
        if (sol) {
            score = signed_total(objective, *sol);
            if (score > node.score) fail_contract("extension oracle returned a non-optimal node score");
        }
        if (!sol || score < node.score) {
            in.erase(std::find(in.begin(), in.end(), e));
            out.push_back(e);
        }
    }
    std::sort(in.begin(), in.end());
    node.best = Solution(ground, in);
    assert(signed_total(objective, node.best) == node.score);
}

}  // namespace detail

/// Top-k enumeration for (E, X, objective, k): returns min(k, |X|) distinct
/// feasible solutions in nonincreasing objective order; every returned
/// solution scores at least as high as every feasible solution not returned.
inline std::vector<Solution> topk_enumerate(const ExtensionOracle& oracle, const GroundSet& g,
                                            const SignedWeights& objective, std::size_t k,
                                            SolveStats& stats,
                                            TieOrder ties = TieOrder::Canonical) {
    const std::size_t ground = oracle.ground_size();
    if (ground != g.size() || objective.size() != ground)
        fail_invalid("objective does not match the oracle's ground set");
    if (k < 1) fail_invalid("top-k enumeration requires k >= 1");

    using detail::LawlerNode;
    std::vector<LawlerNode> arena;

    // Pinned nodes ordered by (score desc, canonical best asc).
    auto cmp = [&arena](std::size_t a, std::size_t b) {
        if (arena[a].score != arena[b].score) return arena[a].score < arena[b].score;
        return canonical_less(arena[b].best, arena[a].best);
    };
    std::priority_queue<std::size_t, std::vector<std::size_t>, decltype(cmp)> pinned(cmp);
    // Unpinned nodes bucketed by score, best first.
    std::map<Value, std::vector<std::size_t>, std::greater<Value>> unpinned;

    auto add_node = [&](std::vector<ElementId> in, std::vector<ElementId> out) {
        const auto sol = detail::node_solve(oracle, ground, objective, in, out, stats);
        if (!sol) return;
        LawlerNode node;
        node.forced_in = std::move(in);
        node.forced_out = std::move(out);
        node.score = signed_total(objective, *sol);
        node.best = std::move(*sol);
        arena.push_back(std::move(node));
        if (ties == TieOrder::Canonical)
            unpinned[arena.back().score].push_back(arena.size() - 1);
        else
            pinned.push(arena.size() - 1);
    };

    add_node({}, {});

    std::vector<Solution> out;
    out.reserve(k);
    while (out.size() < k) {
        const bool have_unpinned = !unpinned.empty();
        if (pinned.empty() && !have_unpinned) break;
        if (have_unpinned &&
            (pinned.empty() || unpinned.begin()->first >= arena[pinned.top()].score)) {
            auto bucket = unpinned.begin();
            const std::size_t idx = bucket->second.back();
            bucket->second.pop_back();
            if (bucket->second.empty()) unpinned.erase(bucket);
            detail::pin_canonical(oracle, ground, objective, arena[idx], stats);
            pinned.push(idx);
            continue;
        }
        const std::size_t idx = pinned.top();
        pinned.pop();
        const LawlerNode& node = arena[idx];
        assert(out.empty() || signed_total(objective, out.back()) >= node.score);
        out.push_back(node.best);
        if (out.size() == k) break;
        // Partition the node's cell around its best solution.
        std::vector<ElementId> branch;
        for (ElementId e : node.best.members())
            if (std::find(node.forced_in.begin(), node.forced_in.end(), e) ==
                node.forced_in.end())
                branch.push_back(e);
        std::vector<ElementId> in(node.forced_in);
        for (ElementId b : branch) {
            std::vector<ElementId> child_out(arena[idx].forced_out);
            child_out.push_back(b);
            std::sort(child_out.begin(), child_out.end());
            std::vector<ElementId> child_in(in);
            std::sort(child_in.begin(), child_in.end());
            add_node(std::move(child_in), std::move(child_out));
            in.push_back(b);
        }
    }
    return out;
}

inline std::vector<Solution> topk_enumerate(const ExtensionOracle& oracle, const GroundSet& g,
                                            const SignedWeights& objective, std::size_t k,
                                            TieOrder ties = TieOrder::Canonical) {
    SolveStats stats;
    return topk_enumerate(oracle, g, objective, k, stats, ties);
}

struct DiverseResult {
    std::vector<Solution> solutions;
    Value value = 0;
    SolveStats stats;
    bool greedy_won = false;  // the k <= 4 greedy comparison produced the result
};

struct SolveOptions {
    /// Evaluate the k removal candidates of each local-search iteration
    /// concurrently (only honored when the oracle declares itself safe).
    bool parallel = false;
    /// For k <= 4, also run the greedy solver and keep the better family,
    /// which realizes the max(1-2/k, 1/2) guarantee.
    bool greedy_compare = true;
};

/// Greedy solver: seed with one feasible solution, then repeatedly add the
/// feasible solution with the largest summed distance to the family.
/// Factor 1/2.
inline DiverseResult solve_diverse_greedy(const ExtensionOracle& oracle, const GroundSet& g,
                                          std::size_t k) {
    if (k < 1) fail_invalid("greedy solve requires k >= 1");
    const std::size_t ground = oracle.ground_size();
    if (ground != g.size()) fail_invalid("oracle does not match the ground set");

    DiverseResult res;
    const SignedWeights zero(ground, 0);
    const auto seed =
        detail::node_solve(oracle, ground, zero, {}, {}, res.stats);
    if (!seed) fail_infeasible("no feasible solution exists");

    SolutionFamily family(g);
    family.add(*seed);
    while (family.size() < k) {
        const Reweighting rw = reweight(g, family);
        const auto cands =
            topk_enumerate(oracle, g, rw.weights, family.size() + 1, res.stats);
        const Solution* next = nullptr;
        for (const Solution& c : cands)
            if (!family.contains(c)) {
                next = &c;
                break;
            }
        if (next == nullptr) fail_infeasible("fewer than k feasible solutions");
        family.add(*next);
    }
    res.solutions = family.solutions();
    res.value = sum_diversity(g, family);
    return res;
}

namespace detail {

struct SwapCandidate {
    bool found = false;
    Value gain = 0;
    std::size_t removal = 0;
    Solution candidate;
};

/// Best replacement for family member `removal`, scored by the reweighted
/// objective (equal to the diversity change by the linearization identity).
inline SwapCandidate evaluate_removal(const ExtensionOracle& oracle, const GroundSet& g,
                                      const std::vector<Solution>& members, std::size_t removal,
                                      std::size_t k, SolveStats& stats) {
    SolutionFamily rest(g);
    for (std::size_t j = 0; j < members.size(); ++j)
        if (j != removal) rest.add(members[j]);
    const Reweighting rw = reweight(g, rest);
    const auto cands = topk_enumerate(oracle, g, rw.weights, k, stats);
    SwapCandidate out;
    for (const Solution& c : cands) {
        if (rest.contains(c)) continue;  // keep the family set-distinct
        out.found = true;
        out.removal = removal;
        out.candidate = c;
        out.gain = signed_total(rw.weights, c) - signed_total(rw.weights, members[removal]);
        break;  // candidates arrive best-first
    }
    return out;
}

}  // namespace detail

/// Local-search solver over the implicit feasible set (factor
/// max(1 - 2/k, 1/2)): initialize with k distinct feasible solutions, then
/// run the swap iterations, finding each removal's best replacement through
/// reweighting plus top-k enumeration.
inline DiverseResult solve_diverse(const ExtensionOracle& oracle, const GroundSet& g,
                                   std::size_t k, const SolveOptions& opts = {}) {
    if (k < 2) fail_invalid("diverse solve requires k >= 2");
    const std::size_t ground = oracle.ground_size();
    if (ground != g.size()) fail_invalid("oracle does not match the ground set");

    DiverseResult res;
    const SignedWeights zero(ground, 0);
    const auto init = topk_enumerate(oracle, g, zero, k, res.stats, TieOrder::OracleGiven);
    if (init.size() < k) fail_infeasible("fewer than k feasible solutions");

    SolutionFamily family(g);
    for (const Solution& s : init) family.add(s);
    Value value = sum_diversity(g, family);

    const std::size_t budget = iteration_budget(k);
    const bool parallel = opts.parallel && oracle.concurrent_safe();

    for (std::size_t iter = 1; iter <= budget; ++iter) {
        res.stats.iterations = iter;
        const std::vector<Solution>& members = family.solutions();
        std::vector<detail::SwapCandidate> cands(k);
        if (parallel) {
            std::vector<SolveStats> local(k);
            std::vector<std::future<detail::SwapCandidate>> futs;
            futs.reserve(k);
            for (std::size_t i = 0; i < k; ++i)
                futs.push_back(std::async(std::launch::async, [&, i] {
                    return detail::evaluate_removal(oracle, g, members, i, k, local[i]);
                }));
            for (std::size_t i = 0; i < k; ++i) {
                cands[i] = futs[i].get();
                res.stats.merge(local[i]);
            }
        } else {
            for (std::size_t i = 0; i < k; ++i)
                cands[i] = detail::evaluate_removal(oracle, g, members, i, k, res.stats);
        }
        // Deterministic reduction: largest gain, then smallest removal index.
        const detail::SwapCandidate* best = nullptr;
        for (const auto& c : cands)
            if (c.found && c.gain > 0 && (best == nullptr || c.gain > best->gain)) best = &c;
        if (best == nullptr) break;
        family.replace(best->removal, best->candidate);
        value += best->gain;
        ++res.stats.improvements;
        // Linearization consistency: the reweighted gain must equal the
        // directly recomputed diversity change.
        assert(sum_diversity(g, family) == value);
    }

    res.solutions = family.solutions();
    res.value = value;

    if (opts.greedy_compare && k <= 4) {
        DiverseResult alt = solve_diverse_greedy(oracle, g, k);
        res.stats.merge(alt.stats);
        if (alt.value > res.value) {
            res.solutions = std::move(alt.solutions);
            res.value = alt.value;
            res.greedy_won = true;
        }
    }
    return res;
}

}  // namespace divsol
