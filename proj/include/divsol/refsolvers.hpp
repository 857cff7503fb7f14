#pragma once

// Brute-force reference solvers. Everything here works straight from the
// problem definitions (subset / bipartition checking) and shares no code
// with the optimized solvers beyond the ground types, so it can serve as an
// independent oracle for them.

#include <cstdint>
#include <optional>

#include "divsol/core.hpp"
#include "divsol/instances.hpp"

namespace divsol::refsolvers {

inline constexpr std::uint64_t kDefaultCombinationBudget = 10'000'000;

/// C(n, k) clamped at `cap` to avoid overflow.
inline std::uint64_t combination_count(std::uint64_t n, std::uint64_t k,
                                       std::uint64_t cap = ~std::uint64_t(0)) {
    if (k > n) return 0;
    k = std::min(k, n - k);
    std::uint64_t c = 1;
    for (std::uint64_t i = 1; i <= k; ++i) {
        if (c > cap / (n - k + i)) return cap;
        c = c * (n - k + i) / i;
        if (c >= cap) return cap;
    }
    return c;
}

/// Every feasible solution of an instance, sorted canonically.
struct ExhaustiveCatalog {
    std::vector<Solution> solutions;

    std::size_t size() const { return solutions.size(); }
    const Solution& operator[](std::size_t i) const { return solutions[i]; }

    bool contains(const Solution& s) const {
        for (const Solution& x : solutions)
            if (x == s) return true;
        return false;
    }
};

// ---- Definitional membership predicates ----------------------------------

/// Matching of size exactly r: no two chosen edges share an endpoint.
inline bool is_matching_of_size(const UGraph& g, const Solution& s, std::size_t r) {
    if (s.size() != r) return false;
    std::vector<char> used(g.num_vertices, 0);
    for (ElementId e : s.members()) {
        if (e >= g.edges.size()) return false;
        const auto& ed = g.edges[e];
        if (used[ed.u] || used[ed.v]) return false;
        used[ed.u] = used[ed.v] = 1;
    }
    return true;
}

/// Base of a matroid: independent and maximal under single-element additions.
inline bool is_base(const MatroidOracle& m, const Solution& s) {
    std::vector<ElementId> set(s.members());
    if (!m.independent(set)) return false;
    for (ElementId e = 0; e < m.ground_size(); ++e) {
        if (s.contains(e)) continue;
        std::vector<ElementId> grown(set);
        grown.insert(std::upper_bound(grown.begin(), grown.end(), e), e);
        if (m.independent(grown)) return false;
    }
    return true;
}

inline bool is_common_base(const MatroidOracle& m1, const MatroidOracle& m2,
                           const Solution& s) {
    return is_base(m1, s) && is_base(m2, s);
}

/// Pairwise non-overlapping interval set of size exactly r.
inline bool is_scheduling_of_size(const std::vector<Interval>& iv, const Solution& s,
                                  std::size_t r) {
    if (s.size() != r) return false;
    const auto& m = s.members();
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = i + 1; j < m.size(); ++j)
            if (overlaps(iv[m[i]], iv[m[j]])) return false;
    return true;
}

/// Crossing edge set of some vertex bipartition, of size exactly lambda.
/// Checked by 2-coloring the components of g minus the candidate edges.
inline bool is_cut_edge_set(const UGraph& g, const Solution& s) {
    const std::size_t n = g.num_vertices;
    if (n < 2) return false;
    std::vector<std::vector<std::uint32_t>> adj(n);
    for (std::size_t e = 0; e < g.edges.size(); ++e) {
        if (s.contains(static_cast<ElementId>(e))) continue;
        adj[g.edges[e].u].push_back(g.edges[e].v);
        adj[g.edges[e].v].push_back(g.edges[e].u);
    }
    std::vector<std::uint32_t> comp(n, ~0u);
    std::uint32_t ncomp = 0;
    for (std::uint32_t s0 = 0; s0 < n; ++s0) {
        if (comp[s0] != ~0u) continue;
        comp[s0] = ncomp;
        std::vector<std::uint32_t> stack{s0};
        while (!stack.empty()) {
            const std::uint32_t u = stack.back();
            stack.pop_back();
            for (std::uint32_t v : adj[u])
                if (comp[v] == ~0u) {
                    comp[v] = ncomp;
                    stack.push_back(v);
                }
        }
        ++ncomp;
    }
    // Every candidate edge must join two different components, and the
    // component graph over the candidate edges must be 2-colorable with at
    // least one component on each side.
    std::vector<std::vector<std::uint32_t>> cadj(ncomp);
    for (ElementId e : s.members()) {
        const std::uint32_t a = comp[g.edges[e].u], b = comp[g.edges[e].v];
        if (a == b) return false;
        cadj[a].push_back(b);
        cadj[b].push_back(a);
    }
    if (s.empty()) return false;  // both sides nonempty needs a crossing edge in a connected graph
    std::vector<int> color(ncomp, -1);
    for (std::uint32_t c0 = 0; c0 < ncomp; ++c0) {
        if (color[c0] != -1 || cadj[c0].empty()) continue;
        color[c0] = 0;
        std::vector<std::uint32_t> stack{c0};
        while (!stack.empty()) {
            const std::uint32_t u = stack.back();
            stack.pop_back();
            for (std::uint32_t v : cadj[u]) {
                if (color[v] == -1) {
                    color[v] = 1 - color[u];
                    stack.push_back(v);
                } else if (color[v] == color[u]) {
                    return false;
                }
            }
        }
    }
    return true;
}

inline bool is_min_cut(const UGraph& g, std::size_t lambda, const Solution& s) {
    return s.size() == lambda && is_cut_edge_set(g, s);
}

// ---- Definitional enumeration ---------------------------------------------

inline ExhaustiveCatalog enumerate_matchings(const UGraph& g, std::size_t r,
                                             std::uint64_t budget = kDefaultCombinationBudget) {
    g.validate();
    const std::size_t m = g.edges.size();
    if (combination_count(m, r, budget) >= budget)
        fail_resource("matching enumeration exceeds the exhaustive budget");
    ExhaustiveCatalog out;
    std::vector<char> used(g.num_vertices, 0);
    std::vector<ElementId> chosen;
    auto rec = [&](auto&& self, std::size_t next) -> void {
        if (chosen.size() == r) {
            out.solutions.emplace_back(m, chosen);
            return;
        }
        if (m - next < r - chosen.size()) return;
        for (std::size_t e = next; e < m; ++e) {
            const auto& ed = g.edges[e];
            if (used[ed.u] || used[ed.v]) continue;
            used[ed.u] = used[ed.v] = 1;
            chosen.push_back(static_cast<ElementId>(e));
            self(self, e + 1);
            chosen.pop_back();
            used[ed.u] = used[ed.v] = 0;
        }
    };
    rec(rec, 0);
    std::sort(out.solutions.begin(), out.solutions.end(), canonical_less);
    return out;
}

inline ExhaustiveCatalog enumerate_common_bases(const MatroidOracle& m1,
                                                const MatroidOracle& m2,
                                                std::uint64_t budget = 1u << 20) {
    if (m1.ground_size() != m2.ground_size())
        fail_invalid("matroids must share one ground set");
    const std::size_t n = m1.ground_size();
    if (n >= 63 || (std::uint64_t(1) << n) > budget)
        fail_resource("common-base enumeration exceeds the exhaustive budget");
    ExhaustiveCatalog out;
    std::vector<ElementId> set;
    for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << n); ++mask) {
        set.clear();
        for (std::size_t e = 0; e < n; ++e)
            if (mask & (std::uint64_t(1) << e)) set.push_back(static_cast<ElementId>(e));
        Solution s(n, set);
        if (is_common_base(m1, m2, s)) out.solutions.push_back(std::move(s));
    }
    std::sort(out.solutions.begin(), out.solutions.end(), canonical_less);
    return out;
}

/// All minimum cuts (by crossing-set cardinality) via direct bipartition
/// checking, deduplicated by edge set. Also reports lambda.
struct MinCutCatalog {
    std::size_t lambda = 0;
    ExhaustiveCatalog catalog;
};

inline MinCutCatalog enumerate_min_cuts_bruteforce(const UGraph& g,
                                                   std::uint64_t budget = std::uint64_t(1) << 24) {
    g.validate();
    if (!g.connected()) fail_invalid("minimum cuts require a connected graph");
    const std::size_t n = g.num_vertices;
    if (n < 2) fail_invalid("minimum cuts require at least two vertices");
    if (n >= 40 || (std::uint64_t(1) << (n - 1)) > budget)
        fail_resource("cut enumeration exceeds the exhaustive budget");
    const std::size_t m = g.edges.size();
    std::size_t lambda = m + 1;
    std::vector<Solution> cuts;
    std::vector<ElementId> crossing;
    // Vertex 0 stays on one fixed side so each bipartition appears once.
    for (std::uint64_t mask = 1; mask < (std::uint64_t(1) << (n - 1)); ++mask) {
        crossing.clear();
        bool over = false;
        for (std::size_t e = 0; e < m && !over; ++e) {
            const bool su = g.edges[e].u != 0 && (mask >> (g.edges[e].u - 1)) & 1;
            const bool sv = g.edges[e].v != 0 && (mask >> (g.edges[e].v - 1)) & 1;
            if (su != sv) {
                crossing.push_back(static_cast<ElementId>(e));
                if (crossing.size() > lambda) over = true;
            }
        }
        if (over) continue;
        if (crossing.size() < lambda) {
            lambda = crossing.size();
            cuts.clear();
        }
        if (crossing.size() == lambda) cuts.emplace_back(m, crossing);
    }
    std::sort(cuts.begin(), cuts.end(), canonical_less);
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    MinCutCatalog out;
    out.lambda = lambda;
    out.catalog.solutions = std::move(cuts);
    return out;
}

inline ExhaustiveCatalog enumerate_schedulings(const std::vector<Interval>& iv, std::size_t r,
                                               std::uint64_t budget = kDefaultCombinationBudget) {
    const std::size_t n = iv.size();
    if (combination_count(n, r, budget) >= budget)
        fail_resource("scheduling enumeration exceeds the exhaustive budget");
    ExhaustiveCatalog out;
    std::vector<ElementId> chosen;
    auto rec = [&](auto&& self, std::size_t next) -> void {
        if (chosen.size() == r) {
            out.solutions.emplace_back(n, chosen);
            return;
        }
        if (n - next < r - chosen.size()) return;
        for (std::size_t i = next; i < n; ++i) {
            bool ok = true;
            for (ElementId c : chosen)
                if (overlaps(iv[c], iv[i])) {
                    ok = false;
                    break;
                }
            if (!ok) continue;
            chosen.push_back(static_cast<ElementId>(i));
            self(self, i + 1);
            chosen.pop_back();
        }
    };
    rec(rec, 0);
    std::sort(out.solutions.begin(), out.solutions.end(), canonical_less);
    return out;
}

/// Dispatch on the instance kind.
inline ExhaustiveCatalog enumerate_all(const ProblemInstance& inst) {
    if (const auto* p = std::get_if<MatchingProblem>(&inst))
        return enumerate_matchings(p->graph, p->r);
    if (const auto* p = std::get_if<MatroidProblem>(&inst))
        return enumerate_common_bases(*p->m1, *p->m2);
    if (const auto* p = std::get_if<MinCutProblem>(&inst))
        return enumerate_min_cuts_bruteforce(p->graph).catalog;
    const auto& p = std::get<IntervalProblem>(inst);
    return enumerate_schedulings(p.intervals, p.r);
}

// ---- Exhaustive diversity maximization -------------------------------------

struct ExactDiversity {
    Value value = 0;
    std::vector<std::size_t> witness;  // indices into the catalog
};

/// True optimum of Max-Sum Diverse Solutions over a catalog: tries every
/// k-subset, summing pairwise distances (the defining formula).
inline ExactDiversity exact_diversity(const ExhaustiveCatalog& catalog, const GroundSet& g,
                                      std::size_t k,
                                      std::uint64_t budget = kDefaultCombinationBudget) {
    const std::size_t n = catalog.size();
    if (n < k) fail_infeasible("fewer than k feasible solutions");
    if (k == 0) fail_invalid("k must be at least 1");
    if (combination_count(n, k, budget) >= budget)
        fail_resource("exhaustive diversity exceeds the combination budget");

    // Pairwise distance cache when it fits.
    const bool cache = n <= 2048;
    std::vector<Value> dist;
    if (cache) {
        dist.resize(n * n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                dist[i * n + j] = dist[j * n + i] =
                    hamming_distance(g, catalog[i], catalog[j]);
    }
    auto d = [&](std::size_t i, std::size_t j) {
        return cache ? dist[i * n + j] : hamming_distance(g, catalog[i], catalog[j]);
    };

    ExactDiversity best;
    best.value = -1;
    std::vector<std::size_t> pick;
    // Lexicographic enumeration; strict improvement keeps the smallest tuple.
    auto rec = [&](auto&& self, std::size_t next, Value acc) -> void {
        if (pick.size() == k) {
            if (acc > best.value) {
                best.value = acc;
                best.witness = pick;
            }
            return;
        }
        for (std::size_t i = next; i + (k - pick.size()) <= n; ++i) {
            Wide add = 0;
            for (std::size_t p : pick) add += d(p, i);
            pick.push_back(i);
            self(self, i + 1, narrow_checked(acc + add, "exact_diversity"));
            pick.pop_back();
        }
    };
    rec(rec, 0, 0);
    return best;
}

}  // namespace divsol::refsolvers
