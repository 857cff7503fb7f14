#pragma once

// Diverse matchings backend: size-r matchings of a graph, with Weighted
// Extension reduced to maximum-weight perfect matching on an augmented
// graph (delete excluded edges and forced endpoints, then pad with dummy
// vertices joined to everything by zero-weight edges).

#include <optional>
#include <unordered_map>

#include "divsol/detail/blossom.hpp"
#include "divsol/extension.hpp"
#include "divsol/framework.hpp"
#include "divsol/instances.hpp"

namespace divsol {

struct MatchingInstance {
    UGraph graph;
    std::size_t r = 0;  // target matching size
    std::size_t k = 0;  // family size

    void validate() const {
        graph.validate();
        if (r < 1 || 2 * r > graph.num_vertices)
            fail_invalid("matching size r must satisfy 1 <= r <= |V|/2");
    }
};

/// Maximum-weight perfect matching as an edge-index set, or nullopt when the
/// graph has none (odd vertex count included). Exact for signed weights.
inline std::optional<Solution> max_weight_perfect_matching(const UGraph& g) {
    g.validate();
    if (g.num_vertices < 2) {
        if (g.num_vertices == 1) return std::nullopt;
        return Solution(g.edges.size(), {});
    }
    detail::BlossomMatcher matcher(g.num_vertices);
    std::unordered_map<std::uint64_t, ElementId> edge_id;
    edge_id.reserve(g.edges.size());
    for (std::size_t e = 0; e < g.edges.size(); ++e) {
        matcher.add_edge(static_cast<int>(g.edges[e].u), static_cast<int>(g.edges[e].v),
                         g.edges[e].weight);
        const std::uint64_t a = std::min(g.edges[e].u, g.edges[e].v);
        const std::uint64_t b = std::max(g.edges[e].u, g.edges[e].v);
        edge_id[(a << 32) | b] = static_cast<ElementId>(e);
    }
    const auto mate = matcher.solve();
    if (!mate) return std::nullopt;
    std::vector<ElementId> chosen;
    for (std::size_t u = 0; u < g.num_vertices; ++u) {
        const std::size_t v = static_cast<std::size_t>((*mate)[u]);
        if (v < u) continue;
        const std::uint64_t key = (std::uint64_t(u) << 32) | v;
        const auto it = edge_id.find(key);
        if (it == edge_id.end()) fail_contract("matcher used a non-edge");
        chosen.push_back(it->second);
    }
    return Solution(g.edges.size(), std::move(chosen));
}

/// Weighted Extension for size-r matchings: a size-r matching containing
/// forced_in, avoiding forced_out, maximizing the signed objective.
inline std::optional<Solution> matching_extension(const MatchingInstance& inst,
                                                  const ExtensionQuery& q) {
    const UGraph& g = inst.graph;
    const std::size_t m = g.edges.size();
    q.validate(m);

    const std::size_t in_count = q.forced_in.size();
    if (in_count > inst.r) return std::nullopt;

    // forced_in must itself be a matching.
    std::vector<char> removed_vertex(g.num_vertices, 0);
    for (ElementId e : q.forced_in.members()) {
        const auto& ed = g.edges[e];
        if (removed_vertex[ed.u] || removed_vertex[ed.v]) return std::nullopt;
        removed_vertex[ed.u] = removed_vertex[ed.v] = 1;
    }
    if (in_count == inst.r) return q.forced_in;

    // G': drop excluded edges and all endpoints of forced_in edges.
    std::vector<std::uint32_t> compact(g.num_vertices, ~0u);
    std::uint32_t nv = 0;
    for (std::uint32_t v = 0; v < g.num_vertices; ++v)
        if (!removed_vertex[v]) compact[v] = nv++;
    const std::size_t r_rem = inst.r - in_count;
    if (nv < 2 * r_rem) return std::nullopt;

    // H: G' plus nv - 2*r_rem dummy vertices joined to all of G' by
    // zero-weight edges; a maximum-weight perfect matching of H keeps
    // exactly r_rem real edges.
    const std::uint32_t dummies = nv - static_cast<std::uint32_t>(2 * r_rem);
    detail::BlossomMatcher matcher(nv + dummies);
    std::vector<std::vector<ElementId>> real_edge(nv);
    for (auto& row : real_edge) row.assign(nv, ~ElementId(0));
    for (std::size_t e = 0; e < m; ++e) {
        if (q.forced_out.contains(static_cast<ElementId>(e))) continue;
        const auto& ed = g.edges[e];
        if (removed_vertex[ed.u] || removed_vertex[ed.v]) continue;
        const std::uint32_t cu = compact[ed.u], cv = compact[ed.v];
        matcher.add_edge(static_cast<int>(cu), static_cast<int>(cv),
                         q.objective[e]);
        real_edge[cu][cv] = real_edge[cv][cu] = static_cast<ElementId>(e);
    }
    for (std::uint32_t d = 0; d < dummies; ++d)
        for (std::uint32_t v = 0; v < nv; ++v)
            matcher.add_edge(static_cast<int>(nv + d), static_cast<int>(v), 0);

    const auto mate = matcher.solve();
    if (!mate) return std::nullopt;

    std::vector<ElementId> chosen(q.forced_in.members());
    for (std::uint32_t u = 0; u < nv; ++u) {
        const std::uint32_t v = static_cast<std::uint32_t>((*mate)[u]);
        if (v < u || v >= nv) continue;  // dummy edge or counted already
        const ElementId e = real_edge[u][v];
        if (e == ~ElementId(0)) fail_contract("matcher used a non-edge");
        chosen.push_back(e);
    }
    if (chosen.size() != inst.r) fail_contract("extension produced a wrong-size matching");
    return Solution(m, std::move(chosen));
}

class MatchingExtensionOracle final : public ExtensionOracle {
public:
    explicit MatchingExtensionOracle(MatchingInstance inst) : inst_(std::move(inst)) {
        inst_.validate();
    }
    std::size_t ground_size() const override { return inst_.graph.edges.size(); }
    std::optional<Solution> solve(const ExtensionQuery& q) const override {
        return matching_extension(inst_, q);
    }
    const MatchingInstance& instance() const { return inst_; }

private:
    MatchingInstance inst_;
};

/// Diverse matchings: k set-distinct size-r matchings, factor
/// max(1 - 2/k, 1/2).
inline DiverseResult solve_diverse_matchings(const MatchingInstance& inst,
                                             const SolveOptions& opts = {}) {
    MatchingExtensionOracle oracle(inst);
    return solve_diverse(oracle, inst.graph.edge_ground_set(), inst.k, opts);
}

}  // namespace divsol
