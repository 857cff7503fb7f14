#pragma once

// Problem inputs shared across solvers, reference solvers, and the CLI.
// Plain data plus the matroid membership-oracle interface; no solver logic.

#include <cstdint>
#include <memory>
#include <numeric>
#include <variant>
#include <vector>

#include "divsol/core.hpp"

namespace divsol {

/// Simple undirected graph with signed scaled-integer edge weights.
/// Edge indices are the ground-set element ids for the matching and
/// minimum-cut backends.
struct UGraph {
    struct Edge {
        std::uint32_t u = 0;
        std::uint32_t v = 0;
        Value weight = 0;
    };

    std::size_t num_vertices = 0;
    std::vector<Edge> edges;

    void validate() const {
        if (num_vertices == 0) fail_invalid("graph must have at least one vertex");
        std::vector<std::uint64_t> seen;
        seen.reserve(edges.size());
        for (const Edge& e : edges) {
            if (e.u >= num_vertices || e.v >= num_vertices)
                fail_invalid("edge endpoint out of range");
            if (e.u == e.v) fail_invalid("self-loops are not allowed");
            if (e.weight > kMaxWeightMagnitude || e.weight < -kMaxWeightMagnitude)
                fail_invalid("edge weight exceeds supported magnitude");
            const std::uint64_t a = std::min(e.u, e.v);
            const std::uint64_t b = std::max(e.u, e.v);
            seen.push_back((a << 32) | b);
        }
        std::sort(seen.begin(), seen.end());
        if (std::adjacent_find(seen.begin(), seen.end()) != seen.end())
            fail_invalid("parallel edges are not allowed");
    }

    bool connected() const {
        if (num_vertices == 0) return false;
        std::vector<std::vector<std::uint32_t>> adj(num_vertices);
        for (const Edge& e : edges) {
            adj[e.u].push_back(e.v);
            adj[e.v].push_back(e.u);
        }
        std::vector<char> vis(num_vertices, 0);
        std::vector<std::uint32_t> stack{0};
        vis[0] = 1;
        std::size_t reached = 1;
        while (!stack.empty()) {
            const std::uint32_t u = stack.back();
            stack.pop_back();
            for (std::uint32_t v : adj[u])
                if (!vis[v]) {
                    vis[v] = 1;
                    ++reached;
                    stack.push_back(v);
                }
        }
        return reached == num_vertices;
    }

    GroundSet edge_ground_set() const {
        std::vector<Value> w;
        w.reserve(edges.size());
        for (const Edge& e : edges) w.push_back(e.weight);
        return GroundSet(std::move(w));
    }
};

/// One closed interval with integer endpoints after decimal scaling.
struct Interval {
    Value left = 0;
    Value right = 0;
    Value weight = 0;
};

/// Closed-interval intersection test; touching endpoints overlap.
inline bool overlaps(const Interval& a, const Interval& b) {
    return std::max(a.left, b.left) <= std::min(a.right, b.right);
}

/// Independence oracle. Query sets are strictly increasing element lists.
class MatroidOracle {
public:
    virtual ~MatroidOracle() = default;
    virtual std::size_t ground_size() const = 0;
    virtual bool independent(const std::vector<ElementId>& sorted_set) const = 0;
    /// Whether concurrent independent() queries are safe.
    virtual bool concurrent_safe() const { return true; }
};

/// Free matroid restricted to sets of at most `rank` elements.
class UniformMatroid final : public MatroidOracle {
public:
    UniformMatroid(std::size_t ground, std::size_t rank) : ground_(ground), rank_(rank) {}
    std::size_t ground_size() const override { return ground_; }
    std::size_t rank() const { return rank_; }
    bool independent(const std::vector<ElementId>& s) const override {
        return s.size() <= rank_;
    }

private:
    std::size_t ground_;
    std::size_t rank_;
};

/// Elements are partitioned into blocks; at most capacity[b] per block.
class PartitionMatroid final : public MatroidOracle {
public:
    PartitionMatroid(std::vector<std::uint32_t> block_of, std::vector<std::uint32_t> capacity)
        : block_of_(std::move(block_of)), capacity_(std::move(capacity)) {
        for (std::uint32_t b : block_of_)
            if (b >= capacity_.size()) fail_invalid("partition block id out of range");
    }
    std::size_t ground_size() const override { return block_of_.size(); }
    std::uint32_t block_of(ElementId e) const { return block_of_[e]; }
    const std::vector<std::uint32_t>& capacities() const { return capacity_; }
    bool independent(const std::vector<ElementId>& s) const override {
        counts_.assign(capacity_.size(), 0);
        for (ElementId e : s)
            if (++counts_[block_of_[e]] > capacity_[block_of_[e]]) return false;
        return true;
    }
    bool concurrent_safe() const override { return false; }  // scratch buffer

private:
    std::vector<std::uint32_t> block_of_;
    std::vector<std::uint32_t> capacity_;
    mutable std::vector<std::uint32_t> counts_;
};

/// Edges of a graph; independent sets are the acyclic edge subsets.
class GraphicMatroid final : public MatroidOracle {
public:
    explicit GraphicMatroid(UGraph graph) : graph_(std::move(graph)) { graph_.validate(); }
    std::size_t ground_size() const override { return graph_.edges.size(); }
    const UGraph& graph() const { return graph_; }
    bool independent(const std::vector<ElementId>& s) const override {
        parent_.resize(graph_.num_vertices);
        std::iota(parent_.begin(), parent_.end(), 0u);
        for (ElementId e : s) {
            const auto& ed = graph_.edges[e];
            const std::uint32_t a = find(ed.u), b = find(ed.v);
            if (a == b) return false;
            parent_[a] = b;
        }
        return true;
    }
    bool concurrent_safe() const override { return false; }  // scratch buffer

private:
    std::uint32_t find(std::uint32_t x) const {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }
    UGraph graph_;
    mutable std::vector<std::uint32_t> parent_;
};

/// Matroid rank via the greedy characterization, scanning elements in
/// ascending index order.
inline std::size_t matroid_rank(const MatroidOracle& m) {
    std::vector<ElementId> acc;
    for (ElementId e = 0; e < m.ground_size(); ++e) {
        acc.push_back(e);
        if (!m.independent(acc)) acc.pop_back();
    }
    return acc.size();
}

// ---- Tagged union of the four backends' inputs --------------------------

struct MatchingProblem {
    UGraph graph;
    std::size_t r = 0;
};

struct MatroidProblem {
    std::shared_ptr<MatroidOracle> m1;
    std::shared_ptr<MatroidOracle> m2;
    std::vector<Value> weights;  // ground-set element weights
};

struct MinCutProblem {
    UGraph graph;
};

struct IntervalProblem {
    std::vector<Interval> intervals;
    std::size_t r = 0;
};

using ProblemInstance =
    std::variant<MatchingProblem, MatroidProblem, MinCutProblem, IntervalProblem>;

}  // namespace divsol
