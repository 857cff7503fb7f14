#include <catch2/catch_amalgamated.hpp>

#include <optional>
#include <random>

#include "divsol/matching.hpp"
#include "divsol/refsolvers.hpp"

using namespace divsol;

namespace {

// Definitional oracle: best perfect matching by trying every partner of the
// lowest unmatched vertex.
std::optional<Value> brute_mwpm(const UGraph& g) {
    const std::size_t n = g.num_vertices;
    if (n % 2 != 0) return std::nullopt;
    std::vector<std::vector<std::pair<std::uint32_t, Value>>> adj(n);
    for (const auto& e : g.edges) {
        adj[e.u].push_back({e.v, e.weight});
        adj[e.v].push_back({e.u, e.weight});
    }
    std::vector<char> used(n, 0);
    std::optional<Value> best;
    auto rec = [&](auto&& self, Value acc) -> void {
        std::size_t u = n;
        for (std::size_t i = 0; i < n; ++i)
            if (!used[i]) {
                u = i;
                break;
            }
        if (u == n) {
            if (!best || acc > *best) best = acc;
            return;
        }
        used[u] = 1;
        for (const auto& [v, w] : adj[u]) {
            if (used[v]) continue;
            used[v] = 1;
            self(self, acc + w);
            used[v] = 0;
        }
        used[u] = 0;
    };
    rec(rec, 0);
    return best;
}

UGraph random_graph(std::mt19937& rng, std::size_t n, double density, Value wlo, Value whi) {
    UGraph g;
    g.num_vertices = n;
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    std::uniform_int_distribution<Value> weight(wlo, whi);
    for (std::uint32_t u = 0; u < n; ++u)
        for (std::uint32_t v = u + 1; v < n; ++v)
            if (coin(rng) < density) g.edges.push_back({u, v, weight(rng)});
    return g;
}

Value solution_weight(const UGraph& g, const Solution& s) {
    Value total = 0;
    for (ElementId e : s.members()) total += g.edges[e].weight;
    return total;
}

}  // namespace

TEST_CASE("perfect matching on the worked examples") {
    UGraph single;
    single.num_vertices = 2;
    single.edges = {{0, 1, 5}};
    auto m = max_weight_perfect_matching(single);
    REQUIRE(m.has_value());
    CHECK(m->members() == std::vector<ElementId>{0});
    CHECK(solution_weight(single, *m) == 5);

    UGraph cycle;  // 4-cycle with weights 1,9,1,9
    cycle.num_vertices = 4;
    cycle.edges = {{0, 1, 1}, {1, 2, 9}, {2, 3, 1}, {3, 0, 9}};
    m = max_weight_perfect_matching(cycle);
    REQUIRE(m.has_value());
    CHECK(solution_weight(cycle, *m) == 18);
    CHECK(m->members() == std::vector<ElementId>{1, 3});

    UGraph path;  // 3 vertices: odd, no perfect matching
    path.num_vertices = 3;
    path.edges = {{0, 1, 1}, {1, 2, 1}};
    CHECK_FALSE(max_weight_perfect_matching(path).has_value());

    UGraph star;  // even count but no perfect matching
    star.num_vertices = 4;
    star.edges = {{0, 1, 3}, {0, 2, 4}, {0, 3, 5}};
    CHECK_FALSE(max_weight_perfect_matching(star).has_value());
}

TEST_CASE("perfect matching matches brute force on random graphs") {
    std::mt19937 rng(4242);
    int feasible = 0;
    for (int trial = 0; trial < 400; ++trial) {
        const std::size_t n = 2 * (1 + rng() % 5);  // 2..10 vertices
        const double density = 0.25 + 0.7 * (rng() % 100) / 100.0;
        const UGraph g = random_graph(rng, n, density, -50, 50);
        const auto expect = brute_mwpm(g);
        const auto got = max_weight_perfect_matching(g);
        REQUIRE(got.has_value() == expect.has_value());
        if (!got) continue;
        ++feasible;
        CHECK(solution_weight(g, *got) == *expect);
        // Structural check: a perfect matching indeed.
        std::vector<char> used(g.num_vertices, 0);
        for (ElementId e : got->members()) {
            REQUIRE_FALSE(used[g.edges[e].u]);
            REQUIRE_FALSE(used[g.edges[e].v]);
            used[g.edges[e].u] = used[g.edges[e].v] = 1;
        }
        CHECK(std::count(used.begin(), used.end(), 1) == static_cast<long>(g.num_vertices));
    }
    CHECK(feasible > 100);
}

TEST_CASE("perfect matching handles all-negative weights natively") {
    std::mt19937 rng(77);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 2 * (2 + rng() % 3);
        const UGraph g = random_graph(rng, n, 0.8, -90, -1);
        const auto expect = brute_mwpm(g);
        const auto got = max_weight_perfect_matching(g);
        REQUIRE(got.has_value() == expect.has_value());
        if (got) CHECK(solution_weight(g, *got) == *expect);
    }
}

TEST_CASE("matching extension on the triangle") {
    MatchingInstance inst;
    inst.graph.num_vertices = 3;
    inst.graph.edges = {{0, 1, 1}, {1, 2, 1}, {0, 2, 1}};
    inst.r = 1;
    inst.k = 2;
    const std::size_t m = 3;

    ExtensionQuery q;
    q.forced_in = Solution(m, {});
    q.forced_out = Solution(m, {});
    q.objective = {3, 1, 1};
    auto s = matching_extension(inst, q);
    REQUIRE(s.has_value());
    CHECK(s->members() == std::vector<ElementId>{0});

    q.objective = {1, 1, 1};
    q.forced_in = Solution(m, {1});
    s = matching_extension(inst, q);
    REQUIRE(s.has_value());
    CHECK(s->members() == std::vector<ElementId>{1});

    q.forced_in = Solution(m, {});
    q.forced_out = Solution(m, {0, 1, 2});
    CHECK_FALSE(matching_extension(inst, q).has_value());

    // forced_in that is not a matching
    q.forced_out = Solution(m, {});
    q.forced_in = Solution(m, {0, 1});
    inst.r = 2;
    CHECK_FALSE(matching_extension(inst, q).has_value());
}

TEST_CASE("matching extension agrees with constrained brute force") {
    std::mt19937 rng(1337);
    for (int trial = 0; trial < 150; ++trial) {
        const std::size_t n = 4 + rng() % 5;  // 4..8 vertices
        MatchingInstance inst;
        inst.graph = random_graph(rng, n, 0.6, 1, 9);
        const std::size_t m = inst.graph.edges.size();
        if (m == 0) continue;
        inst.r = 1 + rng() % (n / 2);
        inst.k = 2;

        ExtensionQuery q;
        std::vector<ElementId> in, out;
        for (ElementId e = 0; e < m; ++e) {
            const int roll = static_cast<int>(rng() % 10);
            if (roll == 0) in.push_back(e);
            else if (roll < 3) out.push_back(e);
        }
        q.forced_in = Solution(m, in);
        q.forced_out = Solution(m, out);
        q.objective.resize(m);
        for (auto& w : q.objective) w = static_cast<Value>(rng() % 21) - 10;

        // Brute force over all size-r matchings satisfying the constraints.
        std::optional<Value> expect;
        try {
            const auto catalog = refsolvers::enumerate_matchings(inst.graph, inst.r);
            for (const Solution& cand : catalog.solutions) {
                bool ok = true;
                for (ElementId e : in) ok = ok && cand.contains(e);
                for (ElementId e : out) ok = ok && !cand.contains(e);
                if (!ok) continue;
                const Value v = signed_total(q.objective, cand);
                if (!expect || v > *expect) expect = v;
            }
        } catch (const Error&) {
            continue;
        }

        const auto got = matching_extension(inst, q);
        REQUIRE(got.has_value() == expect.has_value());
        if (!got) continue;
        CHECK(signed_total(q.objective, *got) == *expect);
        CHECK(refsolvers::is_matching_of_size(inst.graph, *got, inst.r));
        for (ElementId e : in) CHECK(got->contains(e));
        for (ElementId e : out) CHECK_FALSE(got->contains(e));
    }
}

TEST_CASE("diverse matchings on forced instances") {
    // k disjoint edges, r = 1: the k edges are the whole feasible set.
    for (std::size_t k = 2; k <= 6; ++k) {
        MatchingInstance inst;
        inst.graph.num_vertices = 2 * k;
        for (std::uint32_t i = 0; i < k; ++i)
            inst.graph.edges.push_back({2 * i, 2 * i + 1, 1});
        inst.r = 1;
        inst.k = k;
        const auto res = solve_diverse_matchings(inst);
        CHECK(res.value == static_cast<Value>(k * (k - 1)));
        CHECK(res.solutions.size() == k);
    }
}

TEST_CASE("diverse matchings reports infeasibility") {
    MatchingInstance inst;
    inst.graph.num_vertices = 4;
    inst.graph.edges = {{0, 1, 1}, {2, 3, 1}};
    inst.r = 1;
    inst.k = 3;  // only two 1-matchings exist
    CHECK_THROWS_AS(solve_diverse_matchings(inst), Error);
}

TEST_CASE("diverse matchings meet the approximation factor against brute force") {
    std::mt19937 rng(555);
    int checked = 0;
    for (int trial = 0; trial < 60; ++trial) {
        MatchingInstance inst;
        inst.graph = random_graph(rng, 5 + rng() % 4, 0.6, 1, 5);
        if (inst.graph.edges.size() < 3) continue;
        inst.r = 1 + rng() % 2;
        inst.k = 2 + rng() % 3;

        refsolvers::ExhaustiveCatalog catalog;
        try {
            catalog = refsolvers::enumerate_matchings(inst.graph, inst.r);
        } catch (const Error&) {
            continue;
        }
        if (catalog.size() < inst.k) continue;
        if (refsolvers::combination_count(catalog.size(), inst.k, 1 << 20) >= (1u << 20))
            continue;

        const GroundSet ground = inst.graph.edge_ground_set();
        const auto opt = refsolvers::exact_diversity(catalog, ground, inst.k);
        const auto res = solve_diverse_matchings(inst);
        ++checked;

        // value * 2k >= max(k-2, k/2... ) exact rational comparison of
        // value >= max(1 - 2/k, 1/2) * OPT:
        const Wide lhs = Wide(res.value) * 2 * static_cast<Wide>(inst.k);
        const Wide rhs = Wide(opt.value) *
                         std::max<Wide>(2 * static_cast<Wide>(inst.k) - 4,
                                        static_cast<Wide>(inst.k));
        CHECK(lhs >= rhs);
        // Every reported solution is feasible and the family is distinct.
        for (std::size_t i = 0; i < res.solutions.size(); ++i) {
            CHECK(refsolvers::is_matching_of_size(inst.graph, res.solutions[i], inst.r));
            for (std::size_t j = i + 1; j < res.solutions.size(); ++j)
                CHECK_FALSE(res.solutions[i] == res.solutions[j]);
        }
    }
    CHECK(checked >= 20);
}
