#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "divsol/core.hpp"

using namespace divsol;

namespace {

Solution sol(const GroundSet& g, std::vector<ElementId> m) { return Solution(g, std::move(m)); }

Solution random_subset(const GroundSet& g, std::mt19937& rng) {
    std::vector<ElementId> m;
    for (ElementId e = 0; e < g.size(); ++e)
        if (rng() & 1) m.push_back(e);
    return Solution(g, std::move(m));
}

// Hand-rolled oracle: symmetric difference by scanning every element.
Value hamming_by_definition(const GroundSet& g, const Solution& a, const Solution& b) {
    Value total = 0;
    for (ElementId e = 0; e < g.size(); ++e)
        if (a.contains(e) != b.contains(e)) total += g.weight(e);
    return total;
}

}  // namespace

TEST_CASE("hamming distance on the worked examples") {
    GroundSet g({2, 3, 5});
    CHECK(hamming_distance(g, sol(g, {0}), sol(g, {1})) == 5);
    CHECK(hamming_distance(g, sol(g, {0, 2}), sol(g, {0, 2})) == 0);
    CHECK(hamming_distance(g, sol(g, {}), sol(g, {})) == 0);

    GroundSet u = GroundSet::unit(3);
    CHECK(hamming_distance(u, sol(u, {0, 1}), sol(u, {1, 2})) == 2);
}

TEST_CASE("hamming distance rejects mismatched universes") {
    GroundSet g({1, 1, 1});
    GroundSet h({1, 1});
    CHECK_THROWS_AS(hamming_distance(g, sol(g, {0}), sol(h, {0})), Error);
    CHECK_THROWS_AS(Solution(g, {0, 3}), Error);
    CHECK_THROWS_AS(Solution(g, {1, 1}), Error);
}

TEST_CASE("hamming distance is a metric and matches the definitional scan") {
    std::mt19937 rng(20240811);
    for (int trial = 0; trial < 300; ++trial) {
        const std::size_t n = 1 + rng() % 40;
        std::vector<Value> w(n);
        for (auto& x : w) x = 1 + rng() % 50;
        GroundSet g(std::move(w));
        const Solution a = random_subset(g, rng);
        const Solution b = random_subset(g, rng);
        const Solution c = random_subset(g, rng);

        CHECK(hamming_distance(g, a, b) == hamming_by_definition(g, a, b));
        CHECK(hamming_distance(g, a, b) == hamming_distance(g, b, a));
        CHECK(hamming_distance(g, a, c) <=
              hamming_distance(g, a, b) + hamming_distance(g, b, c));
        // Strictly positive weights: distance zero iff equal.
        CHECK((hamming_distance(g, a, b) == 0) == (a == b));
    }
}

TEST_CASE("large universes fall back to the merge walk") {
    const std::size_t n = 600;  // above the bitset mirror limit
    GroundSet g = GroundSet::unit(n);
    std::vector<ElementId> a, b;
    for (ElementId e = 0; e < n; e += 2) a.push_back(e);
    for (ElementId e = 0; e < n; e += 3) b.push_back(e);
    const Solution sa(g, a), sb(g, b);
    CHECK_FALSE(sa.has_bits());
    CHECK(hamming_distance(g, sa, sb) == hamming_by_definition(g, sa, sb));
}

TEST_CASE("sum diversity on the worked examples") {
    GroundSet g = GroundSet::unit(3);
    SolutionFamily fam(g);
    fam.add(sol(g, {0}));
    fam.add(sol(g, {1}));
    fam.add(sol(g, {0, 1}));
    CHECK(sum_diversity(g, fam) == 4);
    CHECK(sum_diversity_pairwise(g, fam) == 4);

    SolutionFamily same(g);
    for (int i = 0; i < 4; ++i) same.add(sol(g, {0, 2}));
    CHECK(sum_diversity(g, same) == 0);
}

TEST_CASE("k disjoint equal-size solutions reach k*r*(k-1) exactly") {
    const std::size_t k = 5, r = 3;
    GroundSet g = GroundSet::unit(k * r);
    SolutionFamily fam(g);
    for (std::size_t i = 0; i < k; ++i) {
        std::vector<ElementId> m;
        for (std::size_t j = 0; j < r; ++j) m.push_back(static_cast<ElementId>(i * r + j));
        fam.add(sol(g, std::move(m)));
    }
    CHECK(sum_diversity(g, fam) == Value(k * r * (k - 1)));
}

TEST_CASE("packing characterization: the bound is reached iff pairwise disjoint") {
    // Unit weights, all solutions of cardinality r: d_sum >= k*r*(k-1) iff
    // the family is pairwise disjoint. Exercise both directions.
    std::mt19937 rng(7);
    const std::size_t n = 12, r = 3, k = 3;
    GroundSet g = GroundSet::unit(n);
    for (int trial = 0; trial < 200; ++trial) {
        SolutionFamily fam(g);
        std::vector<Solution> picked;
        while (picked.size() < k) {
            std::vector<ElementId> all(n);
            std::iota(all.begin(), all.end(), 0u);
            std::shuffle(all.begin(), all.end(), rng);
            Solution cand(g, {all.begin(), all.begin() + r});
            bool dup = false;
            for (const auto& p : picked) dup = dup || p == cand;
            if (!dup) picked.push_back(std::move(cand));
        }
        bool disjoint = true;
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = i + 1; j < k; ++j)
                for (ElementId e : picked[i].members())
                    if (picked[j].contains(e)) disjoint = false;
        for (auto& p : picked) fam.add(std::move(p));
        const bool reaches = sum_diversity(g, fam) >= Value(k * r * (k - 1));
        CHECK(reaches == disjoint);
    }
}

TEST_CASE("pairwise and multiplicity formulas agree on random families") {
    std::mt19937 rng(99);
    for (int trial = 0; trial < 1000; ++trial) {
        const std::size_t n = 1 + rng() % 16;
        std::vector<Value> w(n);
        for (auto& x : w) x = rng() % 20;  // zero weights permitted
        GroundSet g(std::move(w));
        SolutionFamily fam(g);
        const std::size_t k = 1 + rng() % 6;
        for (std::size_t i = 0; i < k; ++i) fam.add(random_subset(g, rng));
        CHECK(sum_diversity(g, fam) == sum_diversity_pairwise(g, fam));
    }
}

TEST_CASE("family multiplicities stay in sync through mutations") {
    GroundSet g = GroundSet::unit(6);
    SolutionFamily fam(g);
    std::mt19937 rng(3);
    std::vector<Solution> mirror;
    for (int step = 0; step < 500; ++step) {
        const int op = static_cast<int>(rng() % 3);
        if (op == 0 || fam.empty()) {
            Solution s = random_subset(g, rng);
            mirror.push_back(s);
            fam.add(std::move(s));
        } else if (op == 1) {
            const std::size_t i = rng() % fam.size();
            Solution s = random_subset(g, rng);
            mirror[i] = s;
            fam.replace(i, std::move(s));
        } else {
            const std::size_t i = rng() % fam.size();
            mirror.erase(mirror.begin() + static_cast<std::ptrdiff_t>(i));
            fam.remove(i);
        }
        for (ElementId e = 0; e < g.size(); ++e) {
            std::int32_t count = 0;
            for (const auto& s : mirror) count += s.contains(e) ? 1 : 0;
            REQUIRE(fam.multiplicity(e) == count);
            REQUIRE(count <= static_cast<std::int32_t>(fam.size()));
        }
    }
}

TEST_CASE("reweighting on the worked examples") {
    GroundSet g = GroundSet::unit(3);

    SolutionFamily part(g);
    part.add(sol(g, {0}));
    part.add(sol(g, {0, 1}));
    const Reweighting rw = reweight(g, part);
    CHECK(rw.weights == SignedWeights{-2, 0, 2});
    CHECK(rw.offset == 3);

    SolutionFamily empty(g);
    const Reweighting rw0 = reweight(g, empty);
    CHECK(rw0.weights == SignedWeights{0, 0, 0});
    CHECK(rw0.offset == 0);

    SolutionFamily one_empty(g);
    one_empty.add(sol(g, {}));
    const Reweighting rw1 = reweight(g, one_empty);
    CHECK(rw1.weights == SignedWeights(g.weights()));
    CHECK(rw1.offset == 0);
}

TEST_CASE("linearization identity holds for every subset") {
    // For every X: sum_{Y in family} d_w(X, Y) == weights(X) + offset.
    std::mt19937 rng(123);
    for (int trial = 0; trial < 120; ++trial) {
        const std::size_t n = 1 + rng() % 12;
        std::vector<Value> w(n);
        for (auto& x : w) x = rng() % 30;
        GroundSet g(std::move(w));
        SolutionFamily fam(g);
        const std::size_t ksub = rng() % 5;
        for (std::size_t i = 0; i < ksub; ++i) fam.add(random_subset(g, rng));
        const Reweighting rw = reweight(g, fam);
        for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << n); ++mask) {
            std::vector<ElementId> m;
            for (std::size_t e = 0; e < n; ++e)
                if (mask & (std::uint64_t(1) << e)) m.push_back(static_cast<ElementId>(e));
            const Solution x(g, std::move(m));
            Value lhs = 0;
            for (const Solution& y : fam.solutions()) lhs += hamming_distance(g, x, y);
            REQUIRE(lhs == signed_total(rw.weights, x) + rw.offset);
        }
    }
}

TEST_CASE("canonical order prefers the smaller differing element") {
    GroundSet g = GroundSet::unit(6);
    CHECK(canonical_less(sol(g, {0, 5}), sol(g, {1, 2})));
    CHECK_FALSE(canonical_less(sol(g, {1, 2}), sol(g, {0, 5})));
    CHECK(canonical_less(sol(g, {0, 1}), sol(g, {0})));  // contains the differing element 1
    CHECK_FALSE(canonical_less(sol(g, {2}), sol(g, {2})));
    // Equal-cardinality sets compare like their sorted member lists.
    CHECK(canonical_less(sol(g, {0, 3}), sol(g, {0, 4})));
    CHECK(canonical_less(sol(g, {0, 4}), sol(g, {1, 2})));
}

TEST_CASE("ground set validation") {
    CHECK_THROWS_AS(GroundSet(std::vector<Value>{}), Error);
    CHECK_THROWS_AS(GroundSet({1, -2}), Error);
    CHECK_THROWS_AS(GroundSet({kMaxWeightMagnitude + 1}), Error);
    CHECK_NOTHROW(GroundSet({0, 0}));  // zero weights are permitted
}
