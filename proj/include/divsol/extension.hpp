#pragma once

// The Weighted Extension interface: the library's backend plugin point.

#include <optional>
#include <vector>

#include "divsol/core.hpp"

namespace divsol {

/// Constrained argmax query: find a feasible solution containing forced_in,
/// avoiding forced_out, maximizing the signed objective.
struct ExtensionQuery {
    Solution forced_in;
    Solution forced_out;
    SignedWeights objective;

    void validate(std::size_t ground) const {
        if (forced_in.universe() != ground || forced_out.universe() != ground)
            fail_invalid("extension query does not match the ground set");
        if (objective.size() != ground)
            fail_invalid("extension objective does not match the ground set");
        for (ElementId e : forced_in.members())
            if (forced_out.contains(e)) fail_invalid("forced-in and forced-out sets overlap");
    }
};

/// A solver for Weighted Extension over an implicit feasible set.
///
/// Contract: solve() returns a feasible solution satisfying the query's
/// containment constraints and maximizing the signed objective among all
/// such solutions, or nullopt when none exists. Any deterministic choice
/// among maximizers is acceptable; the enumeration layer normalizes ties.
class ExtensionOracle {
public:
    virtual ~ExtensionOracle() = default;
    virtual std::size_t ground_size() const = 0;
    virtual std::optional<Solution> solve(const ExtensionQuery& q) const = 0;
    /// Whether concurrent solve() calls are safe.
    virtual bool concurrent_safe() const { return true; }
};

/// Weighted Extension over an explicitly materialized feasible set
/// (used for minimum cuts, where the whole set is enumerated up front,
/// and for test fixtures). Ties resolve to the canonical-least solution.
class ListExtensionOracle final : public ExtensionOracle {
public:
    ListExtensionOracle(std::size_t ground, std::vector<Solution> feasible)
        : ground_(ground), feasible_(std::move(feasible)) {
        for (const Solution& s : feasible_)
            if (s.universe() != ground_) fail_invalid("feasible solution does not match the ground set");
    }

    std::size_t ground_size() const override { return ground_; }
    const std::vector<Solution>& feasible() const { return feasible_; }

    std::optional<Solution> solve(const ExtensionQuery& q) const override {
        q.validate(ground_);
        const Solution* best = nullptr;
        Value best_score = 0;
        for (const Solution& s : feasible_) {
            bool ok = true;
            for (ElementId e : q.forced_in.members())
                if (!s.contains(e)) {
                    ok = false;
                    break;
                }
            if (ok)
                for (ElementId e : q.forced_out.members())
                    if (s.contains(e)) {
                        ok = false;
                        break;
                    }
            if (!ok) continue;
            const Value score = signed_total(q.objective, s);
            if (best == nullptr || score > best_score ||
                (score == best_score && canonical_less(s, *best))) {
                best = &s;
                best_score = score;
            }
        }
        if (best == nullptr) return std::nullopt;
        return *best;
    }

private:
    std::size_t ground_;
    std::vector<Solution> feasible_;
};

}  // namespace divsol
