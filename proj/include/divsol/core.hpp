#pragma once

// Ground sets, solutions, solution families, the weighted Hamming distance,
// the sum diversity, and the reweighting transform that turns "summed
// distance to a fixed family" into a plain linear objective.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace divsol {

/// Scaled-integer weight / diversity value. All public arithmetic is exact.
using Value = std::int64_t;

/// 128-bit accumulator for intermediate sums.
using Wide = __int128;

using ElementId = std::uint32_t;

enum class ErrorKind { InvalidInput, Infeasible, Resource, ContractViolation };

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(message), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail_invalid(const std::string& m) { throw Error(ErrorKind::InvalidInput, m); }
[[noreturn]] inline void fail_infeasible(const std::string& m) { throw Error(ErrorKind::Infeasible, m); }
[[noreturn]] inline void fail_resource(const std::string& m) { throw Error(ErrorKind::Resource, m); }
[[noreturn]] inline void fail_contract(const std::string& m) { throw Error(ErrorKind::ContractViolation, m); }

// Largest element weight magnitude accepted after decimal scaling. Keeps every
// downstream accumulation (diversity sums, matching duals, exchange-path
// lengths) inside the 64-bit range at the maximum supported instance sizes.
inline constexpr Value kMaxWeightMagnitude = 2'000'000'000;

inline Value narrow_checked(Wide v, const char* what) {
    if (v > Wide(std::numeric_limits<Value>::max()) ||
        v < Wide(std::numeric_limits<Value>::min()))
        fail_contract(std::string(what) + ": 64-bit overflow");
    return static_cast<Value>(v);
}

/// Indexed element universe with nonnegative scaled-integer weights.
class GroundSet {
public:
    explicit GroundSet(std::vector<Value> weights) : weights_(std::move(weights)) {
        if (weights_.empty()) fail_invalid("ground set must have at least one element");
        for (Value w : weights_) {
            if (w < 0) fail_invalid("element weights must be nonnegative");
            if (w > kMaxWeightMagnitude) fail_invalid("element weight exceeds supported magnitude");
        }
    }

    static GroundSet unit(std::size_t n) { return GroundSet(std::vector<Value>(n, 1)); }

    std::size_t size() const noexcept { return weights_.size(); }
    Value weight(ElementId e) const { return weights_[e]; }
    const std::vector<Value>& weights() const noexcept { return weights_; }

private:
    std::vector<Value> weights_;
};

/// A subset of ground-set elements. Stored as a sorted index list plus a
/// bitset mirror for universes up to kBitsetLimit; equality and symmetric
/// difference use the mirror when present.
class Solution {
public:
    static constexpr std::size_t kBitsetLimit = 512;

    Solution() = default;

    Solution(const GroundSet& g, std::vector<ElementId> members)
        : Solution(g.size(), std::move(members)) {}

    Solution(std::size_t universe, std::vector<ElementId> members)
        : members_(std::move(members)), universe_(universe) {
        std::sort(members_.begin(), members_.end());
        if (std::adjacent_find(members_.begin(), members_.end()) != members_.end())
            fail_invalid("solution contains a duplicate element");
        if (!members_.empty() && members_.back() >= universe_)
            fail_invalid("solution element out of range");
        if (universe_ <= kBitsetLimit) {
            bits_.assign((universe_ + 63) / 64, 0);
            for (ElementId e : members_) bits_[e >> 6] |= std::uint64_t(1) << (e & 63);
        }
    }

    std::size_t universe() const noexcept { return universe_; }
    std::size_t size() const noexcept { return members_.size(); }
    bool empty() const noexcept { return members_.empty(); }
    const std::vector<ElementId>& members() const noexcept { return members_; }

    bool has_bits() const noexcept { return !bits_.empty() || universe_ == 0; }
    const std::vector<std::uint64_t>& bits() const noexcept { return bits_; }

    bool contains(ElementId e) const {
        if (e >= universe_) return false;
        if (!bits_.empty()) return (bits_[e >> 6] >> (e & 63)) & 1u;
        return std::binary_search(members_.begin(), members_.end(), e);
    }

    friend bool operator==(const Solution& a, const Solution& b) {
        return a.universe_ == b.universe_ && a.members_ == b.members_;
    }
    friend bool operator!=(const Solution& a, const Solution& b) { return !(a == b); }

private:
    std::vector<ElementId> members_;
    std::vector<std::uint64_t> bits_;
    std::size_t universe_ = 0;
};

/// Canonical strict order on same-universe solutions: the solution containing
/// the smallest element on which the two differ comes first. For solution
/// sets of equal cardinality (every backend here) this is exactly the
/// lexicographic order on sorted member lists.
inline bool canonical_less(const Solution& a, const Solution& b) {
    const auto& A = a.members();
    const auto& B = b.members();
    std::size_t i = 0, j = 0;
    while (i < A.size() && j < B.size()) {
        if (A[i] == B[j]) {
            ++i;
            ++j;
            continue;
        }
        return A[i] < B[j];
    }
    return i < A.size();
}

/// Ordered list of solutions with per-element occurrence counts kept in sync
/// across every mutation.
class SolutionFamily {
public:
    explicit SolutionFamily(const GroundSet& g)
        : universe_(g.size()), multiplicity_(g.size(), 0) {}

    std::size_t size() const noexcept { return solutions_.size(); }
    bool empty() const noexcept { return solutions_.empty(); }
    const Solution& operator[](std::size_t i) const { return solutions_[i]; }
    const std::vector<Solution>& solutions() const noexcept { return solutions_; }

    std::int32_t multiplicity(ElementId e) const { return multiplicity_[e]; }

    void add(Solution s) {
        check_universe(s);
        bump(s, +1);
        solutions_.push_back(std::move(s));
    }

    void replace(std::size_t i, Solution s) {
        check_universe(s);
        bump(solutions_[i], -1);
        bump(s, +1);
        solutions_[i] = std::move(s);
    }

    Solution remove(std::size_t i) {
        Solution out = std::move(solutions_[i]);
        solutions_.erase(solutions_.begin() + static_cast<std::ptrdiff_t>(i));
        bump(out, -1);
        return out;
    }

    bool contains(const Solution& s) const {
        for (const Solution& y : solutions_)
            if (y == s) return true;
        return false;
    }

private:
    void check_universe(const Solution& s) const {
        if (s.universe() != universe_) fail_invalid("solution does not match the family's ground set");
    }
    void bump(const Solution& s, std::int32_t d) {
        for (ElementId e : s.members()) multiplicity_[e] += d;
    }

    std::size_t universe_ = 0;
    std::vector<Solution> solutions_;
    std::vector<std::int32_t> multiplicity_;
};

/// Per-element signed scaled-integer weights (extension objectives).
using SignedWeights = std::vector<Value>;

inline Value signed_total(const SignedWeights& w, const Solution& s) {
    Wide total = 0;
    for (ElementId e : s.members()) total += w[e];
    return narrow_checked(total, "signed_total");
}

/// d_w(a, b): total weight of the symmetric difference.
inline Value hamming_distance(const GroundSet& g, const Solution& a, const Solution& b) {
    if (a.universe() != g.size() || b.universe() != g.size())
        fail_invalid("solution does not match the ground set");
    Wide total = 0;
    if (!a.bits().empty() || a.universe() == 0) {
        const auto& wa = a.bits();
        const auto& wb = b.bits();
        for (std::size_t w = 0; w < wa.size(); ++w) {
            std::uint64_t x = wa[w] ^ wb[w];
            while (x) {
                const unsigned bit = static_cast<unsigned>(std::countr_zero(x));
                x &= x - 1;
                total += g.weight(static_cast<ElementId>(w * 64 + bit));
            }
        }
    } else {
        const auto& A = a.members();
        const auto& B = b.members();
        std::size_t i = 0, j = 0;
        while (i < A.size() || j < B.size()) {
            if (j == B.size() || (i < A.size() && A[i] < B[j]))
                total += g.weight(A[i++]);
            else if (i == A.size() || B[j] < A[i])
                total += g.weight(B[j++]);
            else {
                ++i;
                ++j;
            }
        }
    }
    return narrow_checked(total, "hamming_distance");
}

/// d_sum via the per-element multiplicity identity:
/// element e contributes w(e) * m(e) * (k - m(e)).
inline Value sum_diversity(const GroundSet& g, const SolutionFamily& fam) {
    if (fam.empty()) fail_invalid("sum diversity of an empty family");
    const Wide k = static_cast<Wide>(fam.size());
    Wide total = 0;
    for (std::size_t e = 0; e < g.size(); ++e) {
        const Wide m = fam.multiplicity(static_cast<ElementId>(e));
        total += Wide(g.weight(static_cast<ElementId>(e))) * m * (k - m);
    }
    return narrow_checked(total, "sum_diversity");
}

/// d_sum by its defining pairwise sum. Must agree exactly with sum_diversity.
inline Value sum_diversity_pairwise(const GroundSet& g, const SolutionFamily& fam) {
    if (fam.empty()) fail_invalid("sum diversity of an empty family");
    Wide total = 0;
    for (std::size_t i = 0; i < fam.size(); ++i)
        for (std::size_t j = i + 1; j < fam.size(); ++j)
            total += hamming_distance(g, fam[i], fam[j]);
    return narrow_checked(total, "sum_diversity_pairwise");
}

/// Linearization of summed distance against a fixed partial family:
/// for every solution X,
///   sum_{Y in family} d_w(X, Y) = weights(X) + offset,
/// with weights(e) = w(e) * (Ex(e) - In(e)) and offset = sum_e w(e) * In(e).
struct Reweighting {
    SignedWeights weights;
    Value offset = 0;
};

inline Reweighting reweight(const GroundSet& g, const SolutionFamily& partial) {
    Reweighting out;
    out.weights.resize(g.size());
    const Wide k = static_cast<Wide>(partial.size());
    Wide offset = 0;
    for (std::size_t e = 0; e < g.size(); ++e) {
        const Wide in = partial.multiplicity(static_cast<ElementId>(e));
        const Wide w = g.weight(static_cast<ElementId>(e));
        out.weights[e] = narrow_checked(w * (k - 2 * in), "reweight");
        offset += w * in;
    }
    out.offset = narrow_checked(offset, "reweight offset");
    return out;
}

}  // namespace divsol
