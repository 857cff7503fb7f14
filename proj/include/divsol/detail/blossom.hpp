#pragma once

// Maximum-weight perfect matching on general graphs: primal-dual with
// blossom shrinking over a dense slack table. Weights are signed integers;
// vertex duals may go negative, so no weight shifting is needed, and an
// unbounded dual adjustment certifies that no perfect matching exists.
// Duals stay integral because edge weights are doubled inside the
// reduced-cost computation.

#include <algorithm>
#include <cstdint>
#include <deque>
#include <limits>
#include <optional>
#include <vector>

#include "divsol/core.hpp"

namespace divsol::detail {

class BlossomMatcher {
public:
    explicit BlossomMatcher(std::size_t num_vertices) : n_(static_cast<int>(num_vertices)) {
        if (num_vertices > 1024) fail_resource("matching graph exceeds the supported size");
        const int slots = 2 * n_ + 1;
        g_.assign(slots, std::vector<Arc>(slots));
        for (int u = 1; u <= n_; ++u)
            for (int v = 1; v <= n_; ++v) g_[u][v] = Arc{u, v, 0, false};
    }

    /// Adds an undirected edge between 0-based endpoints.
    void add_edge(int u, int v, Value w) {
        ++u;
        ++v;
        g_[u][v].w = g_[v][u].w = w;
        g_[u][v].has = g_[v][u].has = true;
        max_w_ = std::max(max_w_, w);
        has_edge_ = true;
    }

    /// Mate per vertex (0-based), or nullopt when no perfect matching exists.
    std::optional<std::vector<int>> solve() {
        if (n_ % 2 != 0) return std::nullopt;
        if (n_ == 0) return std::vector<int>{};
        const int slots = 2 * n_ + 1;
        lab_.assign(slots, 0);
        match_.assign(slots, 0);
        slack_.assign(slots, 0);
        st_.assign(slots, 0);
        pa_.assign(slots, 0);
        state_.assign(slots, kFree);
        vis_.assign(slots, 0);
        flower_.assign(slots, {});
        flower_from_.assign(slots, std::vector<int>(n_ + 1, 0));
        for (int u = 1; u <= n_; ++u) {
            st_[u] = u;
            lab_[u] = has_edge_ ? max_w_ : 0;
            flower_from_[u][u] = u;
        }
        top_ = n_;
        for (;;) {
            bool infeasible = false;
            if (!run_phase(infeasible)) {
                if (infeasible) return std::nullopt;
                break;
            }
        }
        std::vector<int> mate(n_, -1);
        for (int u = 1; u <= n_; ++u) {
            if (match_[u] == 0) return std::nullopt;  // not reached; defensive
            mate[u - 1] = match_[u] - 1;
        }
        return mate;
    }

private:
    struct Arc {
        int u = 0, v = 0;  // vertex-level endpoints realizing a slot-to-slot edge
        Value w = 0;
        bool has = false;
    };

    static constexpr int kFree = -1, kOuter = 0, kInner = 1;

    Value reduced(const Arc& e) const { return lab_[e.u] + lab_[e.v] - g_[e.u][e.v].w * 2; }

    void update_slack(int u, int x) {
        if (!slack_[x] || reduced(g_[u][x]) < reduced(g_[slack_[x]][x])) slack_[x] = u;
    }

    void set_slack(int x) {
        slack_[x] = 0;
        for (int u = 1; u <= n_; ++u)
            if (g_[u][x].has && st_[u] != x && state_[st_[u]] == kOuter) update_slack(u, x);
    }

    void queue_push(int x) {
        if (x <= n_) {
            q_.push_back(x);
            return;
        }
        for (int child : flower_[x]) queue_push(child);
    }

    void set_st(int x, int b) {
        st_[x] = b;
        if (x > n_)
            for (int child : flower_[x]) set_st(child, b);
    }

    // Position of child xr on the blossom cycle, made even by flipping the
    // traversal direction when needed (the internal alternating path must
    // have even length).
    int path_offset(int b, int xr) {
        const auto it = std::find(flower_[b].begin(), flower_[b].end(), xr);
        int pr = static_cast<int>(it - flower_[b].begin());
        if (pr % 2 == 1) {
            std::reverse(flower_[b].begin() + 1, flower_[b].end());
            pr = static_cast<int>(flower_[b].size()) - pr;
        }
        return pr;
    }

    void set_match(int u, int v) {
        match_[u] = g_[u][v].v;
        if (u <= n_) return;
        const Arc e = g_[u][v];
        const int xr = flower_from_[u][e.u];
        const int pr = path_offset(u, xr);
        for (int i = 0; i < pr; ++i) set_match(flower_[u][i], flower_[u][i ^ 1]);
        set_match(xr, v);
        std::rotate(flower_[u].begin(), flower_[u].begin() + pr, flower_[u].end());
    }

    void augment(int u, int v) {
        for (;;) {
            const int xnv = st_[match_[u]];
            set_match(u, v);
            if (!xnv) return;
            set_match(xnv, st_[pa_[xnv]]);
            u = st_[pa_[xnv]];
            v = xnv;
        }
    }

    int get_lca(int u, int v) {
        for (++clock_; u || v; std::swap(u, v)) {
            if (u == 0) continue;
            if (vis_[u] == clock_) return u;
            vis_[u] = clock_;
            u = st_[match_[u]];
            if (u) u = st_[pa_[u]];
        }
        return 0;
    }

    void add_blossom(int u, int lca, int v) {
        int b = n_ + 1;
        while (b <= top_ && st_[b]) ++b;
        if (b > top_) ++top_;
        lab_[b] = 0;
        state_[b] = kOuter;
        match_[b] = match_[lca];
        flower_[b].clear();
        flower_[b].push_back(lca);
        for (int x = u, y; x != lca; x = st_[pa_[y]]) {
            flower_[b].push_back(x);
            flower_[b].push_back(y = st_[match_[x]]);
            queue_push(y);
        }
        std::reverse(flower_[b].begin() + 1, flower_[b].end());
        for (int x = v, y; x != lca; x = st_[pa_[y]]) {
            flower_[b].push_back(x);
            flower_[b].push_back(y = st_[match_[x]]);
            queue_push(y);
        }
        set_st(b, b);
        for (int x = 1; x <= top_; ++x) g_[b][x].has = g_[x][b].has = false;
        std::fill(flower_from_[b].begin(), flower_from_[b].end(), 0);
        for (int child : flower_[b]) {
            for (int x = 1; x <= top_; ++x)
                if (g_[child][x].has &&
                    (!g_[b][x].has || reduced(g_[child][x]) < reduced(g_[b][x]))) {
                    g_[b][x] = g_[child][x];
                    g_[x][b] = g_[x][child];
                }
            for (int x = 1; x <= n_; ++x)
                if (flower_from_[child][x]) flower_from_[b][x] = child;
        }
        set_slack(b);
    }

    void expand_blossom(int b) {  // inner blossom with zero dual
        for (int child : flower_[b]) set_st(child, child);
        const int xr = flower_from_[b][g_[b][pa_[b]].u];
        const int pr = path_offset(b, xr);
        for (int i = 0; i < pr; i += 2) {
            const int xs = flower_[b][i];
            const int xns = flower_[b][i + 1];
            pa_[xs] = g_[xns][xs].u;
            state_[xs] = kInner;
            state_[xns] = kOuter;
            slack_[xs] = 0;
            set_slack(xns);
            queue_push(xns);
        }
        state_[xr] = kInner;
        pa_[xr] = pa_[b];
        slack_[xr] = 0;
        for (std::size_t i = static_cast<std::size_t>(pr) + 1; i < flower_[b].size(); ++i) {
            const int xs = flower_[b][i];
            state_[xs] = kFree;
            set_slack(xs);
        }
        st_[b] = 0;
    }

    bool on_found_edge(const Arc& e) {
        const int u = st_[e.u];
        const int v = st_[e.v];
        if (state_[v] == kFree) {
            pa_[v] = e.u;
            state_[v] = kInner;
            const int nu = st_[match_[v]];
            slack_[v] = slack_[nu] = 0;
            state_[nu] = kOuter;
            queue_push(nu);
        } else if (state_[v] == kOuter) {
            const int lca = get_lca(u, v);
            if (!lca) {
                augment(u, v);
                augment(v, u);
                return true;
            }
            add_blossom(u, lca, v);
        }
        return false;
    }

    // Grows the alternating forest until one augmentation happens (true),
    // everyone is matched (false, infeasible=false), or the duals certify
    // that no perfect matching exists (false, infeasible=true).
    bool run_phase(bool& infeasible) {
        std::fill(state_.begin(), state_.begin() + top_ + 1, kFree);
        std::fill(slack_.begin(), slack_.begin() + top_ + 1, 0);
        q_.clear();
        for (int x = 1; x <= top_; ++x)
            if (st_[x] == x && !match_[x]) {
                pa_[x] = 0;
                state_[x] = kOuter;
                queue_push(x);
            }
        if (q_.empty()) return false;

        const Value kUnbounded = std::numeric_limits<Value>::max();
        for (;;) {
            while (!q_.empty()) {
                const int u = q_.front();
                q_.pop_front();
                if (state_[st_[u]] == kInner) continue;
                for (int v = 1; v <= n_; ++v)
                    if (g_[u][v].has && st_[u] != st_[v]) {
                        if (reduced(g_[u][v]) == 0) {
                            if (on_found_edge(g_[u][v])) return true;
                        } else {
                            update_slack(u, st_[v]);
                        }
                    }
            }
            Value d = kUnbounded;
            for (int b = n_ + 1; b <= top_; ++b)
                if (st_[b] == b && state_[b] == kInner) d = std::min(d, lab_[b] / 2);
            for (int x = 1; x <= top_; ++x)
                if (st_[x] == x && slack_[x]) {
                    if (state_[x] == kFree)
                        d = std::min(d, reduced(g_[slack_[x]][x]));
                    else if (state_[x] == kOuter)
                        d = std::min(d, reduced(g_[slack_[x]][x]) / 2);
                }
            if (d == kUnbounded) {
                infeasible = true;
                return false;
            }
            for (int u = 1; u <= n_; ++u) {
                if (state_[st_[u]] == kOuter)
                    lab_[u] -= d;
                else if (state_[st_[u]] == kInner)
                    lab_[u] += d;
            }
            for (int b = n_ + 1; b <= top_; ++b)
                if (st_[b] == b) {
                    if (state_[b] == kOuter)
                        lab_[b] += d * 2;
                    else if (state_[b] == kInner)
                        lab_[b] -= d * 2;
                }
            for (int x = 1; x <= top_; ++x)
                if (st_[x] == x && slack_[x] && st_[slack_[x]] != x &&
                    reduced(g_[slack_[x]][x]) == 0)
                    if (on_found_edge(g_[slack_[x]][x])) return true;
            for (int b = n_ + 1; b <= top_; ++b)
                if (st_[b] == b && state_[b] == kInner && lab_[b] == 0) expand_blossom(b);
        }
    }

    int n_ = 0;
    int top_ = 0;  // highest slot id in use
    Value max_w_ = std::numeric_limits<Value>::min();
    bool has_edge_ = false;
    std::vector<std::vector<Arc>> g_;
    std::vector<Value> lab_;
    std::vector<int> match_, slack_, st_, pa_, state_, vis_;
    std::vector<std::vector<int>> flower_;
    std::vector<std::vector<int>> flower_from_;
    std::deque<int> q_;
    int clock_ = 0;
};

}  // namespace divsol::detail
