// Copyright 2026 The lotgap Authors
// SPDX-License-Identifier: Apache-2.0

#include "lotgap/feas.hpp"

#include <deque>
#include <limits>

namespace lotgap {
namespace {

// Minimal min-cost-flow network on exact rational arc costs. Small graphs
// only (tens of nodes), so Bellman-Ford per augmentation is fine.
struct FlowNet {
    struct Arc {
        int to;
        int cap;
        Rat cost;
        int rev;
    };
    std::vector<std::vector<Arc>> g;

    explicit FlowNet(int nodes) : g(nodes) {}

    void add(int u, int v, int cap, Rat cost) {
        g[u].push_back({v, cap, cost, static_cast<int>(g[v].size())});
        g[v].push_back({u, 0, -cost, static_cast<int>(g[u].size()) - 1});
    }

    // Augments one unit along a min-cost path; returns the path cost, or
    // nullopt if the sink is unreachable.
    std::optional<Rat> augment_unit(int s, int t) {
        const int n = static_cast<int>(g.size());
        std::vector<std::optional<Rat>> dist(n);
        std::vector<std::pair<int, int>> parent(n, {-1, -1});
        dist[s] = Rat(0);
        for (int round = 0; round < n; ++round) {
            bool changed = false;
            for (int u = 0; u < n; ++u) {
                if (!dist[u]) continue;
                for (int a = 0; a < static_cast<int>(g[u].size()); ++a) {
                    const Arc& arc = g[u][a];
                    if (arc.cap <= 0) continue;
                    Rat nd = *dist[u] + arc.cost;
                    if (!dist[arc.to] || nd < *dist[arc.to]) {
                        dist[arc.to] = nd;
                        parent[arc.to] = {u, a};
                        changed = true;
                    }
                }
            }
            if (!changed) break;
        }
        if (!dist[t]) return std::nullopt;
        for (int v = t; v != s;) {
            auto [u, a] = parent[v];
            g[u][a].cap -= 1;
            g[g[u][a].to][g[u][a].rev].cap += 1;
            v = u;
        }
        return *dist[t];
    }
};

}  // namespace

Mask FeasibilitySystem::brute_force_max_weight(const std::vector<Rat>& weights) const {
    const int g = ground();
    Mask best = 0;
    Rat best_w(0);
    for (Mask s = 0; s < (Mask(1) << g); ++s) {
        if (!is_feasible(s)) continue;
        Rat w(0);
        for (Mask t = s; t; t &= t - 1) w += weights[__builtin_ctz(t)];
        if (w > best_w || (w == best_w && set_tie_less(s, best))) {
            best = s;
            best_w = w;
        }
    }
    return best;
}

Mask FeasibilitySystem::matching_max_weight(const std::vector<Rat>& weights) const {
    // Max-weight b-matching as min-cost flow with negated weights; stop once
    // the cheapest augmenting path stops being strictly negative, which also
    // keeps zero-weight edges out of the result.
    const int src = agents_ + items_, snk = src + 1;
    FlowNet net(snk + 1);
    for (int i = 0; i < agents_; ++i) net.add(src, i, 1, Rat(0));
    for (int j = 0; j < items_; ++j) net.add(agents_ + j, snk, item_caps_[j], Rat(0));
    // Arc index bookkeeping so we can read allocations back out.
    std::vector<std::vector<int>> arc_of(agents_, std::vector<int>(items_));
    for (int i = 0; i < agents_; ++i)
        for (int j = 0; j < items_; ++j) {
            arc_of[i][j] = static_cast<int>(net.g[i].size());
            net.add(i, agents_ + j, 1, -weights[element(i, j)]);
        }
    while (true) {
        // Peek the cost first by running on a copy is wasteful; instead
        // augment and undo if nonnegative. Undo = push the unit back.
        FlowNet snapshot = net;
        auto c = net.augment_unit(src, snk);
        if (!c || !(*c < Rat(0))) {
            net = std::move(snapshot);
            break;
        }
    }
    Mask result = 0;
    for (int i = 0; i < agents_; ++i)
        for (int j = 0; j < items_; ++j)
            if (net.g[i][arc_of[i][j]].cap == 0) result |= Mask(1) << element(i, j);
    return result;
}

int FeasibilitySystem::rank(Mask s) const {
    if (s >> ground()) throw validation_error("rank: element out of range");
    if (tag_ == Tag::matching) {
        const int src = agents_ + items_, snk = src + 1;
        FlowNet net(snk + 1);
        for (int i = 0; i < agents_; ++i) net.add(src, i, 1, Rat(0));
        for (int j = 0; j < items_; ++j) net.add(agents_ + j, snk, item_caps_[j], Rat(0));
        for (Mask t = s; t; t &= t - 1) {
            auto [i, j] = decode(__builtin_ctz(t));
            net.add(i, agents_ + j, 1, Rat(0));
        }
        int r = 0;
        while (net.augment_unit(src, snk)) ++r;
        return r;
    }
    if (popcount(s) > 16)
        throw capacity_error("rank: general systems capped at 16-element queries");
    int best = 0;
    Mask sub = s;
    while (true) {
        if (is_feasible(sub)) best = std::max(best, popcount(sub));
        if (sub == 0) break;
        sub = (sub - 1) & s;
    }
    return best;
}

namespace {

bool match_rest(const std::vector<int>& d1, const std::vector<std::vector<int>>& cands,
                std::size_t idx, Mask used, std::map<int, int>& out) {
    if (idx == d1.size()) return true;
    for (int f : cands[idx]) {
        if ((used >> f) & 1u) continue;
        out[d1[idx]] = f;
        if (match_rest(d1, cands, idx + 1, used | (Mask(1) << f), out)) return true;
        out.erase(d1[idx]);
    }
    return false;
}

}  // namespace

std::map<int, int> exchange_bijection(const MatroidOracle& m, Mask b1, Mask b2) {
    if (!m.independent(b1) || !m.independent(b2))
        throw validation_error("exchange_bijection: both sets must be independent");
    if (popcount(b1) != popcount(b2))
        throw validation_error("exchange_bijection: sets must have equal size");
    std::vector<int> d1;
    std::vector<std::vector<int>> cands;
    for (Mask t = b1 & ~b2; t; t &= t - 1) {
        int e = __builtin_ctz(t);
        d1.push_back(e);
        std::vector<int> cs;
        for (Mask u = b2 & ~b1; u; u &= u - 1) {
            int f = __builtin_ctz(u);
            if (m.independent((b1 & ~(Mask(1) << e)) | (Mask(1) << f))) cs.push_back(f);
        }
        cands.push_back(std::move(cs));
    }
    std::map<int, int> out;
    if (!match_rest(d1, cands, 0, 0, out))
        throw invariant_error("exchange_bijection: no exchange bijection exists");
    return out;
}

PartialExchange partial_exchange_maps(const MatroidOracle& m, Mask a1, Mask a2) {
    if (!m.independent(a1) || !m.independent(a2))
        throw validation_error("partial_exchange_maps: both sets must be independent");
    Mask h1 = a1, h2 = a2;
    // Augment the smaller set from the larger one until sizes match; pick the
    // lex-smallest feasible element at each step for determinism.
    while (popcount(h1) != popcount(h2)) {
        Mask& small = popcount(h1) < popcount(h2) ? h1 : h2;
        const Mask& large = popcount(h1) < popcount(h2) ? h2 : h1;
        bool grown = false;
        for (Mask t = large & ~small; t && !grown; t &= t - 1) {
            int e = __builtin_ctz(t);
            if (m.independent(small | (Mask(1) << e))) {
                small |= Mask(1) << e;
                grown = true;
            }
        }
        if (!grown) throw invariant_error("partial_exchange_maps: augmentation failed");
    }
    auto g = exchange_bijection(m, h1, h2);  // h1\h2 -> h2\h1
    PartialExchange px;
    px.domain = a2 & ~h1;
    for (const auto& [e, f] : g) px.map[f] = e;  // invert: (A2 side) -> (A1 side)
    for (Mask t = px.domain; t; t &= t - 1)
        if (!px.map.contains(__builtin_ctz(t)))
            throw invariant_error("partial_exchange_maps: unmapped element in restricted set");
    return px;
}

}  // namespace lotgap
