// Copyright 2026 The lotgap Authors
// SPDX-License-Identifier: Apache-2.0
//
// Revenue benchmarks: ironed-virtual-value auctions on copies instances,
// Vickrey revenue, monopoly prices, and optimal mechanisms via LP (randomized
// menus, dominant-strategy tables) and exact grid search (item pricings).

#pragma once

#include <algorithm>
#include <optional>
#include <vector>

#include "lotgap/dist.hpp"
#include "lotgap/errors.hpp"
#include "lotgap/feas.hpp"
#include "lotgap/lp.hpp"
#include "lotgap/mech.hpp"

namespace lotgap {

/// Discrete virtual values phi and their ironed version phi_bar, one entry
/// per support point. Ironing takes the upper concave hull of the revenue
/// curve (sale probability, revenue) and reads slopes back off the hull,
/// which makes phi_bar nondecreasing along the support.
template <typename T>
struct VirtualValues {
    std::vector<T> phi;
    std::vector<T> phi_bar;
};

template <typename T>
VirtualValues<T> virtual_values(const DiscreteDist<T>& d) {
    const std::size_t K = d.size();
    VirtualValues<T> vv;
    vv.phi.resize(K);
    for (std::size_t k = 0; k + 1 < K; ++k)
        vv.phi[k] =
            d.support[k] - (d.support[k + 1] - d.support[k]) * d.tail(k + 1) / d.probs[k];
    vv.phi[K - 1] = d.support[K - 1];

    // Revenue curve: points (tail(k), support[k]*tail(k)) plus the origin,
    // listed with sale probability ascending (so k descending).
    std::vector<std::pair<T, T>> pts;
    pts.push_back({num<T>::zero(), num<T>::zero()});
    for (std::size_t k = K; k-- > 0;) pts.push_back({d.tail(k), d.support[k] * d.tail(k)});
    std::vector<std::pair<T, T>> hull;  // upper hull, left to right
    for (const auto& p : pts) {
        while (hull.size() >= 2) {
            const auto& a = hull[hull.size() - 2];
            const auto& b = hull[hull.size() - 1];
            // keep if turn at b is strictly convex-down (b above chord a-p)
            T cross = (b.first - a.first) * (p.second - a.second) -
                      (p.first - a.first) * (b.second - a.second);
            if (cross < num<T>::zero()) break;
            hull.pop_back();
        }
        hull.push_back(p);
    }
    vv.phi_bar.resize(K);
    for (std::size_t k = 0; k < K; ++k) {
        T lo = (k + 1 < K) ? d.tail(k + 1) : num<T>::zero();
        T hi = d.tail(k);
        T mid = (lo + hi) / num<T>::from_int(2);
        for (std::size_t h = 0; h + 1 < hull.size(); ++h) {
            if (mid >= hull[h].first && mid <= hull[h + 1].first) {
                vv.phi_bar[k] = (hull[h + 1].second - hull[h].second) /
                                (hull[h + 1].first - hull[h].first);
                break;
            }
        }
    }
    return vv;
}

/// The single-item "copies" view of an instance: every (agent, item) pair
/// becomes its own pseudo-agent whose value is that pair's value, and the
/// parent's feasibility carries over on the same ground set. For additive
/// instances the pseudo-agents are the independent base components
/// t_0,...,t_m, with one free slot for t_0 and one slot shared by the rest.
template <typename T>
struct CopiesInstance {
    TypeSpace<T> ts;
    FeasibilitySystem fs;
};

template <typename T>
CopiesInstance<T> build_copies(const TypeSpace<T>& parent, const FeasibilitySystem& parent_fs) {
    CopiesInstance<T> c{TypeSpace<T>{}, parent_fs};
    if (parent.structure == Structure::additive) {
        if (parent.agents != 1)
            throw validation_error("build_copies: additive instances are single-agent");
        const int m1 = parent.items + 1;
        c.ts.agents = m1;
        c.ts.items = 1;
        c.ts.structure = Structure::product;
        for (const auto& prof : parent.profiles) {
            if (static_cast<int>(prof.base.size()) != m1)
                throw validation_error("build_copies: missing base components");
            Profile<T> p;
            p.prob = prof.prob;
            p.values = prof.base;
            c.ts.profiles.push_back(std::move(p));
        }
        std::vector<int> blocks(m1, 1);
        blocks[0] = 0;
        c.fs = FeasibilitySystem::intersection(m1, 1, MatroidOracle::partition(blocks, {1, 1}),
                                               MatroidOracle::uniform(m1, m1));
        return c;
    }
    if (parent.structure != Structure::product)
        throw validation_error("build_copies: product or additive structure required");
    c.ts.agents = parent.agents * parent.items;
    c.ts.items = 1;
    c.ts.structure = Structure::product;
    for (const auto& prof : parent.profiles) {
        Profile<T> p;
        p.prob = prof.prob;
        p.values = prof.values;  // same (i,j)-major layout, now one per agent
        c.ts.profiles.push_back(std::move(p));
    }
    c.fs = FeasibilitySystem::intersection(c.ts.agents, 1, parent_fs.j1(), parent_fs.j2());
    return c;
}

template <typename T>
struct MyersonResult {
    T revenue = num<T>::zero();
    std::vector<Mask> winners;          // per profile
    std::vector<std::vector<T>> pays;   // per profile, one per ground element
};

/// Optimal-auction revenue for independent bidders under the feasibility
/// system: per profile, serve the max-weight feasible set under nonnegative
/// ironed virtual values and charge threshold payments. Revenue is computed
/// both as expected ironed virtual surplus and as expected payments, and the
/// two must agree.
template <typename T>
MyersonResult<T> myerson(const TypeSpace<T>& ts, const FeasibilitySystem& fs,
                         bool cross_check = true) {
    if (ts.structure != Structure::product)
        throw validation_error("myerson: independent (product) values required");
    const int g = fs.ground();
    if (g != ts.agents * ts.items) throw validation_error("myerson: ground size mismatch");

    std::vector<DiscreteDist<T>> marg(g);
    std::vector<VirtualValues<T>> vv(g);
    for (int e = 0; e < g; ++e) {
        auto ge = fs.decode(e);
        marg[e] = marginal(ts, ge.agent, ge.item);
        vv[e] = virtual_values(marg[e]);
    }
    auto support_index = [&](int e, const T& v) {
        const auto& s = marg[e].support;
        for (std::size_t k = 0; k < s.size(); ++k)
            if (num<T>::eq(s[k], v)) return k;
        throw invariant_error("myerson: value not on marginal support");
    };
    auto clipped = [&](int e, std::size_t k) {
        return std::max(vv[e].phi_bar[k], num<T>::zero());
    };

    MyersonResult<T> res;
    T virt_total = num<T>::zero();
    for (std::size_t p = 0; p < ts.profiles.size(); ++p) {
        std::vector<T> w(g);
        std::vector<std::size_t> idx(g);
        for (int e = 0; e < g; ++e) {
            auto ge = fs.decode(e);
            idx[e] = support_index(e, ts.value(p, ge.agent, ge.item));
            w[e] = clipped(e, idx[e]);
        }
        Mask a = fs.max_weight_feasible(w);
        std::vector<T> pay(g, num<T>::zero());
        for (Mask t = a; t; t &= t - 1) {
            int e = __builtin_ctz(t);
            virt_total += ts.profiles[p].prob * w[e];
            // Threshold: lowest own support value at which e is still served.
            std::vector<T> w2 = w;
            bool found = false;
            for (std::size_t k = 0; k <= idx[e] && !found; ++k) {
                w2[e] = clipped(e, k);
                if ((fs.max_weight_feasible(w2) >> e) & 1u) {
                    pay[e] = marg[e].support[k];
                    found = true;
                }
            }
            if (!found) throw invariant_error("myerson: winner lost its own threshold scan");
            res.revenue += ts.profiles[p].prob * pay[e];
        }
        res.winners.push_back(a);
        res.pays.push_back(std::move(pay));
    }
    if (cross_check && !num<T>::eq(res.revenue, virt_total))
        throw invariant_error("myerson: payment and virtual-surplus revenues disagree");
    return res;
}

/// Revenue of the welfare-maximizing auction with critical-value payments.
/// Exact for matroid feasibility (where the critical value of a winner e is
/// the best weight that could replace it).
template <typename T>
T vickrey_revenue(const TypeSpace<T>& ts, const FeasibilitySystem& fs) {
    const int g = fs.ground();
    if (g != ts.agents * ts.items) throw validation_error("vickrey: ground size mismatch");
    T rev = num<T>::zero();
    for (std::size_t p = 0; p < ts.profiles.size(); ++p) {
        std::vector<T> w(g);
        for (int e = 0; e < g; ++e) {
            auto ge = fs.decode(e);
            w[e] = ts.value(p, ge.agent, ge.item);
        }
        Mask a = fs.max_weight_feasible(w);
        for (Mask t = a; t; t &= t - 1) {
            int e = __builtin_ctz(t);
            T crit = num<T>::zero();
            for (int f = 0; f < g; ++f) {
                if ((a >> f) & 1u) continue;
                Mask swapped = (a & ~(Mask(1) << e)) | (Mask(1) << f);
                if (fs.is_feasible(swapped)) crit = std::max(crit, w[f]);
            }
            rev += ts.profiles[p].prob * crit;
        }
    }
    return rev;
}

template <typename T>
struct MonopolyResult {
    T price = num<T>::zero();
    T revenue = num<T>::zero();
};

/// Best single posted price against one value distribution; ties resolve to
/// the lower price.
template <typename T>
MonopolyResult<T> monopoly(const DiscreteDist<T>& d) {
    MonopolyResult<T> best;
    best.price = d.support[0];
    best.revenue = d.support[0] * d.tail(0);
    for (std::size_t k = 1; k < d.size(); ++k) {
        T r = d.support[k] * d.tail(k);
        if (r > best.revenue) {
            best.revenue = r;
            best.price = d.support[k];
        }
    }
    return best;
}

/// Items that may be allocated together, with a joint cap; groups default to
/// "all items, cap 1" (unit demand).
struct CapGroup {
    std::vector<int> items;
    int cap = 1;
};

struct MenuLPResult {
    Rat revenue;
    LotteryMenu<Rat> menu;          // distinct options, null included
    std::vector<int> choice;        // per type, index into menu
    MechanismTable<Rat> table;
    lp::Problem problem;  // kept for external cross-checks (LP text dumps)
    lp::Solution lp;
};

/// Revenue-optimal randomized mechanism for a single agent: one lottery
/// (q, p) per type, subject to IC, IR, box and group-cap constraints.
MenuLPResult optimal_menu_lp(const TypeSpace<Rat>& ts, std::vector<CapGroup> groups = {},
                             std::size_t type_cap = 200);

struct DsicLPResult {
    Rat revenue;
    MechanismTable<Rat> table;
    lp::Solution lp;
};

/// Revenue-optimal dominant-strategy IC + ex-post IR randomized mechanism
/// for multiple agents under the feasibility system. Matching systems use
/// row/column sum constraints (exact by total unimodularity of the bipartite
/// polytope); general systems enumerate subset rank constraints.
DsicLPResult optimal_dsic_lp(const TypeSpace<Rat>& ts, const FeasibilitySystem& fs);

struct PricingResult {
    Rat revenue;
    ItemPricing<Rat> pricing;
};

/// Revenue-optimal deterministic item pricing for a single agent, by
/// exhaustive search over the exact candidate grid: all multiples of
/// 1/lcm(value denominators) up to the largest value, plus "not offered".
/// Optimal prices lie on this grid because revenue is piecewise linear in
/// prices with breakpoints on value-difference hyperplanes, and the buyer's
/// tie rule (higher price wins ties) attains each region's supremum.
PricingResult optimal_pricing_exact(const TypeSpace<Rat>& ts,
                                    std::size_t comb_cap = 2'000'000);

}  // namespace lotgap
