// Copyright 2026 The lotgap Authors
// SPDX-License-Identifier: Apache-2.0

#include "lotgap/opt.hpp"

#include <cmath>

namespace lotgap {

MenuLPResult optimal_menu_lp(const TypeSpace<Rat>& ts, std::vector<CapGroup> groups,
                             std::size_t type_cap) {
    if (ts.agents != 1) throw validation_error("optimal_menu_lp: single agent required");
    const std::size_t K = ts.profiles.size();
    const int m = ts.items;
    if (K > type_cap)
        throw capacity_error("optimal_menu_lp: " + std::to_string(K) +
                             " types exceeds cap of " + std::to_string(type_cap));
    if (groups.empty()) {
        CapGroup all;
        for (int j = 0; j < m; ++j) all.items.push_back(j);
        all.cap = 1;
        groups.push_back(all);
    }

    // Variable layout: type t owns q_{t,0..m-1} then p_t.
    auto qv = [m](std::size_t t, int j) { return t * (m + 1) + j; };
    auto pv = [m](std::size_t t) { return t * (m + 1) + m; };

    lp::Problem prob;
    prob.num_vars = K * (m + 1);
    prob.objective.assign(prob.num_vars, Rat(0));
    for (std::size_t t = 0; t < K; ++t) prob.objective[pv(t)] = ts.profiles[t].prob;

    std::vector<Rat> row(prob.num_vars, Rat(0));
    auto flush = [&](Rat b) {
        prob.add_row(row, std::move(b));
        std::fill(row.begin(), row.end(), Rat(0));
    };
    for (std::size_t t = 0; t < K; ++t) {
        // IR: p_t - q_t . v_t <= 0
        row[pv(t)] = Rat(1);
        for (int j = 0; j < m; ++j) row[qv(t, j)] = -ts.value(t, 0, j);
        flush(Rat(0));
        // box: q_{t,j} <= 1
        for (int j = 0; j < m; ++j) {
            row[qv(t, j)] = Rat(1);
            flush(Rat(1));
        }
        // group caps
        for (const auto& g : groups) {
            for (int j : g.items) row[qv(t, j)] = Rat(1);
            flush(Rat(g.cap));
        }
        // IC against every other type s: (q_s - q_t) . v_t - p_s + p_t <= 0
        for (std::size_t s = 0; s < K; ++s) {
            if (s == t) continue;
            for (int j = 0; j < m; ++j) {
                row[qv(s, j)] = ts.value(t, 0, j);
                row[qv(t, j)] = -ts.value(t, 0, j);
            }
            row[pv(s)] = Rat(-1);
            row[pv(t)] = Rat(1);
            flush(Rat(0));
        }
    }

    MenuLPResult res;
    res.lp = lp::solve(prob);
    res.problem = std::move(prob);
    if (res.lp.status != lp::Status::optimal)
        throw invariant_error("optimal_menu_lp: solver did not reach an optimum");
    res.revenue = res.lp.objective;

    res.table.alloc.assign(K, std::vector<Rat>(m, Rat(0)));
    res.table.pay.assign(K, std::vector<Rat>(1, Rat(0)));
    res.menu.items = m;
    res.choice.assign(K, -1);
    for (std::size_t t = 0; t < K; ++t) {
        Lottery<Rat> l;
        for (int j = 0; j < m; ++j) {
            res.table.alloc[t][j] = res.lp.x[qv(t, j)];
            l.q.push_back(res.lp.x[qv(t, j)]);
        }
        l.price = res.lp.x[pv(t)];
        res.table.pay[t][0] = l.price;
        auto it = std::find(res.menu.lotteries.begin(), res.menu.lotteries.end(), l);
        if (it == res.menu.lotteries.end()) {
            res.menu.lotteries.push_back(l);
            res.choice[t] = static_cast<int>(res.menu.lotteries.size()) - 1;
        } else {
            res.choice[t] = static_cast<int>(it - res.menu.lotteries.begin());
        }
    }
    res.menu = res.menu.normalized();
    res.menu.validate();
    return res;
}

DsicLPResult optimal_dsic_lp(const TypeSpace<Rat>& ts, const FeasibilitySystem& fs) {
    const std::size_t P = ts.profiles.size();
    const int n = ts.agents, m = ts.items, g = n * m;
    if (fs.agents() != n || fs.items() != m)
        throw validation_error("optimal_dsic_lp: dimension mismatch");
    if (fs.tag() == FeasibilitySystem::Tag::general && g > 6)
        throw capacity_error("optimal_dsic_lp: general feasibility capped at 6 ground elements");

    // Variable layout: profile p owns q_{p,(i,j)} (row-major) then pi_{p,i}.
    const std::size_t per = static_cast<std::size_t>(g + n);
    auto qv = [&](std::size_t p, int i, int j) { return p * per + i * m + j; };
    auto piv = [&](std::size_t p, int i) { return p * per + g + i; };

    lp::Problem prob;
    prob.num_vars = P * per;
    prob.objective.assign(prob.num_vars, Rat(0));
    for (std::size_t p = 0; p < P; ++p)
        for (int i = 0; i < n; ++i) prob.objective[piv(p, i)] = ts.profiles[p].prob;

    std::vector<Rat> row(prob.num_vars, Rat(0));
    auto flush = [&](Rat b) {
        prob.add_row(row, std::move(b));
        std::fill(row.begin(), row.end(), Rat(0));
    };

    for (std::size_t p = 0; p < P; ++p) {
        // IR per agent: pi_i - sum_j q_ij v_ij <= 0
        for (int i = 0; i < n; ++i) {
            row[piv(p, i)] = Rat(1);
            for (int j = 0; j < m; ++j) row[qv(p, i, j)] = -ts.value(p, i, j);
            flush(Rat(0));
        }
        if (fs.tag() == FeasibilitySystem::Tag::matching) {
            for (int i = 0; i < n; ++i) {
                for (int j = 0; j < m; ++j) row[qv(p, i, j)] = Rat(1);
                flush(Rat(1));
            }
            for (int j = 0; j < m; ++j) {
                for (int i = 0; i < n; ++i) row[qv(p, i, j)] = Rat(1);
                flush(Rat(fs.item_caps()[j]));
            }
        } else {
            for (Mask s = 1; s < (Mask(1) << g); ++s) {
                auto matroid_rank = [&](const MatroidOracle& mo) {
                    int best = 0;
                    Mask sub = s;
                    while (true) {
                        if (mo.independent(sub)) best = std::max(best, popcount(sub));
                        if (sub == 0) break;
                        sub = (sub - 1) & s;
                    }
                    return best;
                };
                int r = std::min(matroid_rank(fs.j1()), matroid_rank(fs.j2()));
                for (Mask t = s; t; t &= t - 1) row[p * per + __builtin_ctz(t)] = Rat(1);
                flush(Rat(r));
            }
        }
    }
    // DSIC: truthful report dominates any other own report, for every fixed
    // profile of the other agents.
    for (int i = 0; i < n; ++i) {
        for (const auto& [key, profs] : detail::opponent_classes(ts, i)) {
            for (std::size_t truth : profs)
                for (std::size_t lie : profs) {
                    if (truth == lie) continue;
                    for (int j = 0; j < m; ++j) {
                        row[qv(lie, i, j)] += ts.value(truth, i, j);
                        row[qv(truth, i, j)] -= ts.value(truth, i, j);
                    }
                    row[piv(lie, i)] -= Rat(1);
                    row[piv(truth, i)] += Rat(1);
                    flush(Rat(0));
                }
        }
    }

    DsicLPResult res;
    res.lp = lp::solve(prob);
    if (res.lp.status != lp::Status::optimal)
        throw invariant_error("optimal_dsic_lp: solver did not reach an optimum");
    res.revenue = res.lp.objective;
    res.table.alloc.assign(P, std::vector<Rat>(g, Rat(0)));
    res.table.pay.assign(P, std::vector<Rat>(n, Rat(0)));
    for (std::size_t p = 0; p < P; ++p) {
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < m; ++j) res.table.alloc[p][i * m + j] = res.lp.x[qv(p, i, j)];
            res.table.pay[p][i] = res.lp.x[piv(p, i)];
        }
    }
    return res;
}

PricingResult optimal_pricing_exact(const TypeSpace<Rat>& ts, std::size_t comb_cap) {
    if (ts.agents != 1) throw validation_error("optimal_pricing_exact: single agent required");
    const int m = ts.items;
    Int L = 1;
    Rat vmax(0);
    for (const auto& prof : ts.profiles)
        for (const auto& v : prof.values) {
            L = boost::multiprecision::lcm(L, boost::multiprecision::denominator(v));
            vmax = std::max(vmax, v);
        }
    Int steps_big = boost::multiprecision::numerator(vmax * Rat(L));
    if (steps_big > 1'000'000)
        throw capacity_error("optimal_pricing_exact: price grid too fine");
    const long steps = steps_big.convert_to<long>();
    const long cnt = steps + 2;  // prices 0..steps times 1/L, plus "not offered"
    double total = std::pow(static_cast<double>(cnt), m);
    if (total > static_cast<double>(comb_cap))
        throw capacity_error("optimal_pricing_exact: too many price combinations");

    std::vector<Rat> grid(steps + 1);
    for (long k = 0; k <= steps; ++k) grid[k] = Rat(k) / Rat(L);

    PricingResult best;
    best.revenue = Rat(-1);
    best.pricing.prices.assign(m, std::nullopt);
    std::vector<long> state(m, 0);
    ItemPricing<Rat> cur;
    cur.prices.assign(m, std::nullopt);
    while (true) {
        for (int j = 0; j < m; ++j)
            cur.prices[j] = state[j] <= steps ? std::optional<Rat>(grid[state[j]]) : std::nullopt;
        Rat rev = pricing_revenue(cur, ts);
        if (rev > best.revenue) {
            best.revenue = rev;
            best.pricing = cur;
        }
        int j = m - 1;
        while (j >= 0 && state[j] == cnt - 1) state[j--] = 0;
        if (j < 0) break;
        ++state[j];
    }
    return best;
}

}  // namespace lotgap
