// Copyright 2026 The lotgap Authors
// SPDX-License-Identifier: Apache-2.0
//
// Mechanisms over discrete type spaces: lottery menus, item pricings,
// allocation/payment tables, incentive checks, and the conversion between
// tables and per-agent menu representations.

#pragma once

#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "lotgap/dist.hpp"
#include "lotgap/errors.hpp"
#include "lotgap/feas.hpp"

namespace lotgap {

/// One menu entry: buy allocation probabilities q (one per item) at `price`.
template <typename T>
struct Lottery {
    std::vector<T> q;
    T price = num<T>::zero();

    friend bool operator==(const Lottery&, const Lottery&) = default;
};

template <typename T>
T lottery_utility(const Lottery<T>& l, const std::vector<T>& values) {
    T u = -l.price;
    for (std::size_t j = 0; j < l.q.size(); ++j) u += l.q[j] * values[j];
    return u;
}

/// A menu of lotteries over m items. `normalized()` guarantees the null
/// option (all-zero allocation at price zero) is present.
template <typename T>
struct LotteryMenu {
    int items = 0;
    std::vector<Lottery<T>> lotteries;

    void validate() const {
        for (const auto& l : lotteries) {
            if (static_cast<int>(l.q.size()) != items)
                throw validation_error("lottery menu: allocation arity mismatch");
            if (l.price < num<T>::zero())
                throw validation_error("lottery menu: negative price");
            // Per-item probabilities only; joint caps are a property of the
            // feasibility system, not of the menu (lifted menus exceed 1).
            for (const auto& qj : l.q)
                if (qj < num<T>::zero() || qj > num<T>::one())
                    throw validation_error("lottery menu: allocation outside [0,1]");
        }
    }

    bool has_null() const {
        for (const auto& l : lotteries) {
            bool zero = num<T>::eq(l.price, num<T>::zero());
            for (const auto& qj : l.q) zero = zero && num<T>::eq(qj, num<T>::zero());
            if (zero) return true;
        }
        return false;
    }

    LotteryMenu normalized() const {
        LotteryMenu out = *this;
        if (!out.has_null())
            out.lotteries.push_back({std::vector<T>(items, num<T>::zero()), num<T>::zero()});
        return out;
    }
};

/// Best response tie rule, used everywhere a buyer picks from a menu:
/// maximize utility, then prefer the higher price, then the lower index.
template <typename T>
int best_response(const LotteryMenu<T>& menu, const std::vector<T>& values) {
    if (menu.lotteries.empty()) throw validation_error("best_response: empty menu");
    int best = 0;
    T bu = lottery_utility(menu.lotteries[0], values);
    for (int i = 1; i < static_cast<int>(menu.lotteries.size()); ++i) {
        T u = lottery_utility(menu.lotteries[i], values);
        if (u > bu || (num<T>::eq(u, bu) && menu.lotteries[i].price > menu.lotteries[best].price)) {
            best = i;
            bu = u;
        }
    }
    return best;
}

/// Expected revenue of a menu sold to one agent drawn from `ts` (must be a
/// single-agent type space). The null option participates in ties.
template <typename T>
T menu_revenue(const LotteryMenu<T>& menu, const TypeSpace<T>& ts) {
    if (ts.agents != 1) throw validation_error("menu_revenue: single-agent type space required");
    LotteryMenu<T> m = menu.normalized();
    T rev = num<T>::zero();
    for (const auto& prof : ts.profiles)
        rev += prof.prob * m.lotteries[best_response(m, prof.values)].price;
    return rev;
}

/// Deterministic item pricing; an absent price means the item is not offered.
template <typename T>
struct ItemPricing {
    std::vector<std::optional<T>> prices;
};

/// Index of the purchased item, or nullopt for walking away. Ties: maximize
/// utility, then higher price (walking away counts as price zero), then
/// lower item index.
template <typename T>
std::optional<int> pricing_best_response(const ItemPricing<T>& pr, const std::vector<T>& values) {
    std::optional<int> best;
    T bu = num<T>::zero(), bp = num<T>::zero();
    for (int j = 0; j < static_cast<int>(pr.prices.size()); ++j) {
        if (!pr.prices[j]) continue;
        T u = values[j] - *pr.prices[j];
        if (u > bu || (num<T>::eq(u, bu) && *pr.prices[j] > bp)) {
            best = j;
            bu = u;
            bp = *pr.prices[j];
        }
    }
    return best;
}

template <typename T>
T pricing_revenue(const ItemPricing<T>& pr, const TypeSpace<T>& ts) {
    if (ts.agents != 1)
        throw validation_error("pricing_revenue: single-agent type space required");
    T rev = num<T>::zero();
    for (const auto& prof : ts.profiles) {
        auto j = pricing_best_response(pr, prof.values);
        if (j) rev += prof.prob * *pr.prices[*j];
    }
    return rev;
}

/// Full direct-revelation outcome table, aligned with ts.profiles: alloc has
/// one probability per (agent, item) in row-major order, pay one per agent.
template <typename T>
struct MechanismTable {
    std::vector<std::vector<T>> alloc;
    std::vector<std::vector<T>> pay;

    void validate(const TypeSpace<T>& ts) const {
        if (alloc.size() != ts.profiles.size() || pay.size() != ts.profiles.size())
            throw validation_error("mechanism table: one row per profile required");
        for (std::size_t p = 0; p < alloc.size(); ++p) {
            if (static_cast<int>(alloc[p].size()) != ts.agents * ts.items ||
                static_cast<int>(pay[p].size()) != ts.agents)
                throw validation_error("mechanism table: row arity mismatch");
            for (const auto& q : alloc[p])
                if (q < num<T>::zero() || q > num<T>::one())
                    throw validation_error("mechanism table: allocation outside [0,1]");
        }
    }

    T utility(const TypeSpace<T>& ts, std::size_t prof, int agent) const {
        T u = -pay[prof][agent];
        for (int j = 0; j < ts.items; ++j)
            u += alloc[prof][agent * ts.items + j] * ts.value(prof, agent, j);
        return u;
    }

    /// Utility agent `agent` with true profile `truth` gets by reporting the
    /// type it holds in profile `lie` (other coordinates of `lie` must match).
    T deviation_utility(const TypeSpace<T>& ts, std::size_t truth, std::size_t lie,
                        int agent) const {
        T u = -pay[lie][agent];
        for (int j = 0; j < ts.items; ++j)
            u += alloc[lie][agent * ts.items + j] * ts.value(truth, agent, j);
        return u;
    }

    T expected_revenue(const TypeSpace<T>& ts) const {
        T rev = num<T>::zero();
        for (std::size_t p = 0; p < pay.size(); ++p)
            for (int i = 0; i < ts.agents; ++i) rev += ts.profiles[p].prob * pay[p][i];
        return rev;
    }
};

struct CheckResult {
    bool ok = true;
    std::string witness;
};

namespace detail {

/// Groups profile indices by the values of all agents except `agent`.
template <typename T>
std::map<std::vector<T>, std::vector<std::size_t>> opponent_classes(const TypeSpace<T>& ts,
                                                                    int agent) {
    std::map<std::vector<T>, std::vector<std::size_t>> classes;
    for (std::size_t p = 0; p < ts.profiles.size(); ++p) {
        std::vector<T> key;
        for (int i = 0; i < ts.agents; ++i) {
            if (i == agent) continue;
            for (int j = 0; j < ts.items; ++j) key.push_back(ts.value(p, i, j));
        }
        classes[key].push_back(p);
    }
    return classes;
}

}  // namespace detail

/// Ex-post incentive compatibility: truthful reporting beats any misreport
/// for every fixed profile of the other agents.
template <typename T>
CheckResult check_ic(const MechanismTable<T>& table, const TypeSpace<T>& ts) {
    for (int i = 0; i < ts.agents; ++i) {
        for (const auto& [key, profs] : detail::opponent_classes(ts, i)) {
            for (std::size_t truth : profs)
                for (std::size_t lie : profs) {
                    if (truth == lie) continue;
                    T tu = table.utility(ts, truth, i);
                    T du = table.deviation_utility(ts, truth, lie, i);
                    if (!num<T>::ge(tu, du)) {
                        std::ostringstream w;
                        w << "agent " << i << " profile " << truth << " gains by reporting as "
                          << "profile " << lie;
                        return {false, w.str()};
                    }
                }
        }
    }
    return {};
}

/// Ex-post individual rationality: nonnegative utility at every profile.
template <typename T>
CheckResult check_ir(const MechanismTable<T>& table, const TypeSpace<T>& ts) {
    for (std::size_t p = 0; p < ts.profiles.size(); ++p)
        for (int i = 0; i < ts.agents; ++i)
            if (!num<T>::ge(table.utility(ts, p, i), num<T>::zero())) {
                std::ostringstream w;
                w << "agent " << i << " has negative utility at profile " << p;
                return {false, w.str()};
            }
    return {};
}

/// Every truthful mechanism, viewed per agent: for each profile of the other
/// agents the mechanism offers a menu, and the agent's outcome is a
/// utility-maximal entry of that menu.
template <typename T>
struct LotteryMechanism {
    // menus[agent][class] with the null option appended.
    std::vector<std::vector<LotteryMenu<T>>> menus;
    // menu_of[profile][agent] -> class index; choice_of[profile][agent] -> entry.
    std::vector<std::vector<int>> menu_of;
    std::vector<std::vector<int>> choice_of;
};

/// Rewrites an IC+IR table as per-agent menus. The recorded choice is the
/// table's own outcome; incentive compatibility makes it utility-maximal in
/// its menu, which is re-verified here.
template <typename T>
LotteryMechanism<T> mechanism_to_lottery(const MechanismTable<T>& table, const TypeSpace<T>& ts) {
    table.validate(ts);
    if (auto r = check_ic(table, ts); !r.ok)
        throw validation_error("mechanism_to_lottery: table is not IC: " + r.witness);
    if (auto r = check_ir(table, ts); !r.ok)
        throw validation_error("mechanism_to_lottery: table is not IR: " + r.witness);

    LotteryMechanism<T> lm;
    lm.menus.resize(ts.agents);
    lm.menu_of.assign(ts.profiles.size(), std::vector<int>(ts.agents, -1));
    lm.choice_of.assign(ts.profiles.size(), std::vector<int>(ts.agents, -1));

    for (int i = 0; i < ts.agents; ++i) {
        for (const auto& [key, profs] : detail::opponent_classes(ts, i)) {
            LotteryMenu<T> menu{ts.items, {}};
            std::vector<int> choice(profs.size(), -1);
            for (std::size_t k = 0; k < profs.size(); ++k) {
                std::size_t p = profs[k];
                Lottery<T> l;
                l.q.assign(table.alloc[p].begin() + i * ts.items,
                           table.alloc[p].begin() + (i + 1) * ts.items);
                l.price = table.pay[p][i];
                auto it = std::find(menu.lotteries.begin(), menu.lotteries.end(), l);
                if (it == menu.lotteries.end()) {
                    menu.lotteries.push_back(l);
                    choice[k] = static_cast<int>(menu.lotteries.size()) - 1;
                } else {
                    choice[k] = static_cast<int>(it - menu.lotteries.begin());
                }
            }
            menu = menu.normalized();
            menu.validate();
            int cls = static_cast<int>(lm.menus[i].size());
            lm.menus[i].push_back(menu);
            for (std::size_t k = 0; k < profs.size(); ++k) {
                std::size_t p = profs[k];
                lm.menu_of[p][i] = cls;
                lm.choice_of[p][i] = choice[k];
                // Sanity: the recorded choice must achieve the menu optimum.
                std::vector<T> vals(ts.items);
                for (int j = 0; j < ts.items; ++j) vals[j] = ts.value(p, i, j);
                T chosen = lottery_utility(menu.lotteries[choice[k]], vals);
                T opt = lottery_utility(menu.lotteries[best_response(menu, vals)], vals);
                if (!num<T>::ge(chosen, opt))
                    throw invariant_error("mechanism_to_lottery: recorded choice is suboptimal");
            }
        }
    }
    return lm;
}

/// Re-derives an outcome table from the menus by replaying best responses
/// under the global tie rule. With ties present this may legitimately differ
/// from the source table; callers compare revenues to detect that.
template <typename T>
MechanismTable<T> induced_table(const LotteryMechanism<T>& lm, const TypeSpace<T>& ts) {
    MechanismTable<T> out;
    out.alloc.assign(ts.profiles.size(), std::vector<T>(ts.agents * ts.items, num<T>::zero()));
    out.pay.assign(ts.profiles.size(), std::vector<T>(ts.agents, num<T>::zero()));
    for (std::size_t p = 0; p < ts.profiles.size(); ++p)
        for (int i = 0; i < ts.agents; ++i) {
            const auto& menu = lm.menus[i][lm.menu_of[p][i]];
            std::vector<T> vals(ts.items);
            for (int j = 0; j < ts.items; ++j) vals[j] = ts.value(p, i, j);
            const auto& l = menu.lotteries[best_response(menu, vals)];
            for (int j = 0; j < ts.items; ++j) out.alloc[p][i * ts.items + j] = l.q[j];
            out.pay[p][i] = l.price;
        }
    return out;
}

/// Fractional feasibility of a table against a set system: for every subset S
/// of (agent, item) pairs, the allocation mass on S must fit within both
/// matroid ranks. This is exactly membership in the intersection polytope.
template <typename T>
CheckResult check_table_feasibility(const MechanismTable<T>& table, const TypeSpace<T>& ts,
                                    const FeasibilitySystem& fs) {
    const int g = fs.ground();
    if (g > 12)
        throw capacity_error("check_table_feasibility: exhaustive check capped at 12 elements");
    if (fs.agents() != ts.agents || fs.items() != ts.items)
        throw validation_error("check_table_feasibility: dimension mismatch");
    for (std::size_t p = 0; p < table.alloc.size(); ++p) {
        for (Mask s = 1; s < (Mask(1) << g); ++s) {
            T mass = num<T>::zero();
            for (Mask t = s; t; t &= t - 1) mass += table.alloc[p][__builtin_ctz(t)];
            auto matroid_rank = [&](const MatroidOracle& m) {
                int best = 0;
                Mask sub = s;
                while (true) {
                    if (m.independent(sub)) best = std::max(best, popcount(sub));
                    if (sub == 0) break;
                    sub = (sub - 1) & s;
                }
                return best;
            };
            int bound = std::min(matroid_rank(fs.j1()), matroid_rank(fs.j2()));
            if (!num<T>::le(mass, num<T>::from_int(bound))) {
                std::ostringstream w;
                w << "profile " << p << ": allocation mass on a " << popcount(s)
                  << "-element set exceeds rank " << bound;
                return {false, w.str()};
            }
        }
    }
    return {};
}

}  // namespace lotgap
