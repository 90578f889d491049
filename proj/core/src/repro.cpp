// Copyright 2026 The lotgap Authors
// SPDX-License-Identifier: Apache-2.0

#include "lotgap/repro.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>

#include "lotgap/dist.hpp"
#include "lotgap/opt.hpp"

namespace lotgap {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

ReproCheck check_range(std::string name, double value, double lo, double hi) {
    ReproCheck c;
    c.name = std::move(name);
    c.value = value;
    c.lo = lo;
    c.hi = hi;
    c.pass = lo <= value && value <= hi;
    return c;
}

struct MenuOption {
    double q1, q2, price;
};

/// Buyer best response: maximize utility, ties toward the higher price.
const MenuOption& best_option(const std::vector<MenuOption>& menu, double v1, double v2) {
    const MenuOption* best = &menu.front();
    double bu = -std::numeric_limits<double>::infinity();
    for (const auto& o : menu) {
        double u = o.q1 * v1 + o.q2 * v2 - o.price;
        if (u > bu + 1e-12 || (u > bu - 1e-12 && o.price > best->price)) {
            bu = std::max(u, bu);
            best = &o;
        }
    }
    return *best;
}

}  // namespace

ReproResult repro_appendix(long n, int grid) {
    auto t0 = Clock::now();
    ReproResult res;
    res.name = "appendix";

    auto d = equal_revenue_discrete<double>(n, grid);
    const std::size_t K = d.size();
    const double big = 2.0 + 3.0 * static_cast<double>(n) / 8.0;
    std::vector<MenuOption> menu = {
        {0.0, 0.0, 0.0}, {0.5, 0.5, 2.5}, {1.0, 0.0, big}, {0.0, 1.0, big}};

    double revenue = 0.0, r1_mass = 0.0;
    for (std::size_t i = 0; i < K; ++i)
        for (std::size_t j = 0; j < K; ++j) {
            double prob = d.probs[i] * d.probs[j];
            const auto& pick = best_option(menu, d.support[i], d.support[j]);
            revenue += prob * pick.price;
            if (pick.price == 2.5) r1_mass += prob;
        }

    // Optimal single-item revenue over two iid copies: expected maximum of
    // the clipped ironed virtual values. phi_bar is nondecreasing along the
    // support, so the running cdf gives the maximum's distribution directly.
    auto vv = virtual_values(d);
    double my_copies = 0.0, cdf = 0.0;
    for (std::size_t k = 0; k < K; ++k) {
        double next = cdf + d.probs[k];
        my_copies += std::max(vv.phi_bar[k], 0.0) * (next * next - cdf * cdf);
        cdf = next;
    }

    res.checks.push_back(
        check_range("menu-revenue", revenue, 2.275 * 0.98, 2.275 * 1.02));
    res.checks.push_back(check_range("half-half-mass", r1_mass, 0.49, 0.53));
    res.checks.push_back(check_range("copies-optimal", my_copies, 0.0, 2.0 + 1e-9));
    res.checks.push_back(check_range("menu-vs-copies-bound-ratio", revenue / 2.0, 1.10,
                                     std::numeric_limits<double>::infinity()));
    res.elapsed_seconds = seconds_since(t0);
    return res;
}

ReproResult repro_uniform56(double step) {
    auto t0 = Clock::now();
    ReproResult res;
    res.name = "uniform56";

    auto d = uniform_grid(5.0, 6.0, step);
    const std::size_t K = d.size();

    // Best symmetric item price: the buyer purchases iff max(v1, v2) clears
    // the price, so revenue(p) = p * (1 - F(p-)^2). Candidate prices are the
    // support atoms.
    double best_price = 0.0, best_rev = -1.0, below = 0.0;
    for (std::size_t k = 0; k < K; ++k) {
        double rev = d.support[k] * (1.0 - below * below);
        if (rev > best_rev) {
            best_rev = rev;
            best_price = d.support[k];
        }
        below += d.probs[k];
    }

    std::vector<MenuOption> menu = {{0.0, 0.0, 0.0},
                                    {1.0, 0.0, best_price},
                                    {0.0, 1.0, best_price},
                                    {0.5, 0.5, 5.057}};
    double aug_rev = 0.0;
    for (std::size_t i = 0; i < K; ++i)
        for (std::size_t j = 0; j < K; ++j)
            aug_rev += d.probs[i] * d.probs[j] * best_option(menu, d.support[i], d.support[j]).price;

    res.checks.push_back(check_range("symmetric-price", best_price, 5.092, 5.102));
    res.checks.push_back(check_range("lottery-improvement", aug_rev - best_rev, 1e-9,
                                     std::numeric_limits<double>::infinity()));

    // Exact-rational cross-check on a coarse grid: the optimal lottery menu
    // must weakly dominate the optimal item pricing.
    Rat quarter(1, 4);
    auto coarse = uniform_grid(Rat(5), Rat(6), quarter);
    auto ts = product_type_space<Rat>({{coarse, coarse}});
    auto mlp = optimal_menu_lp(ts);
    auto pricing = optimal_pricing_exact(ts);

    // Best symmetric price on the coarse grid, augmented with the same
    // half-half lottery; the LP optimum dominates any fixed menu.
    Rat best_sym(0), best_sym_rev(-1), coarse_below(0);
    for (std::size_t k = 0; k < coarse.size(); ++k) {
        Rat rev = coarse.support[k] * (Rat(1) - coarse_below * coarse_below);
        if (rev > best_sym_rev) {
            best_sym_rev = rev;
            best_sym = coarse.support[k];
        }
        coarse_below += coarse.probs[k];
    }
    Rat half(1, 2), lottery_price(5057, 1000);
    LotteryMenu<Rat> aug{2,
                         {{{Rat(0), Rat(0)}, Rat(0)},
                          {{Rat(1), Rat(0)}, best_sym},
                          {{Rat(0), Rat(1)}, best_sym},
                          {{half, half}, lottery_price}}};
    Rat aug_exact = menu_revenue(aug, ts);

    auto exact_check = [](std::string name, const Rat& lhs, const Rat& rhs) {
        ReproCheck c;
        c.name = std::move(name);
        c.value = num<Rat>::to_double(lhs - rhs);
        c.lo = 0.0;
        c.hi = std::numeric_limits<double>::infinity();
        c.pass = lhs >= rhs;
        return c;
    };
    res.checks.push_back(exact_check("coarse-menu-vs-pricing", mlp.revenue, pricing.revenue));
    res.checks.push_back(exact_check("coarse-lp-vs-augmented-menu", mlp.revenue, aug_exact));

    res.elapsed_seconds = seconds_since(t0);
    return res;
}

nlohmann::json repro_to_json(const ReproResult& r) {
    nlohmann::json checks = nlohmann::json::array();
    for (const auto& c : r.checks)
        checks.push_back(
            {{"name", c.name}, {"value", c.value}, {"lo", c.lo}, {"hi", c.hi}, {"pass", c.pass}});
    return {{"name", r.name},
            {"all_pass", r.all_pass()},
            {"elapsed_seconds", r.elapsed_seconds},
            {"checks", checks}};
}

}  // namespace lotgap
