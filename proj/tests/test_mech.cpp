// Copyright 2026 The lotgap Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include "lotgap/mech.hpp"
#include "lotgap/opt.hpp"

using namespace lotgap;

namespace {

TypeSpace<Rat> two_iid_items() {
    auto d = make_discrete<Rat>({Rat(1), Rat(2)}, {Rat(1, 2), Rat(1, 2)});
    return product_type_space<Rat>({{d, d}});
}

}  // namespace

TEST_CASE("buyer best response maximizes utility, ties toward higher price") {
    LotteryMenu<Rat> menu{2,
                          {{{Rat(0), Rat(0)}, Rat(0)},
                           {{Rat(1), Rat(0)}, Rat(1)},
                           {{Rat(1, 2), Rat(1, 2)}, Rat(1, 2)}}};
    menu.validate();
    // values (2, 1): full item gives u = 1, lottery gives u = 1; price wins.
    CHECK(best_response(menu, {Rat(2), Rat(1)}) == 1);
    // values (0, 0): only the null option is rational.
    CHECK(best_response(menu, {Rat(0), Rat(0)}) == 0);
}

TEST_CASE("menu and pricing revenue agree with hand enumeration") {
    auto ts = two_iid_items();
    LotteryMenu<Rat> menu{2, {{{Rat(0), Rat(0)}, Rat(0)}, {{Rat(1), Rat(0)}, Rat(2)}}};
    // Item 1 at price 2 sells on the half of profiles with v1 = 2.
    CHECK(menu_revenue(menu, ts) == Rat(1));

    ItemPricing<Rat> pr{{Rat(2), Rat(2)}};
    // Sells unless both values are 1: revenue 2 * 3/4.
    CHECK(pricing_revenue(pr, ts) == Rat(3, 2));
}

TEST_CASE("IC and IR checks accept the LP optimum and flag violations") {
    auto ts = two_iid_items();
    auto mlp = optimal_menu_lp(ts);
    CHECK(check_ic(mlp.table, ts).ok);
    CHECK(check_ir(mlp.table, ts).ok);

    auto broken = mlp.table;
    broken.pay[0][0] += Rat(10);  // overcharge one type
    CHECK_FALSE((check_ic(broken, ts).ok && check_ir(broken, ts).ok));
}

TEST_CASE("mechanism_to_lottery groups profiles by opponent values") {
    auto d = make_discrete<Rat>({Rat(1), Rat(2)}, {Rat(1, 2), Rat(1, 2)});
    auto ts = product_type_space<Rat>({{d}, {d}});
    auto fs = FeasibilitySystem::matching(2, 1, {1});
    auto dsic = optimal_dsic_lp(ts, fs);
    auto lm = mechanism_to_lottery(dsic.table, ts);
    // Two agents, two opponent classes each: the menus must reproduce the
    // table's allocations and payments on every profile.
    for (std::size_t p = 0; p < ts.profiles.size(); ++p)
        for (int i = 0; i < 2; ++i) {
            const auto& menu = lm.menus[i][lm.menu_of[p][i]];
            const auto& pick = menu.lotteries[lm.choice_of[p][i]];
            CHECK(pick.price == dsic.table.pay[p][i]);
            CHECK(pick.q[0] == dsic.table.alloc[p][i]);
        }
}

TEST_CASE("table feasibility check accepts the LP table and rejects oversale") {
    auto d = make_discrete<Rat>({Rat(1), Rat(2)}, {Rat(1, 2), Rat(1, 2)});
    auto ts = product_type_space<Rat>({{d}, {d}});
    auto fs = FeasibilitySystem::matching(2, 1, {1});
    auto dsic = optimal_dsic_lp(ts, fs);
    CHECK(check_table_feasibility(dsic.table, ts, fs).ok);

    auto bad = dsic.table;
    bad.alloc[0][0] = Rat(1);
    bad.alloc[0][1] = Rat(1);  // both agents get the single item w.p. 1
    CHECK_FALSE(check_table_feasibility(bad, ts, fs).ok);
}
