// Copyright 2026 The lotgap Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include "lotgap/bounds.hpp"
#include "lotgap/harness.hpp"
#include "lotgap/opt.hpp"

using namespace lotgap;

namespace {

TypeSpace<Rat> two_iid_items() {
    auto d = make_discrete<Rat>({Rat(1), Rat(2)}, {Rat(1, 2), Rat(1, 2)});
    return product_type_space<Rat>({{d, d}});
}

}  // namespace

TEST_CASE("ironed virtual values of {1:1/2, 2:1/2}") {
    auto d = make_discrete<Rat>({Rat(1), Rat(2)}, {Rat(1, 2), Rat(1, 2)});
    auto vv = virtual_values(d);
    CHECK(vv.phi[0] == Rat(0));
    CHECK(vv.phi[1] == Rat(2));
    CHECK(vv.phi_bar[0] == Rat(0));
    CHECK(vv.phi_bar[1] == Rat(2));
}

TEST_CASE("ironing flattens a decreasing virtual value") {
    // Equal-revenue-style three point distribution: phi decreases, the hull
    // slope must be nondecreasing and revenue-preserving at the top.
    auto d = make_discrete<Rat>({Rat(1), Rat(2), Rat(4)}, {Rat(1, 2), Rat(1, 4), Rat(1, 4)});
    auto vv = virtual_values(d);
    for (std::size_t k = 0; k + 1 < d.size(); ++k) CHECK(vv.phi_bar[k] <= vv.phi_bar[k + 1]);
    // Expected ironed virtual surplus of serving always = mean; of serving
    // nobody = 0; the monopoly revenue sits in between.
    auto mono = monopoly(d);
    Rat best_iron(0);
    for (std::size_t k = 0; k < d.size(); ++k)
        best_iron = std::max(best_iron, d.support[k] * d.tail(k));
    CHECK(mono.revenue == best_iron);
}

TEST_CASE("monopoly price on a two point distribution") {
    auto d = make_discrete<Rat>({Rat(1), Rat(3)}, {Rat(2, 3), Rat(1, 3)});
    auto mono = monopoly(d);
    CHECK(mono.revenue == Rat(1));  // price 1 and price 3 tie at 1; lower index kept
}

TEST_CASE("single item, two iid bidders: optimum and Vickrey by hand") {
    auto d = make_discrete<Rat>({Rat(1), Rat(2)}, {Rat(1, 2), Rat(1, 2)});
    auto ts = product_type_space<Rat>({{d}, {d}});
    auto fs = FeasibilitySystem::matching(2, 1, {1});
    auto my = myerson(ts, fs);
    CHECK(my.revenue == Rat(3, 2));
    CHECK(vickrey_revenue(ts, fs) == Rat(5, 4));
    auto dsic = optimal_dsic_lp(ts, fs);
    CHECK(dsic.revenue == Rat(3, 2));
}

TEST_CASE("menu LP equals pricing and copies optimum on two iid items") {
    auto ts = two_iid_items();
    auto mlp = optimal_menu_lp(ts);
    CHECK(mlp.revenue == Rat(3, 2));
    auto pricing = optimal_pricing_exact(ts);
    CHECK(pricing.revenue == Rat(3, 2));
    auto copies = build_copies(ts, FeasibilitySystem::matching(1, 2, {1, 1}));
    CHECK(myerson(copies.ts, copies.fs).revenue == Rat(3, 2));
}

TEST_CASE("optimal_dsic_lp matches myerson on randomized single-item copies") {
    // Criterion: on single-item copies instances the ex-post IC LP optimum
    // coincides with the virtual-surplus optimum.
    for (std::uint64_t seed = 1; seed <= 6; ++seed) {
        SplitMix64 rng(seed);
        std::vector<std::vector<DiscreteDist<Rat>>> dists;
        int agents = 2 + static_cast<int>(seed % 2);
        for (int i = 0; i < agents; ++i) dists.push_back({random_dist(rng, 2)});
        auto ts = product_type_space<Rat>(dists);
        auto fs = FeasibilitySystem::matching(agents, 1, {1});
        auto my = myerson(ts, fs);
        auto dsic = optimal_dsic_lp(ts, fs);
        CHECK(my.revenue == dsic.revenue);
    }
}

TEST_CASE("pricing oracle beats every lattice pricing it enumerates") {
    auto d1 = make_discrete<Rat>({Rat(1), Rat(3)}, {Rat(1, 2), Rat(1, 2)});
    auto d2 = make_discrete<Rat>({Rat(2)}, {Rat(1)});
    auto ts = product_type_space<Rat>({{d1, d2}});
    auto res = optimal_pricing_exact(ts);
    // Hand check: price item 2 at 2 and item 1 out of reach -> revenue 2...
    // but (3, 2) buyers prefer item 1 at 3 only if u ties break right.
    // Enumerate a few candidate pricings explicitly.
    std::vector<ItemPricing<Rat>> candidates = {
        {{Rat(1), Rat(2)}}, {{Rat(3), Rat(2)}}, {{Rat(3), std::nullopt}}, {{std::nullopt, Rat(2)}}};
    for (const auto& pr : candidates) CHECK(pricing_revenue(pr, ts) <= res.revenue);
    CHECK(res.revenue >= Rat(2));
}

TEST_CASE("derived single-parameter menus collect nonnegative prices") {
    auto ts = two_iid_items();
    auto mlp = optimal_menu_lp(ts);
    auto lm = mechanism_to_lottery(mlp.table, ts);
    auto der = derive_pseudo_mechanism(lm, ts);
    for (std::size_t p = 0; p < ts.profiles.size(); ++p)
        for (const auto& price : der.price[p]) CHECK(price >= Rat(0));
}
