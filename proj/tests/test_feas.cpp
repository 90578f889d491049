// Copyright 2026 The lotgap Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <vector>

#include "lotgap/feas.hpp"
#include "lotgap/harness.hpp"

using namespace lotgap;

namespace {

// Independence, heredity and augmentation, checked exhaustively.
void check_matroid_axioms(const MatroidOracle& m) {
    const int g = m.ground();
    const Mask full = (g == 32) ? ~Mask(0) : ((Mask(1) << g) - 1);
    REQUIRE(m.independent(0));
    for (Mask s = 0; s <= full; ++s) {
        if (!m.independent(s)) continue;
        for (int e = 0; e < g; ++e)
            if (s & (Mask(1) << e)) CHECK(m.independent(s ^ (Mask(1) << e)));
        for (Mask t = 0; t <= full; ++t) {
            if (!m.independent(t) || popcount(t) <= popcount(s)) continue;
            bool extended = false;
            for (int e = 0; e < g && !extended; ++e)
                if ((t & (Mask(1) << e)) && !(s & (Mask(1) << e)))
                    extended = m.independent(s | (Mask(1) << e));
            CHECK_MESSAGE(extended, "augmentation failed");
        }
        if (s == full) break;
    }
}

std::vector<MatroidOracle> builtin_oracles() {
    std::vector<MatroidOracle> out;
    out.push_back(MatroidOracle::uniform(5, 2));
    out.push_back(MatroidOracle::uniform(4, 4));
    out.push_back(MatroidOracle::uniform(3, 0));
    out.push_back(MatroidOracle::partition({0, 0, 1, 1, 2}, {1, 2, 1}));
    out.push_back(MatroidOracle::partition({0, 1, 0, 1}, {1, 1}));
    // Graphic matroid of K4 (edges 01,02,03,12,13,23): forests only.
    std::vector<Mask> forests;
    int edges[6][2] = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
    for (Mask s = 0; s < 64; ++s) {
        // union-find over 4 vertices
        int parent[4] = {0, 1, 2, 3};
        auto find = [&](int x) {
            while (parent[x] != x) x = parent[x] = parent[parent[x]];
            return x;
        };
        bool acyclic = true;
        for (int e = 0; e < 6 && acyclic; ++e)
            if (s & (Mask(1) << e)) {
                int a = find(edges[e][0]), b = find(edges[e][1]);
                if (a == b)
                    acyclic = false;
                else
                    parent[a] = b;
            }
        if (acyclic) forests.push_back(s);
    }
    out.push_back(MatroidOracle::explicit_sets(6, std::move(forests)));
    return out;
}

}  // namespace

TEST_CASE("built-in matroid oracles satisfy both axioms exhaustively") {
    for (const auto& m : builtin_oracles()) check_matroid_axioms(m);
}

TEST_CASE("explicit oracle construction rejects non-matroids") {
    // Missing heredity: {0,1} independent but {1} not listed.
    CHECK_THROWS_AS(MatroidOracle::explicit_sets(2, {0b00, 0b01, 0b11}), validation_error);
    // Heredity fine, augmentation broken: {2} cannot grow toward {0,1}.
    CHECK_THROWS_AS(
        MatroidOracle::explicit_sets(3, {0b000, 0b001, 0b010, 0b100, 0b011}),
        validation_error);
}

TEST_CASE("exchange bijection: certificate properties on all basis pairs") {
    for (const auto& m : builtin_oracles()) {
        const int g = m.ground();
        const Mask full = (Mask(1) << g) - 1;
        std::vector<Mask> indep;
        for (Mask s = 0; s <= full && g <= 8; ++s)
            if (m.independent(s)) indep.push_back(s);
        for (Mask b1 : indep)
            for (Mask b2 : indep) {
                if (popcount(b1) != popcount(b2)) continue;
                auto bij = exchange_bijection(m, b1, b2);
                CHECK(bij.size() == static_cast<std::size_t>(popcount(b1 & ~b2)));
                Mask image = 0;
                for (auto [e, f] : bij) {
                    CHECK((b1 >> e & 1) == 1);
                    CHECK((b2 >> f & 1) == 1);
                    CHECK((b2 >> e & 1) == 0);
                    CHECK((b1 >> f & 1) == 0);
                    CHECK_FALSE((image >> f & 1));  // injective
                    image |= Mask(1) << f;
                    CHECK(m.independent((b1 & ~(Mask(1) << e)) | (Mask(1) << f)));
                }
            }
    }
}

TEST_CASE("partial exchange maps: domain certificate and outside certificate") {
    for (const auto& m : builtin_oracles()) {
        const int g = m.ground();
        if (g > 8) continue;
        const Mask full = (Mask(1) << g) - 1;
        std::vector<Mask> indep;
        for (Mask s = 0; s <= full; ++s)
            if (m.independent(s)) indep.push_back(s);
        for (Mask a1 : indep)
            for (Mask a2 : indep) {
                if (a1 & a2) continue;
                auto pe = partial_exchange_maps(m, a1, a2);
                CHECK((pe.domain & ~a2) == 0);
                Mask image = 0;
                for (auto [e, f] : pe.map) {
                    CHECK((pe.domain >> e & 1) == 1);
                    CHECK((a1 >> f & 1) == 1);
                    CHECK_FALSE((image >> f & 1));
                    image |= Mask(1) << f;
                    CHECK(m.independent((a1 & ~(Mask(1) << f)) | (Mask(1) << e)));
                }
                for (int e = 0; e < g; ++e)
                    if ((a2 >> e & 1) && !(pe.domain >> e & 1))
                        CHECK(m.independent(a1 | (Mask(1) << e)));
            }
    }
}

TEST_CASE("max_weight_feasible equals brute force on every suite shape") {
    std::vector<FeasibilitySystem> systems;
    systems.push_back(FeasibilitySystem::matching(2, 2, {1, 1}));
    systems.push_back(FeasibilitySystem::matching(3, 2, {2, 1}));
    systems.push_back(FeasibilitySystem::matching(2, 3, {1, 2, 1}));
    systems.push_back(FeasibilitySystem::general(2, 2, MatroidOracle::uniform(4, 1)));
    systems.push_back(
        FeasibilitySystem::general(2, 3, MatroidOracle::partition({0, 1, 2, 0, 1, 2}, {1, 1, 2})));
    SplitMix64 rng(99);
    for (const auto& fs : systems) {
        const int g = fs.ground();
        REQUIRE(g <= 12);
        for (int trial = 0; trial < 200; ++trial) {
            std::vector<Rat> w(g);
            for (auto& x : w) x = Rat(static_cast<long>(rng.below(7)));
            Mask fast = fs.max_weight_feasible(w);
            // Reference: scan all subsets with the same tie rule.
            Mask best = 0;
            Rat bw(0);
            for (Mask s = 0; s < (Mask(1) << g); ++s) {
                if (!fs.is_feasible(s)) continue;
                Rat tw(0);
                for (int e = 0; e < g; ++e)
                    if (s >> e & 1) tw += w[e];
                if (tw > bw || (tw == bw && set_tie_less(s, best))) {
                    bw = tw;
                    best = s;
                }
            }
            CHECK(fast == best);
        }
    }
}

TEST_CASE("rank agrees between matching flow and subset enumeration") {
    auto fs = FeasibilitySystem::matching(3, 3, {1, 2, 1});
    auto gen = FeasibilitySystem::intersection(
        3, 3, MatroidOracle::partition({0, 1, 2, 0, 1, 2, 0, 1, 2}, {1, 2, 1}),
        MatroidOracle::partition({0, 0, 0, 1, 1, 1, 2, 2, 2}, {1, 1, 1}));
    for (Mask s = 0; s < (Mask(1) << 9); s += 11) CHECK(fs.rank(s) == gen.rank(s));
}
