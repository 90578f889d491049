// Copyright 2026 The lotgap Authors
// SPDX-License-Identifier: Apache-2.0
//
// Feasibility set systems: matroids, their intersection, matchings, and the
// exchange machinery (basis-exchange bijection and the partial exchange maps).

#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lotgap/errors.hpp"
#include "lotgap/rational.hpp"

namespace lotgap {

using Mask = std::uint32_t;

inline int popcount(Mask m) { return __builtin_popcount(m); }

/// A pair (agent, item) of the ground set I x J.
struct GroundElement {
    int agent = 0;
    int item = 0;
    friend bool operator==(const GroundElement&, const GroundElement&) = default;
    friend auto operator<=>(const GroundElement&, const GroundElement&) = default;
};

/// Ordering used by every deterministic tie-break over element sets:
/// smaller cardinality first, then lexicographically smaller sorted element list.
inline bool set_tie_less(Mask a, Mask b) {
    if (a == b) return false;
    int ca = popcount(a), cb = popcount(b);
    if (ca != cb) return ca < cb;
    while (a || b) {
        int ea = a ? __builtin_ctz(a) : 32;
        int eb = b ? __builtin_ctz(b) : 32;
        if (ea != eb) return ea < eb;
        a &= a - 1;
        b &= b - 1;
    }
    return false;
}

class MatroidOracle {
  public:
    enum class Kind { uniform, partition, explicit_sets };

    static MatroidOracle uniform(int ground, int rank);
    /// block_of[e] names the partition block of element e; caps are per block.
    static MatroidOracle partition(std::vector<int> block_of, std::vector<int> caps);
    /// Explicit list of independent sets; validated against both matroid axioms.
    static MatroidOracle explicit_sets(int ground, std::vector<Mask> independent);

    Kind kind() const { return kind_; }
    int ground() const { return ground_; }
    int rank_bound() const;

    bool independent(Mask s) const;

  private:
    Kind kind_ = Kind::uniform;
    int ground_ = 0;
    int uniform_rank_ = 0;
    std::vector<int> block_of_;
    std::vector<int> caps_;
    std::vector<Mask> indep_;  // sorted
};

inline MatroidOracle MatroidOracle::uniform(int ground, int rank) {
    if (ground < 0 || ground > 20) throw validation_error("matroid ground size out of range");
    if (rank < 0) throw validation_error("uniform matroid rank must be >= 0");
    MatroidOracle m;
    m.kind_ = Kind::uniform;
    m.ground_ = ground;
    m.uniform_rank_ = rank;
    return m;
}

inline MatroidOracle MatroidOracle::partition(std::vector<int> block_of, std::vector<int> caps) {
    MatroidOracle m;
    m.kind_ = Kind::partition;
    m.ground_ = static_cast<int>(block_of.size());
    if (m.ground_ > 20) throw validation_error("matroid ground size out of range");
    for (int b : block_of)
        if (b < 0 || b >= static_cast<int>(caps.size()))
            throw validation_error("partition matroid: block id out of range");
    for (int c : caps)
        if (c < 0) throw validation_error("partition matroid: negative capacity");
    m.block_of_ = std::move(block_of);
    m.caps_ = std::move(caps);
    return m;
}

inline MatroidOracle MatroidOracle::explicit_sets(int ground, std::vector<Mask> independent) {
    if (ground < 0 || ground > 16)
        throw validation_error("explicit matroid limited to ground size 16");
    std::sort(independent.begin(), independent.end());
    independent.erase(std::unique(independent.begin(), independent.end()), independent.end());
    MatroidOracle m;
    m.kind_ = Kind::explicit_sets;
    m.ground_ = ground;
    m.indep_ = std::move(independent);
    auto indep = [&](Mask s) {
        return std::binary_search(m.indep_.begin(), m.indep_.end(), s);
    };
    if (!indep(0)) throw validation_error("explicit matroid: empty set must be independent");
    for (Mask a : m.indep_) {
        if (a >> ground) throw validation_error("explicit matroid: element out of range");
        for (int e = 0; e < ground; ++e)
            if ((a >> e) & 1u)
                if (!indep(a & ~(Mask(1) << e)))
                    throw validation_error("explicit matroid: heredity violated");
    }
    for (Mask a : m.indep_)
        for (Mask b : m.indep_) {
            if (popcount(a) <= popcount(b)) continue;
            bool ok = false;
            for (int e = 0; e < ground && !ok; ++e)
                if (((a >> e) & 1u) && !((b >> e) & 1u)) ok = indep(b | (Mask(1) << e));
            if (!ok) throw validation_error("explicit matroid: augmentation violated");
        }
    return m;
}

inline bool MatroidOracle::independent(Mask s) const {
    if (s >> ground_) throw validation_error("matroid query: element out of range");
    switch (kind_) {
        case Kind::uniform:
            return popcount(s) <= uniform_rank_;
        case Kind::partition: {
            std::vector<int> used(caps_.size(), 0);
            for (Mask t = s; t; t &= t - 1)
                if (++used[block_of_[__builtin_ctz(t)]] > caps_[block_of_[__builtin_ctz(t)]])
                    return false;
            return true;
        }
        case Kind::explicit_sets:
            return std::binary_search(indep_.begin(), indep_.end(), s);
    }
    return false;
}

inline int MatroidOracle::rank_bound() const {
    switch (kind_) {
        case Kind::uniform:
            return uniform_rank_;
        case Kind::partition: {
            int r = 0;
            for (int c : caps_) r += c;
            return std::min(r, ground_);
        }
        case Kind::explicit_sets: {
            int r = 0;
            for (Mask s : indep_) r = std::max(r, popcount(s));
            return r;
        }
    }
    return 0;
}

/// Basis-exchange bijection: for equal-size independent B1, B2, a bijection
/// g : B1\B2 -> B2\B1 with B1 \ {e} + {g(e)} independent for every e.
/// Deterministic: lexicographically smallest assignment over ascending e.
std::map<int, int> exchange_bijection(const MatroidOracle& m, Mask b1, Mask b2);

/// The augment-then-restrict construction: returns (B2', g) with
///   e in B2'          : A1 \ {g(e)} + {e} independent,
///   e in A2 \ B2'     : A1 + {e} independent.
struct PartialExchange {
    Mask domain = 0;            // B2'
    std::map<int, int> map;     // e in B2' -> g(e) in A1
};
PartialExchange partial_exchange_maps(const MatroidOracle& m, Mask a1, Mask a2);

/// Intersection of two matroids over I x J. J2 is always the per-agent
/// unit-demand partition matroid; J1 carries item capacities (matching tag)
/// or an arbitrary built-in matroid (general tag).
class FeasibilitySystem {
  public:
    enum class Tag { matching, general };

    static FeasibilitySystem matching(int agents, int items, std::vector<int> item_caps);
    static FeasibilitySystem general(int agents, int items, MatroidOracle j1);
    /// Explicit intersection of two matroids; bypasses the per-agent default J2.
    static FeasibilitySystem intersection(int agents, int items, MatroidOracle j1,
                                          MatroidOracle j2);

    int agents() const { return agents_; }
    int items() const { return items_; }
    int ground() const { return agents_ * items_; }
    Tag tag() const { return tag_; }
    const MatroidOracle& j1() const { return j1_; }
    const MatroidOracle& j2() const { return j2_; }
    const std::vector<int>& item_caps() const { return item_caps_; }

    int element(int agent, int item) const { return agent * items_ + item; }
    GroundElement decode(int e) const { return {e / items_, e % items_}; }

    bool is_feasible(Mask s) const { return j1_.independent(s) && j2_.independent(s); }

    /// Size of a maximum feasible subset of S. Matching tag uses augmenting
    /// paths; the general tag brute-forces subsets (capped).
    int rank(Mask s) const;

    /// Maximum-weight feasible set; ties broken by set_tie_less. Matching tag
    /// runs weighted augmenting paths on an exact composite weight; general
    /// tag enumerates (capped at 16 ground elements).
    template <typename T>
    Mask max_weight_feasible(const std::vector<T>& weights) const;

  private:
    Mask brute_force_max_weight(const std::vector<Rat>& weights) const;
    Mask matching_max_weight(const std::vector<Rat>& weights) const;

    Tag tag_ = Tag::general;
    int agents_ = 0, items_ = 0;
    MatroidOracle j1_ = MatroidOracle::uniform(0, 0);
    MatroidOracle j2_ = MatroidOracle::uniform(0, 0);
    std::vector<int> item_caps_;
};

inline FeasibilitySystem FeasibilitySystem::matching(int agents, int items,
                                                     std::vector<int> item_caps) {
    if (static_cast<int>(item_caps.size()) != items)
        throw validation_error("matching system: one capacity per item required");
    FeasibilitySystem fs;
    fs.tag_ = Tag::matching;
    fs.agents_ = agents;
    fs.items_ = items;
    fs.item_caps_ = item_caps;
    std::vector<int> by_item(agents * items), by_agent(agents * items);
    for (int i = 0; i < agents; ++i)
        for (int j = 0; j < items; ++j) {
            by_item[i * items + j] = j;
            by_agent[i * items + j] = i;
        }
    fs.j1_ = MatroidOracle::partition(by_item, std::move(item_caps));
    fs.j2_ = MatroidOracle::partition(by_agent, std::vector<int>(agents, 1));
    return fs;
}

inline FeasibilitySystem FeasibilitySystem::general(int agents, int items, MatroidOracle j1) {
    if (j1.ground() != agents * items)
        throw validation_error("general system: J1 ground size must be agents*items");
    FeasibilitySystem fs;
    fs.tag_ = Tag::general;
    fs.agents_ = agents;
    fs.items_ = items;
    fs.j1_ = std::move(j1);
    std::vector<int> by_agent(agents * items);
    for (int i = 0; i < agents; ++i)
        for (int j = 0; j < items; ++j) by_agent[i * items + j] = i;
    fs.j2_ = MatroidOracle::partition(by_agent, std::vector<int>(agents, 1));
    return fs;
}

inline FeasibilitySystem FeasibilitySystem::intersection(int agents, int items, MatroidOracle j1,
                                                         MatroidOracle j2) {
    if (j1.ground() != agents * items || j2.ground() != agents * items)
        throw validation_error("intersection system: matroid ground size must be agents*items");
    FeasibilitySystem fs;
    fs.tag_ = Tag::general;
    fs.agents_ = agents;
    fs.items_ = items;
    fs.j1_ = std::move(j1);
    fs.j2_ = std::move(j2);
    return fs;
}

template <typename T>
Mask FeasibilitySystem::max_weight_feasible(const std::vector<T>& weights) const {
    if (static_cast<int>(weights.size()) != ground())
        throw validation_error("max_weight_feasible: one weight per ground element");
    std::vector<Rat> w;
    w.reserve(weights.size());
    for (const auto& x : weights) {
        if (x < num<T>::zero()) throw validation_error("max_weight_feasible: negative weight");
        if constexpr (num<T>::exact)
            w.push_back(x);
        else
            w.push_back(rat_from_double(num<T>::to_double(x), 1'000'000'000));
    }
    if (tag_ == Tag::matching && ground() > 16) return matching_max_weight(w);
    if (ground() > 16)
        throw capacity_error("max_weight_feasible: general systems capped at 16 elements, got " +
                             std::to_string(ground()));
    return brute_force_max_weight(w);
}

}  // namespace lotgap
