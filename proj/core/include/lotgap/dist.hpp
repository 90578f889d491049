// Copyright 2026 The lotgap Authors
// SPDX-License-Identifier: Apache-2.0
//
// Discrete value distributions and enumerable joint type spaces.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "lotgap/errors.hpp"
#include "lotgap/rational.hpp"

namespace lotgap {

inline constexpr std::size_t kDefaultProfileCap = 200'000;

/// Finite support of nonnegative values with aligned probabilities.
/// Support is strictly ascending; probabilities are positive and sum to one
/// (exactly in rational mode, within 1e-12 in float mode).
template <typename T>
struct DiscreteDist {
    std::vector<T> support;
    std::vector<T> probs;

    std::size_t size() const { return support.size(); }

    /// Pr[v >= support[k]]
    T tail(std::size_t k) const {
        T s = num<T>::zero();
        for (std::size_t i = k; i < probs.size(); ++i) s += probs[i];
        return s;
    }

    /// Pr[v >= x] for arbitrary x.
    T prob_geq(const T& x) const {
        T s = num<T>::zero();
        for (std::size_t i = 0; i < support.size(); ++i)
            if (support[i] >= x) s += probs[i];
        return s;
    }

    T mean() const {
        T s = num<T>::zero();
        for (std::size_t i = 0; i < support.size(); ++i) s += support[i] * probs[i];
        return s;
    }
};

template <typename T>
DiscreteDist<T> make_discrete(std::vector<T> support, std::vector<T> probs) {
    if (support.empty() || support.size() != probs.size())
        throw validation_error("make_discrete: support/probs must be nonempty and aligned");
    std::vector<std::size_t> idx(support.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(),
              [&](std::size_t a, std::size_t b) { return support[a] < support[b]; });

    DiscreteDist<T> d;
    T total = num<T>::zero();
    for (std::size_t i : idx) {
        if (support[i] < num<T>::zero()) throw validation_error("make_discrete: negative value");
        if (probs[i] < num<T>::zero()) throw validation_error("make_discrete: negative probability");
        if (probs[i] == num<T>::zero()) continue;
        total += probs[i];
        if (!d.support.empty() && num<T>::eq(d.support.back(), support[i]))
            d.probs.back() += probs[i];  // merge duplicate support points
        else {
            d.support.push_back(support[i]);
            d.probs.push_back(probs[i]);
        }
    }
    if (total == num<T>::zero()) throw validation_error("make_discrete: zero total mass");
    for (auto& p : d.probs) p /= total;
    return d;
}

template <typename T>
DiscreteDist<T> point_mass(const T& v) {
    return make_discrete<T>({v}, {num<T>::one()});
}

enum class Structure { product, additive, explicit_ };

/// One valuation profile: v[i*items + j] is agent i's value for item j.
/// Additive type spaces additionally keep the base components (t_0,...,t_m).
template <typename T>
struct Profile {
    std::vector<T> values;
    T prob;
    std::vector<T> base;
};

template <typename T>
struct TypeSpace {
    int agents = 1;
    int items = 1;
    Structure structure = Structure::explicit_;
    std::vector<Profile<T>> profiles;

    const T& value(std::size_t p, int agent, int item) const {
        return profiles[p].values[static_cast<std::size_t>(agent) * items + item];
    }

    T total_mass() const {
        T s = num<T>::zero();
        for (const auto& p : profiles) s += p.prob;
        return s;
    }
};

namespace detail {
template <typename T>
void enumerate_product(const std::vector<const DiscreteDist<T>*>& dists, std::size_t cap,
                       TypeSpace<T>& out) {
    std::size_t count = 1;
    for (const auto* d : dists) {
        count *= d->size();
        if (count > cap)
            throw capacity_error("profile enumeration exceeds cap of " + std::to_string(cap) +
                                 " (at least " + std::to_string(count) + " profiles)");
    }
    std::vector<std::size_t> k(dists.size(), 0);
    for (std::size_t n = 0; n < count; ++n) {
        Profile<T> p;
        p.prob = num<T>::one();
        p.values.reserve(dists.size());
        for (std::size_t i = 0; i < dists.size(); ++i) {
            p.values.push_back(dists[i]->support[k[i]]);
            p.prob *= dists[i]->probs[k[i]];
        }
        out.profiles.push_back(std::move(p));
        for (std::size_t i = dists.size(); i-- > 0;) {
            if (++k[i] < dists[i]->size()) break;
            k[i] = 0;
        }
    }
}
}  // namespace detail

/// Joint type space of n x m independent per-(agent,item) value distributions.
template <typename T>
TypeSpace<T> product_type_space(const std::vector<std::vector<DiscreteDist<T>>>& dists,
                                std::size_t cap = kDefaultProfileCap) {
    if (dists.empty() || dists[0].empty()) throw validation_error("product_type_space: n,m >= 1");
    TypeSpace<T> ts;
    ts.agents = static_cast<int>(dists.size());
    ts.items = static_cast<int>(dists[0].size());
    ts.structure = Structure::product;
    std::vector<const DiscreteDist<T>*> flat;
    for (const auto& row : dists) {
        if (static_cast<int>(row.size()) != ts.items)
            throw validation_error("product_type_space: ragged distribution matrix");
        for (const auto& d : row) flat.push_back(&d);
    }
    detail::enumerate_product(flat, cap, ts);
    return ts;
}

/// Single agent, m items, v_j = t_0 + t_j with independent base components.
/// `t_dists` holds the m+1 component distributions (t_0 first).
template <typename T>
TypeSpace<T> additive_type_space(const std::vector<DiscreteDist<T>>& t_dists,
                                 std::size_t cap = kDefaultProfileCap) {
    if (t_dists.size() < 2) throw validation_error("additive_type_space: need t_0 and >=1 item");
    TypeSpace<T> ts;
    ts.agents = 1;
    ts.items = static_cast<int>(t_dists.size()) - 1;
    ts.structure = Structure::additive;
    TypeSpace<T> base;
    base.agents = 1;
    base.items = static_cast<int>(t_dists.size());
    std::vector<const DiscreteDist<T>*> flat;
    for (const auto& d : t_dists) flat.push_back(&d);
    detail::enumerate_product(flat, cap, base);
    for (auto& bp : base.profiles) {
        Profile<T> p;
        p.prob = bp.prob;
        p.base = bp.values;
        for (int j = 1; j <= ts.items; ++j) p.values.push_back(bp.values[0] + bp.values[j]);
        ts.profiles.push_back(std::move(p));
    }
    return ts;
}

/// Discretization of the equal-revenue cdf F(x) = 1 - 1/x on [1, n) plus an
/// atom 1/n at n. The grid is geometric in x; each cell's mass sits on its
/// LEFT endpoint, so computed lottery revenue understates the continuum value.
template <typename T>
DiscreteDist<T> equal_revenue_discrete(long n, int grid) {
    if (n <= 1) throw validation_error("equal_revenue_discrete: n > 1 required");
    if (grid < 1) throw validation_error("equal_revenue_discrete: grid size >= 1 required");
    std::vector<T> xs;
    xs.reserve(grid + 1);
    for (int k = 0; k <= grid; ++k) {
        double g = std::pow(static_cast<double>(n), static_cast<double>(k) / grid);
        if constexpr (num<T>::exact) {
            double r = std::round(g);
            if (std::abs(g - r) < 1e-9 * g)
                xs.push_back(T(static_cast<long>(r)));
            else
                xs.push_back(rat_from_double(g));
        } else {
            xs.push_back(g);
        }
    }
    xs.front() = num<T>::one();
    xs.back() = num<T>::from_int(n);
    std::vector<T> support, probs;
    for (int k = 0; k < grid; ++k) {
        if (!(xs[k] < xs[k + 1]))
            throw validation_error("equal_revenue_discrete: grid too fine for exact snapping");
        support.push_back(xs[k]);
        probs.push_back(num<T>::one() / xs[k] - num<T>::one() / xs[k + 1]);
    }
    support.push_back(xs[grid]);
    probs.push_back(num<T>::one() / xs[grid]);
    return make_discrete(std::move(support), std::move(probs));
}

/// Equally weighted atoms at cell midpoints of [lo, hi] with the given step.
template <typename T>
DiscreteDist<T> uniform_grid(const T& lo, const T& hi, const T& step) {
    if (!(lo < hi)) throw validation_error("uniform_grid: lo < hi required");
    if (!(step > num<T>::zero())) throw validation_error("uniform_grid: positive step required");
    T cells_t = (hi - lo) / step;
    double cd = num<T>::to_double(cells_t);
    long cells = std::lround(cd);
    bool divides;
    if constexpr (num<T>::exact)
        divides = cells_t == T(cells);
    else
        divides = std::abs(cd - static_cast<double>(cells)) < 1e-9;
    if (cells < 1 || !divides) throw validation_error("uniform_grid: step must divide hi-lo");
    std::vector<T> support, probs;
    T half = step / num<T>::from_int(2);
    for (long i = 0; i < cells; ++i) {
        support.push_back(lo + step * num<T>::from_int(i) + half);
        probs.push_back(num<T>::one() / num<T>::from_int(cells));
    }
    return make_discrete(std::move(support), std::move(probs));
}

/// Marginal distribution of agent i's value for item j under the joint space.
template <typename T>
DiscreteDist<T> marginal(const TypeSpace<T>& ts, int agent, int item) {
    std::vector<T> vals, ps;
    for (std::size_t p = 0; p < ts.profiles.size(); ++p) {
        vals.push_back(ts.value(p, agent, item));
        ps.push_back(ts.profiles[p].prob);
    }
    return make_discrete(std::move(vals), std::move(ps));
}

}  // namespace lotgap
