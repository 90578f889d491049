// Copyright 2026 The lotgap Authors
// SPDX-License-Identifier: Apache-2.0
//
// Two self-contained reproduction studies with pass/fail checks:
//  - repro_appendix: a bounded equal-revenue instance on two iid items where
//    a three-lottery menu beats every item pricing by a constant factor.
//  - repro_uniform56: two iid uniform-[5,6] items, where the best symmetric
//    item price is improved strictly by adding a cheaper half-half lottery.

#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace lotgap {

struct ReproCheck {
    std::string name;
    double value = 0.0;  // measured quantity
    double lo = 0.0;     // inclusive bounds; pass iff lo <= value <= hi
    double hi = 0.0;
    bool pass = false;
};

struct ReproResult {
    std::string name;
    std::vector<ReproCheck> checks;
    double elapsed_seconds = 0.0;

    bool all_pass() const {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return true;
    }
};

/// Equal-revenue distribution bounded at n, discretized on a geometric grid
/// with `grid` cells per item. Evaluates the menu
/// {null, (1/2,1/2,5/2), (1,0,2+3n/8), (0,1,2+3n/8)} over the product grid
/// and the single-item optimum over two copies via ironed virtual values.
ReproResult repro_appendix(long n = 10000, int grid = 2000);

/// Uniform [5,6] on both items at the given discretization step. Sweeps the
/// symmetric item price, then checks that adding a (1/2,1/2) lottery priced
/// at 5.057 strictly increases revenue, and cross-checks menu-vs-pricing on
/// a coarse exact-rational grid.
ReproResult repro_uniform56(double step = 0.001);

nlohmann::json repro_to_json(const ReproResult& r);

}  // namespace lotgap
