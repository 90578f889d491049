// Copyright 2026 The lotgap Authors
// SPDX-License-Identifier: Apache-2.0
//
// Exact linear programming for the revenue LPs: maximize c.x subject to
// A.x <= b, x >= 0, with b >= 0 so the slack basis is feasible. The solver
// runs floating-point simplex to find an optimal basis, reconstructs the
// vertex in exact rationals, and certifies optimality with an exact dual.
// If certification fails it falls back to an all-rational simplex.

#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "lotgap/errors.hpp"
#include "lotgap/rational.hpp"

namespace lotgap::lp {

struct Problem {
    std::size_t num_vars = 0;
    std::vector<Rat> objective;              // maximize objective . x
    std::vector<std::vector<Rat>> rows;      // dense constraint matrix
    std::vector<Rat> rhs;                    // all entries must be >= 0

    std::size_t num_rows() const { return rows.size(); }
    void add_row(std::vector<Rat> coeffs, Rat b);
    void validate() const;
};

enum class Status { optimal, unbounded, iteration_limit };

struct Solution {
    Status status = Status::optimal;
    Rat objective;
    std::vector<Rat> x;
    bool certified = false;       // exact primal+dual certificate verified
    bool used_fallback = false;   // rational simplex ran from scratch
    long float_pivots = 0;
    long exact_pivots = 0;
};

/// Size cap (rows * columns of the working tableau) before refusing to solve.
inline constexpr std::size_t kDefaultCellCap = 40'000'000;

Solution solve(const Problem& p, std::size_t cell_cap = kDefaultCellCap);

/// Serializes the problem in CPLEX LP text format (for external inspection).
std::string write_lp_format(const Problem& p);

}  // namespace lotgap::lp
