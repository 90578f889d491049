// Copyright 2026 The lotgap Authors
// SPDX-License-Identifier: Apache-2.0

#include "lotgap/lp.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdint>
#include <cstdlib>
#include <sstream>

namespace lotgap::lp {

void Problem::add_row(std::vector<Rat> coeffs, Rat b) {
    if (coeffs.size() != num_vars) throw validation_error("lp row arity mismatch");
    rows.push_back(std::move(coeffs));
    rhs.push_back(std::move(b));
}

void Problem::validate() const {
    if (objective.size() != num_vars) throw validation_error("lp objective arity mismatch");
    if (rows.size() != rhs.size()) throw validation_error("lp rhs arity mismatch");
    for (const auto& r : rows)
        if (r.size() != num_vars) throw validation_error("lp row arity mismatch");
    for (const auto& b : rhs)
        if (b < 0) throw validation_error("lp requires nonnegative right-hand sides");
}

namespace {

// Dense tableau simplex over scalar S (double or Rat). Columns 0..n-1 are
// structural, n..n+m-1 slacks; the slack basis is the start point.
template <typename S>
struct Tableau {
    std::size_t n, m, width;
    std::vector<S> a;       // m rows by width columns; last column is rhs
    std::vector<S> obj;     // reduced-cost row, length width (last = -z)
    std::vector<std::size_t> basis;
    S tol;

    S& at(std::size_t i, std::size_t j) { return a[i * width + j]; }

    Tableau(const Problem& p, S tolerance) : n(p.num_vars), m(p.num_rows()), tol(tolerance) {
        width = n + m + 1;
        a.assign(m * width, S(0));
        obj.assign(width, S(0));
        basis.resize(m);
        for (std::size_t i = 0; i < m; ++i) {
            for (std::size_t j = 0; j < n; ++j) at(i, j) = static_cast<S>(p.rows[i][j]);
            at(i, n + i) = S(1);
            at(i, n + m) = static_cast<S>(p.rhs[i]);
            basis[i] = n + i;
        }
        for (std::size_t j = 0; j < n; ++j) obj[j] = static_cast<S>(p.objective[j]);
    }

    void pivot(std::size_t row, std::size_t col) {
        S inv = S(1) / at(row, col);
        for (std::size_t j = 0; j < width; ++j) at(row, j) *= inv;
        at(row, col) = S(1);
        for (std::size_t i = 0; i < m; ++i) {
            if (i == row) continue;
            S f = at(i, col);
            if (f == S(0)) continue;
            for (std::size_t j = 0; j < width; ++j) at(i, j) -= f * at(row, j);
            at(i, col) = S(0);
        }
        S f = obj[col];
        if (f != S(0)) {
            for (std::size_t j = 0; j < width; ++j) obj[j] -= f * at(row, j);
            obj[col] = S(0);
        }
        basis[row] = col;
    }

    // Returns entering column, or npos if optimal. Bland when `bland`.
    std::size_t entering(bool bland) const {
        std::size_t best = std::size_t(-1);
        S best_v = tol;
        for (std::size_t j = 0; j < n + m; ++j) {
            if (obj[j] > tol) {
                if (bland) return j;
                if (obj[j] > best_v) {
                    best_v = obj[j];
                    best = j;
                }
            }
        }
        return best;
    }

    // Ratio test; ties by smallest basis label (lexicographic / Bland-safe).
    std::size_t leaving(std::size_t col) const {
        std::size_t best = std::size_t(-1);
        for (std::size_t i = 0; i < m; ++i) {
            const S& piv = a[i * width + col];
            if (!(piv > tol)) continue;
            if (best == std::size_t(-1)) {
                best = i;
                continue;
            }
            // compare rhs[i]/piv vs rhs[best]/pivBest without dividing
            const S& pb = a[best * width + col];
            S lhs = a[i * width + n + m] * pb;
            S rhs_ = a[best * width + n + m] * piv;
            if (lhs < rhs_ || (lhs == rhs_ && basis[i] < basis[best])) best = i;
        }
        return best;
    }

    Status run(long max_iters, long stall_switch, long* pivots) {
        const bool trace = std::getenv("LOTGAP_LP_TRACE") != nullptr;
        S last_obj = -obj[n + m];
        long stall = 0;
        bool bland = false;
        for (long it = 0; it < max_iters; ++it) {
            if (trace && it % 500 == 0)
                std::fprintf(stderr, "lp it=%ld obj=%.12g bland=%d stall=%ld\n", it,
                             static_cast<double>(-obj[n + m]), int(bland), stall);
            std::size_t col = entering(bland);
            if (col == std::size_t(-1)) {
                *pivots = it;
                return Status::optimal;
            }
            std::size_t row = leaving(col);
            if (row == std::size_t(-1)) {
                *pivots = it;
                return Status::unbounded;
            }
            pivot(row, col);
            S cur = -obj[n + m];
            if (cur > last_obj + tol) {
                // Progress made: drop back to Dantzig pricing; Bland is an
                // anti-cycling device, not a sensible default.
                stall = 0;
                last_obj = cur;
                bland = false;
            } else if (++stall >= stall_switch) {
                bland = true;
                // A long stall under Bland means the vertex is (numerically)
                // optimal and the remaining reduced-cost signals are noise.
                // Hand the basis to the exact certifier instead of cycling.
                if (stall >= 5 * stall_switch && stall_switch > 0) {
                    *pivots = it;
                    return Status::optimal;
                }
            }
        }
        *pivots = max_iters;
        return Status::iteration_limit;
    }
};

// Solves the square rational system M.x = v by Gaussian elimination.
// Returns false if singular.
bool solve_square(std::vector<std::vector<Rat>> M, std::vector<Rat> v, std::vector<Rat>& out) {
    const std::size_t k = M.size();
    std::vector<std::size_t> perm(k);
    for (std::size_t i = 0; i < k; ++i) perm[i] = i;
    for (std::size_t col = 0; col < k; ++col) {
        std::size_t piv = col;
        while (piv < k && M[piv][col] == 0) ++piv;
        if (piv == k) return false;
        std::swap(M[col], M[piv]);
        std::swap(v[col], v[piv]);
        Rat inv = Rat(1) / M[col][col];
        for (std::size_t j = col; j < k; ++j) M[col][j] *= inv;
        v[col] *= inv;
        for (std::size_t i = 0; i < k; ++i) {
            if (i == col || M[i][col] == 0) continue;
            Rat f = M[i][col];
            for (std::size_t j = col; j < k; ++j) M[i][j] -= f * M[col][j];
            v[i] -= f * v[col];
        }
    }
    out = std::move(v);
    return true;
}

// Exact reconstruction + certification from a float-simplex basis.
// basis[i] is the basic column of row i (structural < n, slack >= n).
bool certify(const Problem& p, const std::vector<std::size_t>& basis, Solution& sol) {
    const bool trace = std::getenv("LOTGAP_LP_TRACE") != nullptr;
    auto fail = [&](const char* why) {
        if (trace) std::fprintf(stderr, "certify failed: %s\n", why);
        return false;
    };
    const std::size_t n = p.num_vars, m = p.num_rows();
    std::vector<bool> slack_basic(m, false);
    std::vector<std::size_t> structural;
    for (std::size_t i = 0; i < m; ++i) {
        if (basis[i] >= n)
            slack_basic[basis[i] - n] = true;
        else
            structural.push_back(basis[i]);
    }
    std::sort(structural.begin(), structural.end());
    std::vector<std::size_t> tight;
    for (std::size_t i = 0; i < m; ++i)
        if (!slack_basic[i]) tight.push_back(i);
    if (tight.size() != structural.size()) return fail("basis-count-mismatch");
    const std::size_t k = tight.size();

    // Primal: A[tight, structural] . x_structural = b[tight].
    std::vector<std::vector<Rat>> M(k, std::vector<Rat>(k));
    std::vector<Rat> v(k);
    for (std::size_t r = 0; r < k; ++r) {
        for (std::size_t c = 0; c < k; ++c) M[r][c] = p.rows[tight[r]][structural[c]];
        v[r] = p.rhs[tight[r]];
    }
    std::vector<Rat> xt;
    if (!solve_square(M, v, xt)) return fail("primal-singular");
    std::vector<Rat> x(n, Rat(0));
    for (std::size_t c = 0; c < k; ++c) {
        if (xt[c] < 0) return fail("negative-basic");
        x[structural[c]] = xt[c];
    }
    for (std::size_t i = 0; i < m; ++i) {
        Rat lhs(0);
        for (std::size_t j = 0; j < n; ++j)
            if (x[j] != 0) lhs += p.rows[i][j] * x[j];
        if (lhs > p.rhs[i]) return fail("row-violated");
    }

    // Dual: A[tight, structural]^T . y = c[structural]; zero elsewhere.
    std::vector<std::vector<Rat>> Mt(k, std::vector<Rat>(k));
    std::vector<Rat> cs(k);
    for (std::size_t r = 0; r < k; ++r) {
        for (std::size_t c = 0; c < k; ++c) Mt[r][c] = p.rows[tight[c]][structural[r]];
        cs[r] = p.objective[structural[r]];
    }
    std::vector<Rat> yt;
    if (!solve_square(Mt, cs, yt)) return fail("dual-singular");
    std::vector<Rat> y(m, Rat(0));
    for (std::size_t r = 0; r < k; ++r) {
        if (yt[r] < 0) return fail("negative-dual");
        y[tight[r]] = yt[r];
    }
    for (std::size_t j = 0; j < n; ++j) {
        Rat red = p.objective[j];
        for (std::size_t r = 0; r < k; ++r)
            if (p.rows[tight[r]][j] != 0) red -= y[tight[r]] * p.rows[tight[r]][j];
        if (red > 0) return fail("positive-reduced-cost");
    }

    Rat obj(0);
    for (std::size_t j = 0; j < n; ++j)
        if (x[j] != 0) obj += p.objective[j] * x[j];
    sol.x = std::move(x);
    sol.objective = std::move(obj);
    sol.certified = true;
    sol.status = Status::optimal;
    return true;
}

}  // namespace

Solution solve(const Problem& p, std::size_t cell_cap) {
    p.validate();
    const std::size_t n = p.num_vars, m = p.num_rows();
    std::size_t cells = m * (n + m + 1);
    if (cells > cell_cap)
        throw capacity_error("lp too large: " + std::to_string(m) + " rows x " +
                             std::to_string(n) + " vars");
    Solution sol;
    const long max_iters = 200 + 60L * static_cast<long>(n + m);

    {
        Tableau<double> t(p, 1e-9);
        // Tiny deterministic rhs perturbation: splits degenerate vertices so
        // Dantzig pricing keeps strict progress and ends on a well-defined
        // basis. The basis is then re-checked exactly against the
        // unperturbed data, so the perturbation never leaks into results.
        std::uint64_t s = 0x9e3779b97f4a7c15ull;
        for (std::size_t i = 0; i < m; ++i) {
            s ^= s << 13;
            s ^= s >> 7;
            s ^= s << 17;
            double u = static_cast<double>(s >> 11) * 0x1.0p-53;
            double& b = t.at(i, n + m);
            b += 1e-7 * (1.0 + b) * (0.5 + u);
        }
        Status st = t.run(max_iters, 200, &sol.float_pivots);
        if (st == Status::optimal && certify(p, t.basis, sol)) return sol;
        if (st == Status::unbounded) {
            // Trust but verify: the exact pass below settles it.
        }
    }

    // Fallback: exact rational simplex with Bland's rule from the slack basis.
    sol.used_fallback = true;
    Tableau<Rat> t(p, Rat(0));
    Status st = t.run(20 * max_iters, 0, &sol.exact_pivots);
    if (st == Status::iteration_limit)
        throw invariant_error("lp: exact simplex exceeded iteration limit");
    sol.status = st;
    if (st == Status::unbounded) return sol;
    sol.x.assign(n, Rat(0));
    for (std::size_t i = 0; i < m; ++i)
        if (t.basis[i] < n) sol.x[t.basis[i]] = t.at(i, n + m);
    sol.objective = Rat(0);
    for (std::size_t j = 0; j < n; ++j)
        if (sol.x[j] != 0) sol.objective += p.objective[j] * sol.x[j];
    sol.certified = true;  // exact arithmetic throughout
    return sol;
}

std::string write_lp_format(const Problem& p) {
    std::ostringstream os;
    os << "Maximize\n obj:";
    for (std::size_t j = 0; j < p.num_vars; ++j)
        if (p.objective[j] != 0)
            os << " + " << rat_str(p.objective[j]) << " x" << j;
    os << "\nSubject To\n";
    for (std::size_t i = 0; i < p.num_rows(); ++i) {
        os << " c" << i << ":";
        for (std::size_t j = 0; j < p.num_vars; ++j)
            if (p.rows[i][j] != 0) os << " + " << rat_str(p.rows[i][j]) << " x" << j;
        os << " <= " << rat_str(p.rhs[i]) << "\n";
    }
    os << "Bounds\n";
    for (std::size_t j = 0; j < p.num_vars; ++j) os << " x" << j << " >= 0\n";
    os << "End\n";
    return os.str();
}

}  // namespace lotgap::lp
