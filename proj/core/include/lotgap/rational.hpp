// Copyright 2026 The lotgap Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <cmath>
#include <cstdint>
#include <sstream>
#include <string>

#include "lotgap/errors.hpp"

namespace lotgap {

/// Exact rational scalar. The default numeric mode everywhere a lemma is checked;
/// `double` is used only for the large-grid paper reproductions.
using Rat = boost::multiprecision::mpq_rational;
using Int = boost::multiprecision::mpz_int;

/// Small trait bundle so distribution/mechanism code can be written once for
/// both numeric modes. Inequality checks in float mode get a 1e-9 slack.
template <typename T>
struct num;

template <>
struct num<Rat> {
    static constexpr bool exact = true;
    static Rat zero() { return Rat(0); }
    static Rat one() { return Rat(1); }
    static Rat from_int(long v) { return Rat(v); }
    static Rat ratio(long n, long d) { return Rat(n, d); }
    static double to_double(const Rat& a) { return a.template convert_to<double>(); }
    // tolerance-aware comparisons (exact here)
    static bool le(const Rat& a, const Rat& b) { return a <= b; }
    static bool ge(const Rat& a, const Rat& b) { return a >= b; }
    static bool eq(const Rat& a, const Rat& b) { return a == b; }
};

template <>
struct num<double> {
    static constexpr bool exact = false;
    static constexpr double tol = 1e-9;
    static double zero() { return 0.0; }
    static double one() { return 1.0; }
    static double from_int(long v) { return static_cast<double>(v); }
    static double ratio(long n, long d) { return static_cast<double>(n) / static_cast<double>(d); }
    static double to_double(double a) { return a; }
    static bool le(double a, double b) { return a <= b + tol; }
    static bool ge(double a, double b) { return a + tol >= b; }
    static bool eq(double a, double b) { return std::abs(a - b) <= tol; }
};

inline std::string rat_str(const Rat& r) {
    std::ostringstream os;
    os << r;
    return os.str();
}

/// Parses "p/q", plain integers, and decimal literals ("5.25") exactly.
inline Rat parse_rat(const std::string& s) {
    if (s.empty()) throw validation_error("empty rational literal");
    auto slash = s.find('/');
    if (slash != std::string::npos) {
        Int p(s.substr(0, slash)), q(s.substr(slash + 1));
        if (q == 0) throw validation_error("zero denominator in '" + s + "'");
        return Rat(p, q);
    }
    auto dot = s.find('.');
    if (dot == std::string::npos) return Rat(Int(s));
    std::string digits = s.substr(0, dot) + s.substr(dot + 1);
    bool neg = false;
    if (!digits.empty() && (digits[0] == '-' || digits[0] == '+')) {
        neg = digits[0] == '-';
        digits = digits.substr(1);
    }
    if (digits.empty()) throw validation_error("bad rational literal '" + s + "'");
    Int p(digits), q(1);
    for (size_t i = dot + 1; i < s.size(); ++i) q *= 10;
    Rat r(p, q);
    return neg ? -r : r;
}

/// Nearest rational to `x` with denominator at most `max_den` (continued fractions).
/// Used to snap geometric grid points onto exact values in rational mode.
inline Rat rat_from_double(double x, std::int64_t max_den = 1'000'000) {
    if (!std::isfinite(x)) throw validation_error("non-finite value cannot become a rational");
    bool neg = x < 0;
    if (neg) x = -x;
    std::int64_t p0 = 0, q0 = 1, p1 = 1, q1 = 0;
    double r = x;
    for (int it = 0; it < 64; ++it) {
        double fl = std::floor(r);
        if (fl > 9e17) break;
        auto a = static_cast<std::int64_t>(fl);
        std::int64_t p2 = a * p1 + p0, q2 = a * q1 + q0;
        if (q2 > max_den) break;
        p0 = p1;
        q0 = q1;
        p1 = p2;
        q1 = q2;
        double frac = r - fl;
        if (frac < 1e-15) break;
        r = 1.0 / frac;
    }
    Rat out(p1, q1 == 0 ? 1 : q1);
    return neg ? -out : out;
}

}  // namespace lotgap
