// Copyright 2026 The lotgap Authors
// SPDX-License-Identifier: Apache-2.0
//
// Seeded instance generation and the multi-instance verification driver.
// Same configuration always produces byte-identical instances and reports,
// regardless of the worker count.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lotgap/bounds.hpp"
#include "lotgap/dist.hpp"
#include "lotgap/feas.hpp"

namespace lotgap {

/// splitmix64: tiny, seedable, portable. The standard distributions are
/// implementation-defined across libraries, so draws go through this only.
class SplitMix64 {
  public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// Uniform-ish draw in [0, n); modulo bias is irrelevant for tiny n.
    std::uint64_t below(std::uint64_t n) { return next() % n; }

  private:
    std::uint64_t state_;
};

struct GenConfig {
    int setting = 1;       // 1..4
    int agents = 1;        // settings 3/4
    int items = 2;
    int support = 2;       // points per value distribution
    std::uint64_t seed = 1;
};

struct SuiteInstance {
    std::string id;
    int setting = 1;
    TypeSpace<Rat> ts;
    FeasibilitySystem fs;
    // Generating data, kept for serialization.
    std::vector<std::vector<DiscreteDist<Rat>>> dists;   // product settings
    std::vector<DiscreteDist<Rat>> components;           // additive setting
};

/// Deterministic random value distribution: `support` distinct integer values
/// from {0,...,10} with integer probability weights from {1,...,9}.
DiscreteDist<Rat> random_dist(SplitMix64& rng, int support);

SuiteInstance generate_instance(const GenConfig& cfg, int index);

/// Runs the per-setting checker on `count` seeded instances, `workers` at a
/// time, and returns the reports ordered by instance index.
std::vector<GapReport> run_suite(const GenConfig& cfg, int count, int workers);

GapReport check_instance(const SuiteInstance& inst);

}  // namespace lotgap
