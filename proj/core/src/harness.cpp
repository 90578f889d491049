// Copyright 2026 The lotgap Authors
// SPDX-License-Identifier: Apache-2.0

#include "lotgap/harness.hpp"

#include <atomic>
#include <sstream>
#include <thread>

namespace lotgap {

DiscreteDist<Rat> random_dist(SplitMix64& rng, int support) {
    if (support < 1 || support > 11)
        throw validation_error("random_dist: support size must be in 1..11");
    std::vector<int> values;
    while (static_cast<int>(values.size()) < support) {
        int v = static_cast<int>(rng.below(11));
        if (std::find(values.begin(), values.end(), v) == values.end()) values.push_back(v);
    }
    std::vector<Rat> sup, probs;
    for (int v : values) {
        sup.push_back(Rat(v));
        probs.push_back(Rat(1 + static_cast<int>(rng.below(9))));
    }
    return make_discrete(std::move(sup), std::move(probs));
}

SuiteInstance generate_instance(const GenConfig& cfg, int index) {
    if (cfg.setting < 1 || cfg.setting > 4)
        throw validation_error("generate_instance: setting must be 1..4");
    const int n = (cfg.setting <= 2) ? 1 : cfg.agents;
    const int m = cfg.items;
    if (n < 1 || m < 1) throw validation_error("generate_instance: sizes must be positive");

    SplitMix64 rng(cfg.seed ^ (0xA076'1D64'78BD'642FULL * (index + 1)));
    SuiteInstance inst;
    inst.setting = cfg.setting;
    std::ostringstream id;
    id << "s" << cfg.setting << "-seed" << cfg.seed << "-" << index;
    inst.id = id.str();

    if (cfg.setting == 2) {
        for (int j = 0; j <= m; ++j) inst.components.push_back(random_dist(rng, cfg.support));
        inst.ts = additive_type_space(inst.components);
        inst.fs = FeasibilitySystem::matching(1, m, std::vector<int>(m, 1));
        return inst;
    }

    inst.dists.resize(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < m; ++j) inst.dists[i].push_back(random_dist(rng, cfg.support));
    inst.ts = product_type_space(inst.dists);

    if (cfg.setting == 1) {
        inst.fs = FeasibilitySystem::matching(1, m, std::vector<int>(m, 1));
    } else if (cfg.setting == 3) {
        std::vector<int> caps(m);
        for (int j = 0; j < m; ++j) caps[j] = 1 + static_cast<int>(rng.below(2));
        inst.fs = FeasibilitySystem::matching(n, m, caps);
    } else {
        // Setting 4: random J1 oracle, either a uniform matroid over the
        // whole ground set or a per-item partition matroid.
        const int g = n * m;
        if (rng.below(2) == 0) {
            int rank = 1 + static_cast<int>(rng.below(g));
            inst.fs = FeasibilitySystem::general(n, m, MatroidOracle::uniform(g, rank));
        } else {
            std::vector<int> by_item(g);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < m; ++j) by_item[i * m + j] = j;
            std::vector<int> caps(m);
            for (int j = 0; j < m; ++j) caps[j] = 1 + static_cast<int>(rng.below(2));
            inst.fs = FeasibilitySystem::general(n, m, MatroidOracle::partition(by_item, caps));
        }
    }
    return inst;
}

GapReport check_instance(const SuiteInstance& inst) {
    switch (inst.setting) {
        case 1:
            return check_setting1(inst.id, inst.ts, inst.fs);
        case 2:
            return check_setting2(inst.id, inst.ts);
        default:
            return check_setting34(inst.id, inst.ts, inst.fs);
    }
}

std::vector<GapReport> run_suite(const GenConfig& cfg, int count, int workers) {
    if (count < 1) throw validation_error("run_suite: count must be positive");
    if (workers < 1) workers = 1;
    std::vector<SuiteInstance> instances;
    instances.reserve(count);
    for (int i = 0; i < count; ++i) instances.push_back(generate_instance(cfg, i));

    std::vector<GapReport> reports(count);
    std::vector<std::string> errors(count);
    std::atomic<int> cursor{0};
    auto work = [&] {
        for (int i = cursor.fetch_add(1); i < count; i = cursor.fetch_add(1)) {
            try {
                reports[i] = check_instance(instances[i]);
            } catch (const std::exception& e) {
                errors[i] = e.what();
            }
        }
    };
    if (workers == 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w) pool.emplace_back(work);
        for (auto& t : pool) t.join();
    }
    for (int i = 0; i < count; ++i)
        if (!errors[i].empty())
            throw invariant_error("instance " + instances[i].id + ": " + errors[i]);
    return reports;
}

}  // namespace lotgap
