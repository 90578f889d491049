// Copyright 2026 The lotgap Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include "lotgap/harness.hpp"
#include "lotgap/json_io.hpp"

using namespace lotgap;

TEST_CASE("rational atoms serialize exactly and round-trip") {
    auto d = make_discrete<Rat>({Rat(1, 3), Rat(7, 2)}, {Rat(1, 4), Rat(3, 4)});
    auto j = dist_to_json(d, NumericMode::rational);
    CHECK(j["support"][0] == "1/3");
    auto back = dist_from_json(j);
    CHECK(back.support == d.support);
    CHECK(back.probs == d.probs);
}

TEST_CASE("float mode renders plain doubles") {
    auto d = make_discrete<Rat>({Rat(1, 2)}, {Rat(1)});
    auto j = dist_to_json(d, NumericMode::floating);
    CHECK(j["support"][0].get<double>() == doctest::Approx(0.5));
}

TEST_CASE("instances of every setting round-trip through JSON") {
    for (int setting : {1, 2, 3, 4}) {
        GenConfig cfg;
        cfg.setting = setting;
        cfg.seed = 17;
        for (int i = 0; i < 4; ++i) {
            auto inst = generate_instance(cfg, i);
            auto j = instance_to_json(inst, NumericMode::rational);
            auto back = instance_from_json(j);
            CHECK(instance_to_json(back, NumericMode::rational) == j);
            // The round-tripped instance verifies identically.
            auto r1 = check_instance(inst);
            auto r2 = check_instance(back);
            REQUIRE(r1.rows.size() == r2.rows.size());
            for (std::size_t k = 0; k < r1.rows.size(); ++k)
                CHECK(r1.rows[k].lhs == r2.rows[k].lhs);
        }
    }
}

TEST_CASE("CSV report has the documented header and one line per row") {
    GenConfig cfg;
    cfg.setting = 1;
    cfg.seed = 2;
    auto reps = run_suite(cfg, 2, 1);
    auto csv = reports_to_csv(reps, NumericMode::rational);
    CHECK(csv.rfind("instance_id,inequality_id,lhs,rhs,slack,ratio\n", 0) == 0);
    std::size_t lines = 0, rows = 0;
    for (char c : csv)
        if (c == '\n') ++lines;
    for (const auto& r : reps) rows += r.rows.size();
    CHECK(lines == rows + 1);
}

TEST_CASE("report JSON carries inequality, lhs, rhs, slack and witness keys") {
    GenConfig cfg;
    cfg.setting = 1;
    cfg.seed = 2;
    auto reps = run_suite(cfg, 1, 1);
    auto j = reports_to_json(reps, NumericMode::rational);
    CHECK(j["all_pass"].get<bool>());
    const auto& row = j["reports"][0]["rows"][0];
    for (const char* key : {"inequality", "lhs", "rhs", "slack", "ratio", "pass", "witness"})
        CHECK(row.contains(key));
}
