// Copyright 2026 The lotgap Authors
// SPDX-License-Identifier: Apache-2.0
//
// lotgap command-line harness. Exit codes: 0 all checks pass, 1 at least one
// verified inequality failed, 2 configuration or capacity error.

#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "lotgap/harness.hpp"
#include "lotgap/json_io.hpp"
#include "lotgap/lp.hpp"
#include "lotgap/opt.hpp"
#include "lotgap/repro.hpp"

namespace {

using namespace lotgap;
using nlohmann::json;

struct CommonOpts {
    GenConfig cfg;
    int count = 1;
    int workers = 1;
    std::string mode = "rational";
    std::string out;
    std::string csv;
    std::string in;
};

void add_common(CLI::App* cmd, CommonOpts& o, bool with_count = true) {
    cmd->add_option("--setting", o.cfg.setting, "Instance family (1-4)")
        ->check(CLI::Range(1, 4));
    cmd->add_option("--seed", o.cfg.seed, "Generator seed");
    cmd->add_option("--n", o.cfg.agents, "Number of agents (settings 3/4)");
    cmd->add_option("--m", o.cfg.items, "Number of items");
    cmd->add_option("--support", o.cfg.support, "Support size per value distribution");
    cmd->add_option("--mode", o.mode, "Numeric output mode")
        ->check(CLI::IsMember({"rational", "float"}));
    cmd->add_option("--out", o.out, "Write JSON output to this file (default stdout)");
    if (with_count) cmd->add_option("--count", o.count, "Number of instances");
}

NumericMode mode_of(const CommonOpts& o) {
    return o.mode == "float" ? NumericMode::floating : NumericMode::rational;
}

void emit(const std::string& path, const std::string& text) {
    if (path.empty()) {
        std::cout << text << "\n";
        return;
    }
    std::ofstream f(path);
    if (!f) throw validation_error("cannot open output file: " + path);
    f << text << "\n";
}

SuiteInstance load_or_generate(const CommonOpts& o) {
    if (o.in.empty()) return generate_instance(o.cfg, 0);
    std::ifstream f(o.in);
    if (!f) throw validation_error("cannot open instance file: " + o.in);
    json j;
    f >> j;
    if (j.is_array()) {
        if (j.empty()) throw validation_error("instance file holds an empty array");
        return instance_from_json(j.front());
    }
    return instance_from_json(j);
}

int run(int argc, char** argv) {
    CLI::App app{"lotgap: optimal lottery/pricing mechanisms on discrete "
                 "instances, with mechanically verified revenue gap bounds"};
    app.require_subcommand(1);

    CommonOpts gen_o, check_o, lp_o, my_o, pr_o;
    std::string repro_out_a, repro_out_u;
    long appendix_n = 10000;
    int appendix_grid = 2000;
    double u56_step = 0.001;

    auto* gen = app.add_subcommand("gen", "Generate seeded instances as JSON");
    add_common(gen, gen_o);

    auto* check = app.add_subcommand(
        "check", "Generate instances and verify every gap inequality");
    add_common(check, check_o);
    check->add_option("--workers", check_o.workers, "Parallel instance checks")
        ->check(CLI::PositiveNumber);
    check->add_option("--csv", check_o.csv, "Also write the report as CSV");

    auto* lp = app.add_subcommand(
        "lp", "Solve the optimal-menu LP for one instance; optionally dump LP text");
    add_common(lp, lp_o, false);
    lp->add_option("--in", lp_o.in, "Read the instance from a JSON file");

    auto* my = app.add_subcommand(
        "myerson", "Optimal single-parameter mechanism on the instance's copies");
    add_common(my, my_o, false);
    my->add_option("--in", my_o.in, "Read the instance from a JSON file");

    auto* pr = app.add_subcommand("pricing", "Optimal deterministic item pricing");
    add_common(pr, pr_o, false);
    pr->add_option("--in", pr_o.in, "Read the instance from a JSON file");

    auto* ra = app.add_subcommand("repro-appendix",
                                  "Bounded equal-revenue two-item study");
    ra->add_option("--n", appendix_n, "Distribution bound");
    ra->add_option("--grid", appendix_grid, "Geometric grid cells");
    ra->add_option("--out", repro_out_a, "Write JSON output to this file");

    auto* ru = app.add_subcommand("repro-uniform56",
                                  "Two iid uniform-[5,6] items study");
    ru->add_option("--step", u56_step, "Discretization step");
    ru->add_option("--out", repro_out_u, "Write JSON output to this file");

    CLI11_PARSE(app, argc, argv);

    if (gen->parsed()) {
        json arr = json::array();
        for (int i = 0; i < gen_o.count; ++i)
            arr.push_back(instance_to_json(generate_instance(gen_o.cfg, i), mode_of(gen_o)));
        emit(gen_o.out, arr.dump(2));
        return 0;
    }
    if (check->parsed()) {
        auto reps = run_suite(check_o.cfg, check_o.count, check_o.workers);
        emit(check_o.out, reports_to_json(reps, mode_of(check_o)).dump(2));
        if (!check_o.csv.empty()) emit(check_o.csv, reports_to_csv(reps, mode_of(check_o)));
        for (const auto& r : reps)
            if (!r.all_pass()) return 1;
        return 0;
    }
    if (lp->parsed()) {
        auto inst = load_or_generate(lp_o);
        if (inst.ts.agents != 1)
            throw validation_error("lp: the menu LP applies to single-agent instances");
        auto mlp = optimal_menu_lp(inst.ts);
        json j = {{"instance_id", inst.id},
                  {"revenue", rat_to_json(mlp.revenue, mode_of(lp_o))},
                  {"certified", mlp.lp.certified},
                  {"menu", menu_to_json(mlp.menu, mode_of(lp_o))}};
        std::cout << j.dump(2) << "\n";
        if (!lp_o.out.empty()) {
            std::ofstream f(lp_o.out);
            if (!f) throw validation_error("cannot open output file: " + lp_o.out);
            f << write_lp_format(mlp.problem);
        }
        return 0;
    }
    if (my->parsed()) {
        auto inst = load_or_generate(my_o);
        auto copies = build_copies(inst.ts, inst.fs);
        auto res = myerson(copies.ts, copies.fs);
        json j = {{"instance_id", inst.id},
                  {"copies_revenue", rat_to_json(res.revenue, mode_of(my_o))}};
        emit(my_o.out, j.dump(2));
        return 0;
    }
    if (pr->parsed()) {
        auto inst = load_or_generate(pr_o);
        if (inst.ts.agents != 1)
            throw validation_error("pricing: item pricing applies to single-agent instances");
        auto res = optimal_pricing_exact(inst.ts);
        json j = {{"instance_id", inst.id},
                  {"revenue", rat_to_json(res.revenue, mode_of(pr_o))},
                  {"pricing", pricing_to_json(res.pricing, mode_of(pr_o))}};
        emit(pr_o.out, j.dump(2));
        return 0;
    }
    if (ra->parsed()) {
        auto res = repro_appendix(appendix_n, appendix_grid);
        emit(repro_out_a, repro_to_json(res).dump(2));
        return res.all_pass() ? 0 : 1;
    }
    if (ru->parsed()) {
        auto res = repro_uniform56(u56_step);
        emit(repro_out_u, repro_to_json(res).dump(2));
        return res.all_pass() ? 0 : 1;
    }
    return 2;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const lotgap::invariant_error& e) {
        // A verified inequality or internal invariant failed mid-computation.
        std::cerr << "invariant violation: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
