// Copyright 2026 The lotgap Authors
// SPDX-License-Identifier: Apache-2.0

#include "lotgap/json_io.hpp"

#include <sstream>

namespace lotgap {

using nlohmann::json;

json rat_to_json(const Rat& r, NumericMode mode) {
    if (mode == NumericMode::floating) return num<Rat>::to_double(r);
    return rat_str(r);
}

static Rat rat_from_json(const json& j) {
    if (j.is_string()) return parse_rat(j.get<std::string>());
    return rat_from_double(j.get<double>());
}

json dist_to_json(const DiscreteDist<Rat>& d, NumericMode mode) {
    json sup = json::array(), probs = json::array();
    for (const auto& v : d.support) sup.push_back(rat_to_json(v, mode));
    for (const auto& p : d.probs) probs.push_back(rat_to_json(p, mode));
    return {{"support", sup}, {"probs", probs}};
}

DiscreteDist<Rat> dist_from_json(const json& j) {
    std::vector<Rat> sup, probs;
    for (const auto& v : j.at("support")) sup.push_back(rat_from_json(v));
    for (const auto& p : j.at("probs")) probs.push_back(rat_from_json(p));
    return make_discrete(std::move(sup), std::move(probs));
}

static json matroid_to_json(const MatroidOracle& m) {
    json j;
    if (m.kind() == MatroidOracle::Kind::uniform) {
        j["kind"] = "uniform";
        j["ground"] = m.ground();
        j["rank"] = m.rank_bound();
        return j;
    }
    // Partition internals are private to the oracle; both partition and
    // explicit matroids round-trip through the independence list.
    json indep = json::array();
    for (Mask s = 0; s < (Mask(1) << m.ground()); ++s)
        if (m.independent(s)) indep.push_back(s);
    j["kind"] = "explicit";
    j["ground"] = m.ground();
    j["independent"] = indep;
    return j;
}

static MatroidOracle matroid_from_json(const json& j) {
    std::string kind = j.at("kind");
    if (kind == "uniform") return MatroidOracle::uniform(j.at("ground"), j.at("rank"));
    if (kind == "explicit") {
        std::vector<Mask> indep;
        for (const auto& s : j.at("independent")) indep.push_back(s.get<Mask>());
        return MatroidOracle::explicit_sets(j.at("ground"), std::move(indep));
    }
    throw validation_error("matroid_from_json: unknown kind '" + kind + "'");
}

static json feasibility_to_json(const FeasibilitySystem& fs) {
    json j;
    j["agents"] = fs.agents();
    j["items"] = fs.items();
    if (fs.tag() == FeasibilitySystem::Tag::matching) {
        j["kind"] = "matching";
        j["capacities"] = fs.item_caps();
    } else {
        j["kind"] = "general";
        j["matroid"] = matroid_to_json(fs.j1());
    }
    return j;
}

static FeasibilitySystem feasibility_from_json(const json& j) {
    int agents = j.at("agents"), items = j.at("items");
    if (j.at("kind") == "matching")
        return FeasibilitySystem::matching(agents, items,
                                           j.at("capacities").get<std::vector<int>>());
    return FeasibilitySystem::general(agents, items, matroid_from_json(j.at("matroid")));
}

json instance_to_json(const SuiteInstance& inst, NumericMode mode) {
    json j;
    j["id"] = inst.id;
    j["setting"] = inst.setting;
    if (inst.setting == 2) {
        json comps = json::array();
        for (const auto& d : inst.components) comps.push_back(dist_to_json(d, mode));
        j["type_space"] = {{"kind", "additive"}, {"components", comps}};
    } else {
        json rows = json::array();
        for (const auto& row : inst.dists) {
            json r = json::array();
            for (const auto& d : row) r.push_back(dist_to_json(d, mode));
            rows.push_back(r);
        }
        j["type_space"] = {{"kind", "product"}, {"dists", rows}};
        j["feasibility"] = feasibility_to_json(inst.fs);
    }
    return j;
}

SuiteInstance instance_from_json(const json& j) {
    SuiteInstance inst;
    inst.id = j.at("id");
    inst.setting = j.at("setting");
    const auto& tsj = j.at("type_space");
    if (tsj.at("kind") == "additive") {
        for (const auto& c : tsj.at("components")) inst.components.push_back(dist_from_json(c));
        inst.ts = additive_type_space(inst.components);
        int m = static_cast<int>(inst.components.size()) - 1;
        inst.fs = FeasibilitySystem::matching(1, m, std::vector<int>(m, 1));
        return inst;
    }
    for (const auto& row : tsj.at("dists")) {
        inst.dists.emplace_back();
        for (const auto& d : row) inst.dists.back().push_back(dist_from_json(d));
    }
    inst.ts = product_type_space(inst.dists);
    inst.fs = feasibility_from_json(j.at("feasibility"));
    return inst;
}

json menu_to_json(const LotteryMenu<Rat>& menu, NumericMode mode) {
    json lots = json::array();
    for (const auto& l : menu.lotteries) {
        json q = json::array();
        for (const auto& qj : l.q) q.push_back(rat_to_json(qj, mode));
        lots.push_back({{"q", q}, {"price", rat_to_json(l.price, mode)}});
    }
    return {{"items", menu.items}, {"lotteries", lots}};
}

json pricing_to_json(const ItemPricing<Rat>& pricing, NumericMode mode) {
    json prices = json::array();
    for (const auto& p : pricing.prices) {
        if (p)
            prices.push_back(rat_to_json(*p, mode));
        else
            prices.push_back(nullptr);
    }
    return {{"prices", prices}};
}

static double row_ratio(const GapRow& r) {
    double rhs = num<Rat>::to_double(r.rhs);
    double lhs = num<Rat>::to_double(r.lhs);
    if (rhs == 0.0) return lhs == 0.0 ? 1.0 : std::numeric_limits<double>::infinity();
    return lhs / rhs;
}

json report_to_json(const GapReport& rep, NumericMode mode) {
    json rows = json::array();
    for (const auto& r : rep.rows) {
        rows.push_back({{"inequality", r.id},
                        {"lhs", rat_to_json(r.lhs, mode)},
                        {"rhs", rat_to_json(r.rhs, mode)},
                        {"slack", rat_to_json(r.slack(), mode)},
                        {"ratio", row_ratio(r)},
                        {"equality", r.equality},
                        {"pass", r.pass},
                        {"witness", r.witness}});
    }
    return {{"instance_id", rep.instance_id}, {"all_pass", rep.all_pass()}, {"rows", rows}};
}

json reports_to_json(const std::vector<GapReport>& reps, NumericMode mode) {
    bool all = true;
    json arr = json::array();
    for (const auto& r : reps) {
        all = all && r.all_pass();
        arr.push_back(report_to_json(r, mode));
    }
    return {{"all_pass", all}, {"reports", arr}};
}

std::string reports_to_csv(const std::vector<GapReport>& reps, NumericMode mode) {
    std::ostringstream os;
    os << "instance_id,inequality_id,lhs,rhs,slack,ratio\n";
    auto cell = [&](const Rat& v) {
        if (mode == NumericMode::rational) return rat_str(v);
        std::ostringstream c;
        c.precision(17);
        c << num<Rat>::to_double(v);
        return c.str();
    };
    for (const auto& rep : reps)
        for (const auto& r : rep.rows) {
            std::ostringstream ratio;
            ratio.precision(12);
            ratio << row_ratio(r);
            os << rep.instance_id << ',' << r.id << ',' << cell(r.lhs) << ',' << cell(r.rhs)
               << ',' << cell(r.slack()) << ',' << ratio.str() << '\n';
        }
    return os.str();
}

}  // namespace lotgap
