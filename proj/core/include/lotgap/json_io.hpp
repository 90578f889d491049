// Copyright 2026 The lotgap Authors
// SPDX-License-Identifier: Apache-2.0
//
// JSON serialization for instances, mechanisms and reports, plus the CSV
// report writer. Rational mode renders exact "p/q" strings; float mode
// renders doubles.

#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "lotgap/bounds.hpp"
#include "lotgap/harness.hpp"
#include "lotgap/mech.hpp"

namespace lotgap {

enum class NumericMode { rational, floating };

nlohmann::json rat_to_json(const Rat& r, NumericMode mode);

nlohmann::json dist_to_json(const DiscreteDist<Rat>& d, NumericMode mode);
DiscreteDist<Rat> dist_from_json(const nlohmann::json& j);

nlohmann::json instance_to_json(const SuiteInstance& inst, NumericMode mode);
SuiteInstance instance_from_json(const nlohmann::json& j);

nlohmann::json menu_to_json(const LotteryMenu<Rat>& menu, NumericMode mode);
nlohmann::json pricing_to_json(const ItemPricing<Rat>& pricing, NumericMode mode);

nlohmann::json report_to_json(const GapReport& rep, NumericMode mode);
nlohmann::json reports_to_json(const std::vector<GapReport>& reps, NumericMode mode);

/// Columns: instance_id, inequality_id, lhs, rhs, slack, ratio.
std::string reports_to_csv(const std::vector<GapReport>& reps, NumericMode mode);

}  // namespace lotgap
