// Copyright 2026 The cakecut Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cakecut/demand.hpp"

#include <algorithm>
#include <memory>
#include <string>

#include "cakecut/errors.hpp"

namespace cakecut {

DemandFunction valuation_demand(PiecewiseConstantValuation v) {
  auto shared = std::make_shared<const PiecewiseConstantValuation>(std::move(v));
  return [shared](const ContiguousPartition& x) { return demand_from_valuation(*shared, x); };
}

std::vector<DemandFunction> valuation_demands(std::span<const PiecewiseConstantValuation> vs) {
  std::vector<DemandFunction> out;
  out.reserve(vs.size());
  for (const auto& v : vs) out.push_back(valuation_demand(v));
  return out;
}

HungryReport validate_hungry(const DemandFunction& d, const ContiguousPartition& x) {
  if (!x.has_positive_piece()) throw InputError("hungry check needs a positive-length piece");
  HungryReport report;
  report.demanded = d(x);
  for (auto i : report.demanded) {
    if (i < x.size() && x[i].is_zero()) report.offending.push_back(i);
  }
  report.pass = report.offending.empty();
  return report;
}

PieceSet checked_demand(const DemandFunction& d, const ContiguousPartition& x, std::size_t player) {
  PieceSet set = d(x);
  const std::string who = "player " + std::to_string(player + 1);
  if (set.empty()) {
    throw ContractError(who + " demanded nothing at " + x.str(), player, x.str(), 0);
  }
  if (!std::is_sorted(set.begin(), set.end())) std::sort(set.begin(), set.end());
  for (auto i : set) {
    if (i >= x.size()) {
      throw ContractError(who + " demanded nonexistent piece " + std::to_string(i + 1), player,
                          x.str(), i);
    }
    if (x[i].is_zero()) {
      throw ContractError(who + " demanded empty piece " + std::to_string(i + 1) + " at " +
                              x.str() + " (hungry contract)",
                          player, x.str(), i);
    }
  }
  return set;
}

}  // namespace cakecut
