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

#ifndef CAKECUT_DEMAND_HPP_
#define CAKECUT_DEMAND_HPP_

#include <cstddef>
#include <functional>
#include <vector>

#include "cakecut/partition.hpp"
#include "cakecut/valuation.hpp"

namespace cakecut {

// Sorted, 0-based indices of preferred pieces.
using PieceSet = std::vector<std::size_t>;

// A player's preferences: partition -> nonempty set of preferred pieces.
//
// Implementations must be hungry (never return a zero-length piece while some
// piece has positive length) and have closed preference sets (a piece
// preferred along a convergent sequence of partitions is preferred at the
// limit). The second property cannot be checked by the library; it is part of
// the contract. Demand functions must be safe to call concurrently.
using DemandFunction = std::function<PieceSet(const ContiguousPartition&)>;

// Demand backed by a valuation: the full argmax set of piece values.
DemandFunction valuation_demand(PiecewiseConstantValuation v);
std::vector<DemandFunction> valuation_demands(std::span<const PiecewiseConstantValuation> vs);

struct HungryReport {
  bool pass = true;
  PieceSet demanded;
  PieceSet offending;  // demanded pieces of length zero
};

// Evaluates d at x and checks it against the hungry contract. Requires x to
// have a positive-length piece.
HungryReport validate_hungry(const DemandFunction& d, const ContiguousPartition& x);

// Evaluates d at x, throwing ContractError (naming `player`) if the result is
// empty, out of range, unsorted, or names a zero-length piece.
PieceSet checked_demand(const DemandFunction& d, const ContiguousPartition& x, std::size_t player);

}  // namespace cakecut

#endif  // CAKECUT_DEMAND_HPP_
