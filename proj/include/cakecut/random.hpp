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

#ifndef CAKECUT_RANDOM_HPP_
#define CAKECUT_RANDOM_HPP_

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "cakecut/valuation.hpp"

namespace cakecut {

// Random piecewise-constant valuations with breakpoints on a 1/grid lattice
// and integer raw weights in [0, max_weight], normalized. Only raw engine
// output is consumed, so a seed gives the same instance on every platform.
struct RandomValuationSpec {
  std::size_t segments = 4;
  std::int64_t grid = 20;
  std::int64_t max_weight = 9;
};

PiecewiseConstantValuation random_valuation(std::mt19937_64& rng,
                                            const RandomValuationSpec& spec = {});
std::vector<PiecewiseConstantValuation> random_valuations(std::uint64_t seed, std::size_t players,
                                                          const RandomValuationSpec& spec = {});

// Uniform index in [0, bound).
std::uint64_t draw_below(std::mt19937_64& rng, std::uint64_t bound);

}  // namespace cakecut

#endif  // CAKECUT_RANDOM_HPP_
