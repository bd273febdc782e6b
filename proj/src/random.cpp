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

#include "cakecut/random.hpp"

#include <algorithm>

#include "cakecut/errors.hpp"

namespace cakecut {

std::uint64_t draw_below(std::mt19937_64& rng, std::uint64_t bound) {
  if (bound == 0) return 0;
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  std::uint64_t r = rng();
  while (r >= limit) r = rng();
  return r % bound;
}

PiecewiseConstantValuation random_valuation(std::mt19937_64& rng,
                                            const RandomValuationSpec& spec) {
  if (spec.segments < 1 || spec.grid < static_cast<std::int64_t>(spec.segments) ||
      spec.max_weight < 1) {
    throw InputError("random valuation spec needs 1 <= segments <= grid and max_weight >= 1");
  }
  // Choose segments - 1 distinct interior grid points.
  std::vector<std::int64_t> interior;
  while (interior.size() + 1 < spec.segments) {
    const auto p = 1 + static_cast<std::int64_t>(
                           draw_below(rng, static_cast<std::uint64_t>(spec.grid - 1)));
    if (std::find(interior.begin(), interior.end(), p) == interior.end()) interior.push_back(p);
  }
  std::sort(interior.begin(), interior.end());
  std::vector<Rational> bps{Rational(0)};
  for (auto p : interior) bps.emplace_back(p, spec.grid);
  bps.emplace_back(1);

  std::vector<Rational> weights;
  bool positive = false;
  for (std::size_t s = 0; s < spec.segments; ++s) {
    const auto w = static_cast<std::int64_t>(
        draw_below(rng, static_cast<std::uint64_t>(spec.max_weight + 1)));
    positive = positive || w > 0;
    weights.emplace_back(w);
  }
  if (!positive) weights[draw_below(rng, spec.segments)] = Rational(1);
  return PiecewiseConstantValuation::normalized(std::move(bps), std::move(weights));
}

std::vector<PiecewiseConstantValuation> random_valuations(std::uint64_t seed, std::size_t players,
                                                          const RandomValuationSpec& spec) {
  std::mt19937_64 rng(seed);
  std::vector<PiecewiseConstantValuation> out;
  out.reserve(players);
  for (std::size_t p = 0; p < players; ++p) out.push_back(random_valuation(rng, spec));
  return out;
}

}  // namespace cakecut
