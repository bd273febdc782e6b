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

// Small helpers shared by the unit test binaries.

#ifndef CAKECUT_TESTS_TEST_SUPPORT_HPP_
#define CAKECUT_TESTS_TEST_SUPPORT_HPP_

#include <cstdint>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cakecut/partition.hpp"
#include "cakecut/random.hpp"
#include "cakecut/rational.hpp"
#include "cakecut/valuation.hpp"

namespace cakecut::testing {

inline Rational Q(const char* text) { return Rational::parse(text); }

inline std::vector<Rational> Qs(std::initializer_list<const char*> texts) {
  std::vector<Rational> out;
  for (const char* t : texts) out.push_back(Q(t));
  return out;
}

inline ContiguousPartition P(std::initializer_list<const char*> lengths) {
  return ContiguousPartition(Qs(lengths));
}

inline PiecewiseConstantValuation morning() {
  return PiecewiseConstantValuation(Qs({"0", "1/10", "1"}), Qs({"10", "0"}));
}

inline PiecewiseConstantValuation evening() {
  return PiecewiseConstantValuation(Qs({"0", "9/10", "1"}), Qs({"0", "10"}));
}

// Random partition on the 1/grid lattice. Roughly one piece in `zero_every`
// is forced to length zero so that degenerate inputs show up often.
inline ContiguousPartition random_partition(std::mt19937_64& rng, std::size_t pieces,
                                            std::int64_t grid = 24, std::uint64_t zero_every = 3) {
  std::vector<std::int64_t> weights(pieces, 0);
  std::int64_t total = 0;
  for (auto& w : weights) {
    if (zero_every > 0 && draw_below(rng, zero_every) == 0) continue;
    w = static_cast<std::int64_t>(draw_below(rng, static_cast<std::uint64_t>(grid))) + 1;
    total += w;
  }
  if (total == 0) {
    weights[draw_below(rng, pieces)] = 1;
    total = 1;
  }
  std::vector<Rational> lengths;
  for (auto w : weights) lengths.emplace_back(w, total);
  return ContiguousPartition(std::move(lengths));
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline std::string fixture(const std::string& name) {
  return std::string(CAKECUT_FIXTURES) + "/" + name;
}

}  // namespace cakecut::testing

#endif  // CAKECUT_TESTS_TEST_SUPPORT_HPP_
