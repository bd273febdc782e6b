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

#ifndef CAKECUT_VALUATION_HPP_
#define CAKECUT_VALUATION_HPP_

#include <cstddef>
#include <span>
#include <vector>

#include "cakecut/partition.hpp"
#include "cakecut/rational.hpp"

namespace cakecut {

// A player's value density over [0,1]: constant on each segment between
// consecutive breakpoints, integrating to exactly 1.
//
// Normalization makes such a player hungry: in any p-piece partition the best
// piece is worth at least 1/p while an empty piece is worth 0.
class PiecewiseConstantValuation {
 public:
  // Throws InputError unless breakpoints run strictly from 0 to 1, there is
  // one nonnegative density per segment, and the total mass is exactly 1.
  PiecewiseConstantValuation(std::vector<Rational> breakpoints, std::vector<Rational> densities);

  // Rescales raw nonnegative densities to total mass 1. Rejects all-zero input.
  static PiecewiseConstantValuation normalized(std::vector<Rational> breakpoints,
                                               std::vector<Rational> densities);
  static PiecewiseConstantValuation uniform();
  // Density 1/(b-a) on [a,b], zero elsewhere.
  static PiecewiseConstantValuation concentrated(const Rational& a, const Rational& b);

  const std::vector<Rational>& breakpoints() const { return breakpoints_; }
  const std::vector<Rational>& densities() const { return densities_; }
  const Rational& max_density() const { return max_density_; }

  // Integral of the density over [0, t].
  Rational cumulative(const Rational& t) const;

  friend bool operator==(const PiecewiseConstantValuation& a,
                         const PiecewiseConstantValuation& b) {
    return a.breakpoints_ == b.breakpoints_ && a.densities_ == b.densities_;
  }

 private:
  std::vector<Rational> breakpoints_;
  std::vector<Rational> densities_;
  std::vector<Rational> prefix_;  // mass of [0, breakpoints_[i]]
  Rational max_density_;
};

// Exact integral of the density over [a,b]. Throws InputError unless
// 0 <= a <= b <= 1.
Rational measure_value(const PiecewiseConstantValuation& v, const Rational& a, const Rational& b);

// Value of every piece of the partition.
std::vector<Rational> piece_values(const PiecewiseConstantValuation& v,
                                   const ContiguousPartition& x);

// Indices (0-based, ascending) of all pieces of maximum value. Exact, no
// tolerance.
std::vector<std::size_t> demand_from_valuation(const PiecewiseConstantValuation& v,
                                               const ContiguousPartition& x);

Rational max_density(std::span<const PiecewiseConstantValuation> valuations);

// Per-player envy: best value of any piece minus value of the player's own.
struct EnvyReport {
  std::vector<Rational> envy;
  Rational max_envy;
  Rational epsilon;
  bool pass = false;

  // Players whose envy exceeds epsilon.
  std::vector<std::size_t> enviers() const;
};

// own_piece[p] is the index of the piece player p holds in x.
EnvyReport envy_report(std::span<const PiecewiseConstantValuation> valuations,
                       const ContiguousPartition& x, std::span<const std::size_t> own_piece,
                       const Rational& epsilon);

}  // namespace cakecut

#endif  // CAKECUT_VALUATION_HPP_
