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

#ifndef CAKECUT_PARTITION_HPP_
#define CAKECUT_PARTITION_HPP_

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "cakecut/rational.hpp"

namespace cakecut {

// A division of [0,1] into consecutive pieces, stored as piece lengths from
// left to right. Lengths are nonnegative and sum to exactly 1.
class ContiguousPartition {
 public:
  explicit ContiguousPartition(std::vector<Rational> lengths);

  static ContiguousPartition whole() { return ContiguousPartition({Rational(1)}); }
  static ContiguousPartition equal(std::size_t pieces);

  std::size_t size() const { return lengths_.size(); }
  const Rational& operator[](std::size_t i) const { return lengths_[i]; }
  const std::vector<Rational>& lengths() const { return lengths_; }

  // Endpoints [left, right] of piece i.
  std::pair<Rational, Rational> bounds(std::size_t i) const;
  bool has_positive_piece() const;

  std::string str() const;

  friend bool operator==(const ContiguousPartition&, const ContiguousPartition&) = default;

 private:
  std::vector<Rational> lengths_;
};

// The same division as sorted cut positions; p pieces have p - 1 cuts.
class CutVector {
 public:
  CutVector() = default;
  explicit CutVector(std::vector<Rational> cuts);

  std::size_t pieces() const { return cuts_.size() + 1; }
  const std::vector<Rational>& cuts() const { return cuts_; }
  const Rational& operator[](std::size_t i) const { return cuts_[i]; }

  friend bool operator==(const CutVector&, const CutVector&) = default;

 private:
  std::vector<Rational> cuts_;
};

ContiguousPartition partition_from_cuts(const CutVector& cuts);
CutVector cuts_from_partition(const ContiguousPartition& partition);

}  // namespace cakecut

#endif  // CAKECUT_PARTITION_HPP_
