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

#include "cakecut/partition.hpp"

#include "cakecut/errors.hpp"

namespace cakecut {

ContiguousPartition::ContiguousPartition(std::vector<Rational> lengths)
    : lengths_(std::move(lengths)) {
  if (lengths_.empty()) throw InputError("partition needs at least one piece");
  Rational total;
  for (const auto& len : lengths_) {
    if (len.sign() < 0) throw InputError("negative piece length " + len.str());
    total += len;
  }
  if (total != Rational(1)) throw InputError("piece lengths sum to " + total.str() + ", not 1");
}

ContiguousPartition ContiguousPartition::equal(std::size_t pieces) {
  if (pieces == 0) throw InputError("partition needs at least one piece");
  return ContiguousPartition(
      std::vector<Rational>(pieces, Rational(1, static_cast<std::int64_t>(pieces))));
}

std::pair<Rational, Rational> ContiguousPartition::bounds(std::size_t i) const {
  Rational left;
  for (std::size_t j = 0; j < i; ++j) left += lengths_[j];
  return {left, left + lengths_[i]};
}

bool ContiguousPartition::has_positive_piece() const {
  for (const auto& len : lengths_) {
    if (len.sign() > 0) return true;
  }
  return false;
}

std::string ContiguousPartition::str() const {
  std::string out = "(";
  for (std::size_t i = 0; i < lengths_.size(); ++i) {
    if (i) out += ", ";
    out += lengths_[i].str();
  }
  return out + ")";
}

CutVector::CutVector(std::vector<Rational> cuts) : cuts_(std::move(cuts)) {
  Rational prev;
  for (const auto& c : cuts_) {
    if (c < prev) throw InputError("cuts must be nondecreasing and >= 0, got " + c.str());
    prev = c;
  }
  if (prev > Rational(1)) throw InputError("cut beyond the right end: " + prev.str());
}

ContiguousPartition partition_from_cuts(const CutVector& cuts) {
  std::vector<Rational> lengths;
  lengths.reserve(cuts.pieces());
  Rational prev;
  for (const auto& c : cuts.cuts()) {
    lengths.push_back(c - prev);
    prev = c;
  }
  lengths.push_back(Rational(1) - prev);
  return ContiguousPartition(std::move(lengths));
}

CutVector cuts_from_partition(const ContiguousPartition& partition) {
  std::vector<Rational> cuts;
  cuts.reserve(partition.size() - 1);
  Rational acc;
  for (std::size_t i = 0; i + 1 < partition.size(); ++i) {
    acc += partition[i];
    cuts.push_back(acc);
  }
  return CutVector(std::move(cuts));
}

}  // namespace cakecut
