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

#include "cakecut/valuation.hpp"

#include <algorithm>

#include "cakecut/errors.hpp"

namespace cakecut {

namespace {

void check_shape(const std::vector<Rational>& breakpoints, const std::vector<Rational>& densities) {
  if (breakpoints.size() < 2) throw InputError("valuation needs at least two breakpoints");
  if (breakpoints.front() != Rational(0) || breakpoints.back() != Rational(1)) {
    throw InputError("breakpoints must start at 0 and end at 1");
  }
  for (std::size_t i = 1; i < breakpoints.size(); ++i) {
    if (!(breakpoints[i - 1] < breakpoints[i])) {
      throw InputError("breakpoints must be strictly increasing at " + breakpoints[i].str());
    }
  }
  if (densities.size() + 1 != breakpoints.size()) {
    throw InputError("expected " + std::to_string(breakpoints.size() - 1) + " densities, got " +
                     std::to_string(densities.size()));
  }
  for (const auto& d : densities) {
    if (d.sign() < 0) throw InputError("negative density " + d.str());
  }
}

Rational mass(const std::vector<Rational>& breakpoints, const std::vector<Rational>& densities) {
  Rational total;
  for (std::size_t i = 0; i < densities.size(); ++i) {
    total += densities[i] * (breakpoints[i + 1] - breakpoints[i]);
  }
  return total;
}

}  // namespace

PiecewiseConstantValuation::PiecewiseConstantValuation(std::vector<Rational> breakpoints,
                                                       std::vector<Rational> densities)
    : breakpoints_(std::move(breakpoints)), densities_(std::move(densities)) {
  check_shape(breakpoints_, densities_);
  prefix_.reserve(breakpoints_.size());
  prefix_.emplace_back(0);
  for (std::size_t i = 0; i < densities_.size(); ++i) {
    prefix_.push_back(prefix_.back() + densities_[i] * (breakpoints_[i + 1] - breakpoints_[i]));
    if (densities_[i] > max_density_) max_density_ = densities_[i];
  }
  if (prefix_.back() != Rational(1)) {
    throw InputError("densities integrate to " + prefix_.back().str() + ", not 1");
  }
}

PiecewiseConstantValuation PiecewiseConstantValuation::normalized(
    std::vector<Rational> breakpoints, std::vector<Rational> densities) {
  check_shape(breakpoints, densities);
  const Rational total = mass(breakpoints, densities);
  if (total.is_zero()) throw InputError("density is zero everywhere");
  for (auto& d : densities) d /= total;
  return PiecewiseConstantValuation(std::move(breakpoints), std::move(densities));
}

PiecewiseConstantValuation PiecewiseConstantValuation::uniform() {
  return PiecewiseConstantValuation({Rational(0), Rational(1)}, {Rational(1)});
}

PiecewiseConstantValuation PiecewiseConstantValuation::concentrated(const Rational& a,
                                                                    const Rational& b) {
  if (!(Rational(0) <= a && a < b && b <= Rational(1))) {
    throw InputError("support must satisfy 0 <= a < b <= 1");
  }
  std::vector<Rational> bps{Rational(0)};
  std::vector<Rational> dens;
  if (a.sign() > 0) {
    bps.push_back(a);
    dens.emplace_back(0);
  }
  bps.push_back(b);
  dens.push_back(Rational(1) / (b - a));
  if (b < Rational(1)) {
    bps.emplace_back(1);
    dens.emplace_back(0);
  }
  return PiecewiseConstantValuation(std::move(bps), std::move(dens));
}

Rational PiecewiseConstantValuation::cumulative(const Rational& t) const {
  // Segment i covers [breakpoints_[i], breakpoints_[i+1]).
  auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), t);
  if (it == breakpoints_.end()) return Rational(1);
  const auto i = static_cast<std::size_t>(it - breakpoints_.begin()) - 1;
  return prefix_[i] + densities_[i] * (t - breakpoints_[i]);
}

Rational measure_value(const PiecewiseConstantValuation& v, const Rational& a, const Rational& b) {
  if (a.sign() < 0 || b > Rational(1) || a > b) {
    throw InputError("malformed interval [" + a.str() + ", " + b.str() + "]");
  }
  if (a == b) return Rational(0);
  return v.cumulative(b) - v.cumulative(a);
}

std::vector<Rational> piece_values(const PiecewiseConstantValuation& v,
                                   const ContiguousPartition& x) {
  std::vector<Rational> values;
  values.reserve(x.size());
  Rational left;
  Rational left_mass;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i].is_zero()) {
      values.emplace_back(0);
      continue;
    }
    const Rational right = left + x[i];
    const Rational right_mass = (i + 1 == x.size()) ? Rational(1) : v.cumulative(right);
    values.push_back(right_mass - left_mass);
    left = right;
    left_mass = right_mass;
  }
  return values;
}

std::vector<std::size_t> demand_from_valuation(const PiecewiseConstantValuation& v,
                                               const ContiguousPartition& x) {
  const auto values = piece_values(v, x);
  const Rational best = *std::max_element(values.begin(), values.end());
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i] == best) out.push_back(i);
  }
  return out;
}

Rational max_density(std::span<const PiecewiseConstantValuation> valuations) {
  Rational d;
  for (const auto& v : valuations) d = std::max(d, v.max_density());
  return d;
}

std::vector<std::size_t> EnvyReport::enviers() const {
  std::vector<std::size_t> out;
  for (std::size_t p = 0; p < envy.size(); ++p) {
    if (envy[p] > epsilon) out.push_back(p);
  }
  return out;
}

EnvyReport envy_report(std::span<const PiecewiseConstantValuation> valuations,
                       const ContiguousPartition& x, std::span<const std::size_t> own_piece,
                       const Rational& epsilon) {
  if (own_piece.size() != valuations.size()) {
    throw InputError("envy report needs one piece per player");
  }
  if (epsilon.sign() < 0) throw InputError("epsilon must be nonnegative");
  EnvyReport report;
  report.epsilon = epsilon;
  for (std::size_t p = 0; p < valuations.size(); ++p) {
    if (own_piece[p] >= x.size()) throw InputError("player holds a nonexistent piece");
    const auto values = piece_values(valuations[p], x);
    const Rational best = *std::max_element(values.begin(), values.end());
    report.envy.push_back(best - values[own_piece[p]]);
    report.max_envy = std::max(report.max_envy, report.envy.back());
  }
  report.pass = report.max_envy <= epsilon;
  return report;
}

}  // namespace cakecut
