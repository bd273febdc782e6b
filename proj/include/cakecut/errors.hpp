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

#ifndef CAKECUT_ERRORS_HPP_
#define CAKECUT_ERRORS_HPP_

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace cakecut {

// Malformed user input: bad rational, unnormalized density, inconsistent sizes.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A demand function broke its contract (returned an empty set, an out of
// range index, or a zero-length piece).
class ContractError : public std::logic_error {
 public:
  ContractError(const std::string& what, std::size_t player, std::string partition,
                std::size_t piece)
      : std::logic_error(what), player_(player), partition_(std::move(partition)), piece_(piece) {}

  std::size_t player() const { return player_; }
  const std::string& partition() const { return partition_; }
  std::size_t piece() const { return piece_; }

 private:
  std::size_t player_;
  std::string partition_;
  std::size_t piece_;
};

// Refusal to start work whose size exceeds a configured cap.
class ResourceLimit : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Sperner's lemma guarantees a fully-labeled cell for any labeling that
// respects the boundary condition; failing to find one means some demand
// function is not behaving as a function of the partition (or is not hungry).
class SpernerViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Search stopped after spending the configured cell budget.
class BudgetExhausted : public std::runtime_error {
 public:
  explicit BudgetExhausted(std::uint64_t spent)
      : std::runtime_error("cell budget exhausted after " + std::to_string(spent) + " cells"),
        spent_(spent) {}
  std::uint64_t spent() const { return spent_; }

 private:
  std::uint64_t spent_;
};

}  // namespace cakecut

#endif  // CAKECUT_ERRORS_HPP_
