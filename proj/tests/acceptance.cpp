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

// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.
//
//   acceptance PATH_TO_CLI

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cakecut/demand.hpp"
#include "cakecut/errors.hpp"
#include "cakecut/groups.hpp"
#include "cakecut/io.hpp"
#include "cakecut/oracle.hpp"
#include "cakecut/random.hpp"
#include "cakecut/sperner.hpp"
#include "test_support.hpp"

using namespace cakecut;
using Clock = std::chrono::steady_clock;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(3);
  os << x;
  return os.str();
}

// Random sizes with exactly m positive parts summing to n.
std::vector<std::size_t> random_sizes(std::mt19937_64& rng, std::size_t n, std::size_t m) {
  std::vector<std::size_t> sizes(m, 1);
  for (std::size_t extra = n - m; extra > 0; --extra) ++sizes[draw_below(rng, m)];
  return sizes;
}

bool same_certificate(const IndividualAllocation& a, const IndividualAllocation& b) {
  return a.partition == b.partition && a.assignment == b.assignment &&
         a.certificate == b.certificate && a.mesh_distance == b.mesh_distance;
}

// Criterion 1: the thirty-player lifted demand example.
Outcome lifted_example() {
  const GroupStructure groups({10, 10, 10});
  const DemandFunction middle = [](const ContiguousPartition&) { return PieceSet{1}; };
  const auto g = lift_demand(middle, groups);
  std::mt19937_64 rng(1);
  Outcome out;
  double worst_ms = 0;
  for (int trial = 0; trial < 50; ++trial) {
    // Indices 14 and 17 (13 and 16 from zero) share the block maximum.
    std::vector<std::int64_t> w(30);
    for (auto& v : w) v = 1 + static_cast<std::int64_t>(draw_below(rng, 9));
    w[13] = w[16] = 10 + static_cast<std::int64_t>(draw_below(rng, 5));
    std::int64_t total = 0;
    for (auto v : w) total += v;
    std::vector<Rational> lengths;
    for (auto v : w) lengths.emplace_back(v, total);
    const ContiguousPartition x(lengths);
    const auto start = Clock::now();
    const auto got = g(x);
    worst_ms = std::max(worst_ms, seconds_since(start) * 1000);
    if (got != PieceSet{13, 16}) out.pass = false;
  }
  if (worst_ms >= 1.0) out.pass = false;
  out.detail = "{14,17} on 50 inputs, slowest " + fmt(worst_ms) + " ms";
  return out;
}

// Criterion 2: unit sizes reproduce the individual solver.
Outcome unit_sizes() {
  const auto start = Clock::now();
  Outcome out;
  int equal = 0;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const std::size_t n = 2 + seed % 3;
    const auto vals = random_valuations(10'000 + seed, n);
    const Rational eps(1, 100);
    const auto individual = solve_individual(vals, eps);
    const auto grouped = solve_groups(vals, GroupStructure::singletons(n), eps);
    if (same_certificate(individual.allocation, grouped.lifted) &&
        grouped.allocation.partition == individual.allocation.partition &&
        grouped.allocation.membership == individual.allocation.assignment.pieces()) {
      ++equal;
    } else {
      out.pass = false;
    }
  }
  const double total = seconds_since(start);
  if (total >= 30) out.pass = false;
  out.detail = std::to_string(equal) + "/50 identical certificates in " + fmt(total) + " s";
  return out;
}

// Criterion 3: random instances with n in {3,4,5} and m in {2,3}.
Outcome existence() {
  Outcome out;
  std::mt19937_64 rng(3);
  int ok = 0;
  double slowest = 0;
  Rational worst(0);
  for (std::uint64_t i = 0; i < 100; ++i) {
    const std::size_t n = 3 + i % 3;
    const std::size_t m = 2 + (i / 3) % 2;
    const auto sizes = random_sizes(rng, n, m);
    const auto vals = random_valuations(20'000 + i, n);
    const Rational eps(1, 100);
    const auto start = Clock::now();
    try {
      const auto sol = solve_groups(vals, GroupStructure(sizes), eps);
      const double took = seconds_since(start);
      slowest = std::max(slowest, took);
      const auto check = verify_group_envy(vals, sol.allocation, eps);
      worst = std::max(worst, check.max_envy);
      if (check.pass && sol.status == SolveStatus::kConverged && took < 60) {
        ++ok;
      } else {
        out.pass = false;
      }
    } catch (const std::exception& e) {
      out.pass = false;
      std::cerr << "  instance " << i << ": " << e.what() << "\n";
    }
  }
  out.detail = std::to_string(ok) + "/100 within 1/100, worst envy " + worst.str() +
               ", slowest " + fmt(slowest) + " s";
  return out;
}

// Criterion 4: grid oracle at R = 16 against the solver.
Outcome oracle_cross_check() {
  Outcome out;
  std::mt19937_64 rng(4);
  int ok = 0;
  int within_allowance = 0;
  for (std::uint64_t i = 0; i < 30; ++i) {
    const std::size_t n = 2 + i % 3;
    const std::size_t m = 1 + draw_below(rng, n);
    const auto sizes = random_sizes(rng, n, m);
    const auto vals = random_valuations(30'000 + i, n);
    const Rational eps(1, 100);
    const GroupStructure groups(sizes);
    const auto sol = solve_groups(vals, groups, eps);
    const auto solver_envy = verify_group_envy(vals, sol.allocation, eps).max_envy;
    const auto oracle = grid_min_envy_groups(vals, groups, {16});
    // Grid coarseness allowance 2 D (n - 1) / R, reported alongside.
    const Rational allowance = Rational(2) * max_density(vals) *
                               Rational(static_cast<std::int64_t>(n) - 1, 16);
    if (oracle.min_max_envy <= solver_envy + allowance) ++within_allowance;
    if (oracle.min_max_envy <= solver_envy && solver_envy <= eps) {
      ++ok;
    } else {
      out.pass = false;
      std::cerr << "  instance " << i << ": R=16 oracle " << oracle.min_max_envy
                << " > solver envy " << solver_envy << " with pieces "
                << sol.allocation.partition.str() << "; R=64 oracle "
                << grid_min_envy_groups(vals, groups, {64}).min_max_envy << "\n";
    }
  }
  out.detail = std::to_string(ok) + "/30 with oracle <= solver envy <= 1/100 (" +
               std::to_string(within_allowance) + "/30 within the grid allowance)";
  return out;
}

// Criterion 5: frozen groups cannot avoid envy; free groups can.
Outcome fixed_groups() {
  Outcome out;
  const auto players = morning_evening_players();
  const std::vector<std::size_t> mixed{0, 1, 0, 1};
  std::string values;
  for (std::int64_t r : {10, 20, 40}) {
    const auto v = fixed_group_min_envy(players, mixed, {r}).min_max_envy;
    values += "R=" + std::to_string(r) + ":" + v.str() + " ";
    if (v != Rational(1)) out.pass = false;
  }
  const auto free = grid_min_envy_groups(players, GroupStructure({2, 2}), {20}).min_max_envy;
  if (free != Rational(0)) out.pass = false;
  out.detail = "fixed " + values + "variable " + free.str();
  return out;
}

struct CorpusCase {
  std::vector<PiecewiseConstantValuation> valuations;
  std::size_t players() const { return valuations.size(); }
};

std::vector<CorpusCase> sperner_corpus() {
  std::vector<CorpusCase> corpus;
  for (std::uint64_t i = 0; i < 20; ++i) {
    corpus.push_back({random_valuations(40'000 + i, 2 + i % 3)});
  }
  return corpus;
}

// Criterion 6: odd number of fully-labeled cells.
Outcome parity(const std::vector<CorpusCase>& corpus) {
  Outcome out;
  int checked = 0;
  for (const auto& c : corpus) {
    const auto demands = valuation_demands(c.valuations);
    for (std::int64_t mesh = 1; mesh <= 8; ++mesh) {
      ++checked;
      if (count_fully_labeled(c.players(), mesh, demands) % 2 != 1) out.pass = false;
    }
  }
  out.detail = std::to_string(checked) + " (instance, K) pairs, K = 1..8, all odd";
  if (!out.pass) out.detail = "an even count was found";
  return out;
}

// Criterion 7: rainbow cells and the boundary condition, exhaustively.
Outcome rainbow_and_boundary() {
  Outcome out;
  std::uint64_t cells = 0;
  std::uint64_t boundary = 0;
  for (std::size_t n = 2; n <= 5; ++n) {
    std::vector<std::vector<DemandFunction>> labelings;
    labelings.emplace_back(n, valuation_demand(PiecewiseConstantValuation::uniform()));
    for (std::uint64_t s = 0; s < 3; ++s) labelings.push_back(valuation_demands(random_valuations(50'000 + 10 * n + s, n)));
    for (std::int64_t mesh = 1; mesh <= 8; ++mesh) {
      for (const auto& demands : labelings) {
        VertexLabeler labeler(demands, mesh);
        for_each_cell(n, mesh, [&](const ElementaryCell& cell) {
          ++cells;
          std::vector<bool> seen(n, false);
          for (const auto& v : cell.vertices()) {
            const auto owner = owner_of(v, n);
            if (seen[owner]) out.pass = false;
            seen[owner] = true;
            const auto x = v.partition();
            bool on_boundary = false;
            for (std::size_t i = 0; i < n; ++i) on_boundary = on_boundary || x[i].is_zero();
            if (on_boundary) {
              ++boundary;
              if (x[labeler.label(v.z)].is_zero()) out.pass = false;
            }
          }
          return true;
        });
      }
    }
  }
  out.detail = std::to_string(cells) + " cells rainbow, " + std::to_string(boundary) +
               " boundary vertex checks";
  return out;
}

// Criterion 8: readout envy within 2 D (n - 1) / K.
Outcome mesh_bound(const std::vector<CorpusCase>& corpus) {
  Outcome out;
  int checked = 0;
  Rational tightest(1000);
  for (const auto& c : corpus) {
    const auto demands = valuation_demands(c.valuations);
    const std::size_t n = c.players();
    for (std::int64_t mesh = 1; mesh <= 8; ++mesh) {
      const auto alloc = read_allocation(find_fully_labeled_scan(n, mesh, demands));
      const auto envy = check_envy_individual(c.valuations, alloc, Rational(0)).max_envy;
      const Rational bound = Rational(2) * max_density(c.valuations) *
                             Rational(static_cast<std::int64_t>(n) - 1, mesh);
      ++checked;
      if (envy > bound) out.pass = false;
      tightest = std::min(tightest, bound - envy);
    }
  }
  out.detail = std::to_string(checked) + " readouts within bound, smallest slack " +
               tightest.decimal(4);
  return out;
}

// Criterion 9: scaling one player's raw densities by 7.
Outcome scale_invariance() {
  Outcome out;
  std::mt19937_64 rng(9);
  int ok = 0;
  for (int i = 0; i < 20; ++i) {
    const std::size_t n = 2 + i % 3;
    std::vector<PiecewiseConstantValuation> plain;
    std::vector<PiecewiseConstantValuation> scaled;
    for (std::size_t p = 0; p < n; ++p) {
      // Raw integer weights on a random breakpoint set.
      const auto base = random_valuation(rng);
      std::vector<Rational> raw;
      for (const auto& d : base.densities()) raw.push_back(d * Rational(1000));
      std::vector<Rational> times7 = raw;
      if (p == 0) {
        for (auto& d : times7) d *= Rational(7);
      }
      plain.push_back(PiecewiseConstantValuation::normalized(base.breakpoints(), raw));
      scaled.push_back(PiecewiseConstantValuation::normalized(base.breakpoints(), times7));
    }
    const auto a = valuation_demands(plain);
    const auto b = valuation_demands(scaled);
    bool same = true;
    for (std::int64_t mesh : {4, 8}) {
      VertexLabeler la(a, mesh);
      VertexLabeler lb(b, mesh);
      for_each_cell(n, mesh, [&](const ElementaryCell& cell) {
        same = same && la.label_cell(cell) == lb.label_cell(cell);
        return true;
      });
      same = same && find_fully_labeled_scan(n, mesh, a) == find_fully_labeled_scan(n, mesh, b);
    }
    if (same) {
      ++ok;
    } else {
      out.pass = false;
    }
  }
  out.detail = std::to_string(ok) + "/20 instances with identical labels and cells";
  return out;
}

std::string run_cli(const std::string& cli, const std::string& instance, unsigned workers,
                    const std::string& out_path) {
  const std::string cmd = "\"" + cli + "\" solve \"" + instance + "\" --workers " +
                          std::to_string(workers) + " --out \"" + out_path + "\"";
  if (std::system(cmd.c_str()) != 0) return "";
  return testing::read_file(out_path);
}

// Criterion 10: stable region identical across repeats and worker counts.
Outcome determinism(const std::string& cli) {
  Outcome out;
  if (cli.empty()) {
    out.pass = false;
    out.detail = "no CLI path given";
    return out;
  }
  int compared = 0;
  for (const char* name : {"morning_evening.json", "naive_reduction.json", "basketball.json",
                           "uniform_vs_evening.json"}) {
    std::vector<std::string> stable;
    for (unsigned workers : {1u, 4u, 1u, 4u}) {
      const auto text = run_cli(cli, testing::fixture(name), workers,
                                "acceptance_" + std::string(name) + ".out");
      const auto end = text.find("\"runtime\"");
      if (text.empty() || end == std::string::npos) {
        out.pass = false;
        continue;
      }
      stable.push_back(text.substr(0, end));
    }
    for (const auto& s : stable) {
      ++compared;
      if (s != stable.front()) out.pass = false;
    }
  }
  out.detail = std::to_string(compared) + " runs over 4 fixtures, workers 1 and 4";
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  const std::string cli = argc > 1 ? argv[1] : "";
  const auto corpus = sperner_corpus();
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"lifted demand example", lifted_example},
      {"unit sizes match the individual solver", unit_sizes},
      {"existence at desk scale", existence},
      {"oracle cross-check", oracle_cross_check},
      {"fixed-group impossibility", fixed_groups},
      {"Sperner parity", [&] { return parity(corpus); }},
      {"rainbow ownership and boundary condition", rainbow_and_boundary},
      {"envy within the mesh bound", [&] { return mesh_bound(corpus); }},
      {"scale invariance", scale_invariance},
      {"deterministic CLI output", [&] { return determinism(cli); }},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome outcome;
    const auto start = Clock::now();
    try {
      outcome = criteria[i].second();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    if (!outcome.pass) ++failures;
    std::cout << "criterion " << (i + 1) << " " << (outcome.pass ? "PASS" : "FAIL") << "  "
              << criteria[i].first << ": " << outcome.detail << " [" << fmt(seconds_since(start))
              << " s]" << std::endl;
  }
  std::cout << (failures == 0 ? "all criteria pass" : std::to_string(failures) + " failing")
            << std::endl;
  return failures == 0 ? 0 : 1;
}
