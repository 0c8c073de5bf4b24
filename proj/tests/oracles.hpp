// Copyright 2026 The blotto-fp Authors.
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

// Test-only ground truth and random instance generators. Nothing here calls
// into the search code it is used to check.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <random>
#include <span>
#include <stdexcept>
#include <vector>

#include "blotto/best_response.hpp"
#include "blotto/game.hpp"
#include "blotto/simplex.hpp"

namespace blotto::testing {

// Exhaustive maximum over the Cartesian product of candidate lists. Cost and
// objective are summed over slots in index order.
inline double brute_force_oracle(std::span<const SlotCandidateList> lists, double budget,
                                 Objective objective) {
  double product = 1.0;
  for (const auto& l : lists) product *= static_cast<double>(l.candidates.size());
  if (product > 1e7) throw std::length_error("brute_force_oracle: product too large");

  std::vector<std::size_t> idx(lists.size(), 0);
  bool found = false;
  double best = 0.0;
  while (true) {
    double cost = 0.0;
    double value = 0.0;
    for (std::size_t k = 0; k < lists.size(); ++k) {
      cost += lists[k].candidates[idx[k]].amount;
      value += lists[k].candidates[idx[k]].value(objective);
    }
    if (cost <= budget && (!found || value > best)) {
      best = value;
      found = true;
    }
    std::size_t k = 0;
    while (k < lists.size() && ++idx[k] == lists[k].candidates.size()) idx[k++] = 0;
    if (k == lists.size()) break;
  }
  if (!found) throw std::logic_error("brute_force_oracle: nothing feasible");
  return best;
}

inline GameConfig random_config(std::mt19937_64& rng, std::size_t max_slots = 4,
                                std::size_t max_outcomes = 3) {
  std::uniform_int_distribution<std::size_t> slots_d(1, max_slots);
  std::uniform_int_distribution<std::size_t> outcomes_d(1, max_outcomes);
  std::uniform_real_distribution<double> value_d(0.05, 1.0);
  std::uniform_real_distribution<double> budget_d(1.0, 10.0);
  std::uniform_real_distribution<double> delta_d(1e-4, 0.3);

  GameConfig c;
  const std::size_t f = slots_d(rng);
  const std::size_t m = outcomes_d(rng);
  for (std::size_t i = 0; i < f; ++i) c.battlefield_values.push_back(value_d(rng));
  std::vector<int> perm(f);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<double> raw(m);
  double total = 0.0;
  for (std::size_t o = 0; o < m; ++o) {
    std::shuffle(perm.begin(), perm.end(), rng);
    c.outcomes.push_back(perm);
    raw[o] = value_d(rng);
    total += raw[o];
  }
  double used = 0.0;
  for (std::size_t o = 0; o + 1 < m; ++o) {
    c.outcome_probs.push_back(raw[o] / total);
    used += c.outcome_probs.back();
  }
  c.outcome_probs.push_back(1.0 - used);
  c.budget1 = budget_d(rng);
  c.budget2 = budget_d(rng);
  c.delta = delta_d(rng);
  return c;
}

// Simplex draw, optionally snapped to a coarse grid so thresholds collide and
// ties get exercised. The snapped vector still sums to `total`.
inline std::vector<double> random_row(std::size_t n, double total, std::mt19937_64& rng,
                                      bool snap) {
  std::vector<double> x = sample_simplex(n, total, rng);
  if (!snap || n == 1) return x;
  const double step = total / 8.0;
  double used = 0.0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    x[i] = std::floor(x[i] / step) * step;
    used += x[i];
  }
  x[n - 1] = total - used;
  return x;
}

inline std::vector<Allocation> random_history1(const Game& g, std::size_t len,
                                               std::mt19937_64& rng, bool snap = false) {
  std::vector<Allocation> h;
  for (std::size_t t = 0; t < len; ++t) {
    h.push_back(Allocation{random_row(g.num_slots(), g.budget1(), rng, snap)});
  }
  return h;
}

inline std::vector<ConditionalAllocation> random_history2(const Game& g, std::size_t len,
                                                          std::mt19937_64& rng,
                                                          bool snap = false) {
  std::vector<ConditionalAllocation> h;
  for (std::size_t t = 0; t < len; ++t) {
    ConditionalAllocation c(g.num_outcomes(), g.num_slots());
    for (std::size_t o = 0; o < g.num_outcomes(); ++o) {
      c.set_row(o, random_row(g.num_slots(), g.budget2(), rng, snap));
    }
    h.push_back(std::move(c));
  }
  return h;
}

}  // namespace blotto::testing
