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

#pragma once

#include <cstddef>
#include <random>
#include <vector>

#include "blotto/game.hpp"

namespace blotto {

// Uniform draw from {x >= 0, sum x = total} via normalized exponential
// spacings. The last coordinate absorbs rounding so the sum is exact up to
// one final addition.
template <typename Rng>
std::vector<double> sample_simplex(std::size_t n, double total, Rng& rng) {
  std::exponential_distribution<double> exp1(1.0);
  std::vector<double> x(n);
  double sum = 0.0;
  for (double& e : x) {
    e = exp1(rng);
    sum += e;
  }
  double used = 0.0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    x[i] = total * (x[i] / sum);
    used += x[i];
  }
  x[n - 1] = used < total ? total - used : 0.0;
  return x;
}

template <typename Rng>
Allocation random_allocation1(const Game& game, Rng& rng) {
  return Allocation{sample_simplex(game.num_slots(), game.budget1(), rng)};
}

template <typename Rng>
ConditionalAllocation random_allocation2(const Game& game, Rng& rng) {
  ConditionalAllocation c(game.num_outcomes(), game.num_slots());
  for (std::size_t o = 0; o < game.num_outcomes(); ++o) {
    c.set_row(o, sample_simplex(game.num_slots(), game.budget2(), rng));
  }
  return c;
}

inline Allocation uniform_allocation1(const Game& game) {
  return Allocation{
      std::vector<double>(game.num_slots(), game.budget1() / static_cast<double>(game.num_slots()))};
}

inline ConditionalAllocation uniform_allocation2(const Game& game) {
  return ConditionalAllocation(game.num_outcomes(), game.num_slots(),
                               game.budget2() / static_cast<double>(game.num_slots()));
}

}  // namespace blotto
