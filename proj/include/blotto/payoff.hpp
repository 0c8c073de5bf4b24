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

#include <algorithm>
#include <cstddef>
#include <stdexcept>

#include "blotto/game.hpp"

namespace blotto {

// Player 1's payoff on one slot: +value when x beats y by at least delta,
// -value when y matches or exceeds x, zero inside the gap.
constexpr double slot_payoff1(double x, double y, double value, double delta) noexcept {
  if (x >= y + delta) return value;
  if (x <= y) return -value;
  return 0.0;
}

constexpr double slot_payoff2(double x, double y, double value, double delta) noexcept {
  return -slot_payoff1(x, y, value, delta);
}

// Player 1's payoff against a single outcome row of player 2, unweighted.
inline double outcome_payoff1(const Game& game, const Allocation& s1,
                              const ConditionalAllocation& s2, std::size_t outcome) {
  double sum = 0.0;
  const double delta = game.delta();
  for (std::size_t q = 0; q < game.num_slots(); ++q) {
    sum += slot_payoff1(s1[q], s2(outcome, q), game.slot_value(outcome, q), delta);
  }
  return sum;
}

inline double utility1(const Game& game, const Allocation& s1, const ConditionalAllocation& s2) {
  check_shape(game, s1);
  check_shape(game, s2);
  double total = 0.0;
  for (std::size_t o = 0; o < game.num_outcomes(); ++o) {
    total += game.prob(o) * outcome_payoff1(game, s1, s2, o);
  }
  return total;
}

inline double utility2(const Game& game, const Allocation& s1, const ConditionalAllocation& s2) {
  return -utility1(game, s1, s2);
}

// v*_1[t] from scratch: the average of u1 over all (t+1)^2 stored pairs,
// accumulated in the same loop order as the reference procedure.
inline double mixture_value_naive(const Game& game, const History& history, std::size_t t) {
  if (t >= history.player1.size() || t >= history.player2.size()) {
    throw std::out_of_range("mixture_value_naive: t beyond history");
  }
  const double delta = game.delta();
  double v = 0.0;
  for (std::size_t t1 = 0; t1 <= t; ++t1) {
    const Allocation& s1 = history.player1[t1];
    for (std::size_t t2 = 0; t2 <= t; ++t2) {
      const ConditionalAllocation& s2 = history.player2[t2];
      for (std::size_t o = 0; o < game.num_outcomes(); ++o) {
        for (std::size_t q = 0; q < game.num_slots(); ++q) {
          const double pv = game.prob(o) * game.slot_value(o, q);
          if (s1[q] >= s2(o, q) + delta) {
            v += pv;
          } else if (s1[q] <= s2(o, q)) {
            v -= pv;
          }
        }
      }
    }
  }
  const double n = static_cast<double>(t + 1);
  return v / (n * n);
}

struct Exploitability {
  double eps1 = 0.0;
  double eps2 = 0.0;
  double eps = 0.0;
};

// Per-player gains of the iteration-t responses against the opponents'
// mixtures over entries [0, t), relative to the previous mixture values.
inline Exploitability exploitability_naive(const Game& game, const History& history,
                                           std::size_t t, const Allocation& br1,
                                           const ConditionalAllocation& br2, double v_prev1,
                                           double v_prev2) {
  if (t == 0) throw std::out_of_range("exploitability_naive: requires t >= 1");
  if (t > history.player1.size() || t > history.player2.size()) {
    throw std::out_of_range("exploitability_naive: t beyond history");
  }
  check_shape(game, br1);
  check_shape(game, br2);
  const double delta = game.delta();
  double e1 = 0.0;
  double e2 = 0.0;
  for (std::size_t t2 = 0; t2 < t; ++t2) {
    const ConditionalAllocation& s2 = history.player2[t2];
    const Allocation& s1 = history.player1[t2];
    for (std::size_t o = 0; o < game.num_outcomes(); ++o) {
      for (std::size_t q = 0; q < game.num_slots(); ++q) {
        const double pv = game.prob(o) * game.slot_value(o, q);
        if (br1[q] >= s2(o, q) + delta) {
          e1 += pv;
        } else if (br1[q] <= s2(o, q)) {
          e1 -= pv;
        }
        if (s1[q] >= br2(o, q) + delta) {
          e2 -= pv;
        } else if (s1[q] <= br2(o, q)) {
          e2 += pv;
        }
      }
    }
  }
  const double n = static_cast<double>(t);
  Exploitability out;
  out.eps1 = e1 / n - v_prev1;
  out.eps2 = e2 / n - v_prev2;
  out.eps = std::max(out.eps1, out.eps2);
  return out;
}

}  // namespace blotto
