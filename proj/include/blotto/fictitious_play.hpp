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

// Redundant fictitious play: every iteration's pure best response is stored
// individually and the average strategy is the uniform mixture over the
// stored list. Both players respond simultaneously to the opponent's
// mixture over entries [0, t).
//
// The mixture value v*_1[t] is the mean of u1 over all (t+1)^2 stored
// pairs. Recomputing it each iteration costs O(t^2); instead the engine
// keeps the pair sum and adds only the new row, the new column and the new
// diagonal pair. The row and column sums are exactly the numerators of the
// two exploitability terms, so both come out of the same pass.

#pragma once

#include <algorithm>
#include <chrono>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <future>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <vector>

#include "blotto/best_response.hpp"
#include "blotto/game.hpp"
#include "blotto/payoff.hpp"
#include "blotto/simplex.hpp"

namespace blotto {

enum class InitMode { kUniform, kSeededRandom };

// Where a best response puts the budget its knapsack solution leaves unused.
// kFirstSlot always uses slot 0. kRotate moves the deposit one slot per
// iteration (player 1 on slot t mod |F|, player 2's outcome o on slot
// (t + 1 + o) mod |F|).
enum class LeftoverPolicy { kFirstSlot, kRotate };

struct RunOptions {
  std::size_t iterations = 5000;
  std::size_t report_every = 10;
  InitMode init = InitMode::kUniform;
  std::uint64_t seed = 0;
  // Respond to a fresh uniform sample of this many opponent entries instead
  // of the whole history. Exploitability is still measured on the full one.
  std::optional<std::size_t> sample_k;
  ResponseMode mode = ResponseMode::kWins;
  LeftoverPolicy leftover = LeftoverPolicy::kRotate;
  // Solve the player 1 problem and the per-outcome player 2 problems
  // concurrently.
  bool parallel = false;

  void validate() const {
    if (iterations < 1) throw std::invalid_argument("iterations must be >= 1");
    if (report_every < 1) throw std::invalid_argument("report_every must be >= 1");
    if (sample_k && *sample_k < 1) throw std::invalid_argument("sample_k must be >= 1");
  }
};

struct TraceRecord {
  std::size_t iteration = 0;
  double elapsed_seconds = 0.0;
  double eps1 = 0.0;
  double eps2 = 0.0;
  double eps = 0.0;
  double v_star1 = 0.0;
};

using TraceSink = std::function<void(const TraceRecord&)>;

struct EngineState {
  History history;
  std::size_t t = 0;
  double pair_sum1 = 0.0;  // sum of u1 over all stored pairs
  double v_star1 = 0.0;
  double v_star2 = 0.0;
  // Undefined (zero) until the first step.
  double eps1 = 0.0;
  double eps2 = 0.0;
  double eps = 0.0;
  std::mt19937_64 sampler;
};

// K entries drawn uniformly without replacement, in original order.
template <typename T, typename Rng>
std::vector<T> sample_subset(std::span<const T> entries, std::size_t k, Rng& rng) {
  if (k > entries.size()) throw std::invalid_argument("sample_subset: K exceeds history length");
  std::vector<T> out;
  out.reserve(k);
  std::sample(entries.begin(), entries.end(), std::back_inserter(out), k, rng);
  return out;
}

inline EngineState initialize(const Game& game, const RunOptions& options) {
  options.validate();
  EngineState state;
  std::seed_seq sampler_seed{options.seed, std::uint64_t{1}};
  state.sampler.seed(sampler_seed);
  if (options.init == InitMode::kUniform) {
    state.history.push(uniform_allocation1(game), uniform_allocation2(game));
  } else {
    std::seed_seq init_seed{options.seed, std::uint64_t{0}};
    std::mt19937_64 rng(init_seed);
    Allocation a = random_allocation1(game, rng);
    ConditionalAllocation c = random_allocation2(game, rng);
    state.history.push(std::move(a), std::move(c));
  }
  state.pair_sum1 = utility1(game, state.history.player1[0], state.history.player2[0]);
  state.v_star1 = state.pair_sum1;
  state.v_star2 = -state.v_star1;
  return state;
}

namespace detail {

struct Responses {
  Allocation br1;
  ConditionalAllocation br2;
};

inline Responses respond(const Game& game, std::span<const ConditionalAllocation> opp2,
                         std::span<const Allocation> opp1, const RunOptions& options,
                         std::size_t t) {
  const std::size_t f = game.num_slots();
  const bool rotate = options.leftover == LeftoverPolicy::kRotate;
  const std::size_t slot1 = rotate ? t % f : 0;
  std::vector<std::size_t> slots2(game.num_outcomes(), 0);
  if (rotate) {
    for (std::size_t o = 0; o < slots2.size(); ++o) slots2[o] = (t + 1 + o) % f;
  }
  if (options.parallel) {
    auto p1 = std::async(std::launch::async,
                         [&] { return best_response1(game, opp2, options.mode, slot1); });
    BestResponse2 r2 = best_response2(game, opp1, options.mode, slots2, true);
    return {p1.get().strategy, std::move(r2.strategy)};
  }
  BestResponse1 r1 = best_response1(game, opp2, options.mode, slot1);
  BestResponse2 r2 = best_response2(game, opp1, options.mode, slots2, false);
  return {std::move(r1.strategy), std::move(r2.strategy)};
}

}  // namespace detail

// One iteration: both best responses against the time-(t-1) mixtures, the
// exploitability of each, then the history and value bookkeeping update.
inline void step(const Game& game, EngineState& state, const RunOptions& options) {
  const History& h = state.history;
  const std::size_t n = h.size();
  std::span<const ConditionalAllocation> opp2(h.player2);
  std::span<const Allocation> opp1(h.player1);

  detail::Responses r;
  if (options.sample_k && *options.sample_k < n) {
    const std::vector<ConditionalAllocation> s2 = sample_subset(opp2, *options.sample_k, state.sampler);
    const std::vector<Allocation> s1 = sample_subset(opp1, *options.sample_k, state.sampler);
    r = detail::respond(game, s2, s1, options, state.t + 1);
  } else {
    r = detail::respond(game, opp2, opp1, options, state.t + 1);
  }

  double row_sum = 0.0;  // u1(br1, S2[u])
  double col_sum = 0.0;  // u1(S1[u], br2)
  for (std::size_t u = 0; u < n; ++u) {
    row_sum += utility1(game, r.br1, h.player2[u]);
    col_sum += utility1(game, h.player1[u], r.br2);
  }
  const double inv = 1.0 / static_cast<double>(n);
  state.eps1 = row_sum * inv - state.v_star1;
  state.eps2 = -col_sum * inv - state.v_star2;
  state.eps = std::max(state.eps1, state.eps2);

  state.pair_sum1 += row_sum + col_sum + utility1(game, r.br1, r.br2);
  state.history.push(std::move(r.br1), std::move(r.br2));
  state.t += 1;
  const double m = static_cast<double>(state.t + 1);
  state.v_star1 = state.pair_sum1 / (m * m);
  state.v_star2 = -state.v_star1;
}

// Runs `options.iterations` steps, emitting a trace record every
// `report_every` iterations and after the last one.
inline EngineState run(const Game& game, const RunOptions& options, const TraceSink& sink = {}) {
  using Clock = std::chrono::steady_clock;
  const auto start = Clock::now();
  EngineState state = initialize(game, options);
  for (std::size_t i = 1; i <= options.iterations; ++i) {
    step(game, state, options);
    if (sink && (i % options.report_every == 0 || i == options.iterations)) {
      const std::chrono::duration<double> elapsed = Clock::now() - start;
      sink(TraceRecord{state.t, elapsed.count(), state.eps1, state.eps2, state.eps,
                       state.v_star1});
    }
  }
  return state;
}

}  // namespace blotto
