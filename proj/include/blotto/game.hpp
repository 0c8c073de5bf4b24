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

#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace blotto {

inline constexpr double kProbSumTolerance = 1e-12;
inline constexpr double kBudgetSumTolerance = 1e-9;

enum class GameErrc {
  kNonPositiveValue,
  kBadPermutation,
  kProbsNotNormalized,
  kNonPositiveBudget,
  kNonPositiveDelta,
  kDimensionMismatch,
  kMissingField,
  kParse,
};

inline const char* to_string(GameErrc code) {
  switch (code) {
    case GameErrc::kNonPositiveValue: return "NonPositiveValue";
    case GameErrc::kBadPermutation: return "BadPermutation";
    case GameErrc::kProbsNotNormalized: return "ProbsNotNormalized";
    case GameErrc::kNonPositiveBudget: return "NonPositiveBudget";
    case GameErrc::kNonPositiveDelta: return "NonPositiveDelta";
    case GameErrc::kDimensionMismatch: return "DimensionMismatch";
    case GameErrc::kMissingField: return "MissingField";
    case GameErrc::kParse: return "ParseError";
  }
  return "Unknown";
}

// Raised for malformed game descriptions and strategy/game shape mismatches.
// `field()` names the offending config field when one applies.
class GameError : public std::invalid_argument {
 public:
  GameError(GameErrc code, std::string field, const std::string& what)
      : std::invalid_argument(std::string(to_string(code)) + ": " + what),
        code_(code),
        field_(std::move(field)) {}

  GameErrc code() const noexcept { return code_; }
  const std::string& field() const noexcept { return field_; }

 private:
  GameErrc code_;
  std::string field_;
};

// Unvalidated game description, as read from a config file.
struct GameConfig {
  std::vector<double> battlefield_values;
  std::vector<std::vector<int>> outcomes;
  std::vector<double> outcome_probs;
  double budget1 = 0.0;
  double budget2 = 0.0;
  double delta = 0.0;
};

// Continuous Blotto instance. Player 1 allocates one amount per slot without
// seeing the outcome; player 2 observes the outcome (a permutation placing
// battlefield outcomes[o][q] in slot q) and allocates per (outcome, slot).
// Indices are 0-based throughout.
class Game {
 public:
  // Validates `config` and builds the instance; throws GameError.
  static Game validate(GameConfig config);

  std::size_t num_slots() const noexcept { return values_.size(); }
  std::size_t num_outcomes() const noexcept { return probs_.size(); }

  std::span<const double> battlefield_values() const noexcept { return values_; }
  std::span<const double> outcome_probs() const noexcept { return probs_; }
  const std::vector<std::vector<int>>& outcomes() const noexcept { return outcomes_; }

  double prob(std::size_t outcome) const { return probs_[outcome]; }
  int battlefield(std::size_t outcome, std::size_t slot) const {
    return outcomes_[outcome][slot];
  }
  // v_{o(q)}: value of the battlefield occupying `slot` under `outcome`.
  double slot_value(std::size_t outcome, std::size_t slot) const {
    return values_[static_cast<std::size_t>(outcomes_[outcome][slot])];
  }

  double budget1() const noexcept { return budget1_; }
  double budget2() const noexcept { return budget2_; }
  double budget(int player) const noexcept { return player == 1 ? budget1_ : budget2_; }
  double delta() const noexcept { return delta_; }

  // Sum of all battlefield values; bounds |u1| for every strategy pair.
  double total_value() const noexcept {
    double s = 0.0;
    for (double v : values_) s += v;
    return s;
  }

  GameConfig to_config() const {
    return GameConfig{values_, outcomes_, probs_, budget1_, budget2_, delta_};
  }

 private:
  Game() = default;

  std::vector<double> values_;
  std::vector<std::vector<int>> outcomes_;
  std::vector<double> probs_;
  double budget1_ = 0.0;
  double budget2_ = 0.0;
  double delta_ = 0.0;
};

inline Game Game::validate(GameConfig config) {
  const std::size_t n = config.battlefield_values.size();
  if (n == 0) {
    throw GameError(GameErrc::kDimensionMismatch, "battlefield_values",
                    "at least one battlefield is required");
  }
  for (std::size_t f = 0; f < n; ++f) {
    const double v = config.battlefield_values[f];
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw GameError(GameErrc::kNonPositiveValue, "battlefield_values",
                      "battlefield " + std::to_string(f) + " has non-positive value");
    }
  }
  if (config.outcomes.empty()) {
    throw GameError(GameErrc::kDimensionMismatch, "outcomes", "at least one outcome is required");
  }
  for (std::size_t o = 0; o < config.outcomes.size(); ++o) {
    const auto& perm = config.outcomes[o];
    std::vector<bool> seen(n, false);
    bool ok = perm.size() == n;
    for (std::size_t q = 0; ok && q < perm.size(); ++q) {
      const int f = perm[q];
      if (f < 0 || static_cast<std::size_t>(f) >= n || seen[static_cast<std::size_t>(f)]) {
        ok = false;
      } else {
        seen[static_cast<std::size_t>(f)] = true;
      }
    }
    if (!ok) {
      throw GameError(GameErrc::kBadPermutation, "outcomes",
                      "outcome " + std::to_string(o) + " is not a permutation of 0.." +
                          std::to_string(n - 1));
    }
  }
  if (config.outcome_probs.size() != config.outcomes.size()) {
    throw GameError(GameErrc::kDimensionMismatch, "outcome_probs",
                    "expected one probability per outcome");
  }
  double total = 0.0;
  for (double p : config.outcome_probs) {
    if (!(p >= 0.0) || !std::isfinite(p)) {
      throw GameError(GameErrc::kProbsNotNormalized, "outcome_probs",
                      "probabilities must be non-negative");
    }
    total += p;
  }
  if (std::abs(total - 1.0) > kProbSumTolerance) {
    throw GameError(GameErrc::kProbsNotNormalized, "outcome_probs",
                    "probabilities sum to " + std::to_string(total));
  }
  if (!(config.budget1 > 0.0) || !std::isfinite(config.budget1)) {
    throw GameError(GameErrc::kNonPositiveBudget, "budget_p1", "budget must be positive");
  }
  if (!(config.budget2 > 0.0) || !std::isfinite(config.budget2)) {
    throw GameError(GameErrc::kNonPositiveBudget, "budget_p2", "budget must be positive");
  }
  if (!(config.delta > 0.0) || !std::isfinite(config.delta)) {
    throw GameError(GameErrc::kNonPositiveDelta, "delta", "delta must be positive");
  }

  Game g;
  g.values_ = std::move(config.battlefield_values);
  g.outcomes_ = std::move(config.outcomes);
  g.probs_ = std::move(config.outcome_probs);
  g.budget1_ = config.budget1;
  g.budget2_ = config.budget2;
  g.delta_ = config.delta;
  return g;
}

// The three-battlefield instance with hidden slot order used in the
// convergence experiments.
inline GameConfig blotto3_config() {
  GameConfig c;
  c.battlefield_values = {0.7, 0.2, 0.1};
  c.outcomes = {{0, 1, 2}, {2, 0, 1}, {1, 2, 0}};
  c.outcome_probs = {1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0};
  c.budget1 = 10.0;
  c.budget2 = 7.0;
  c.delta = 1e-4;
  return c;
}

inline Game blotto3() { return Game::validate(blotto3_config()); }

// Player 1 pure strategy: one amount per slot.
struct Allocation {
  std::vector<double> amounts;

  std::size_t size() const noexcept { return amounts.size(); }
  double operator[](std::size_t slot) const { return amounts[slot]; }
  double& operator[](std::size_t slot) { return amounts[slot]; }
  bool operator==(const Allocation&) const = default;
};

// Player 2 pure strategy: an outcome-by-slot matrix, row-major.
class ConditionalAllocation {
 public:
  ConditionalAllocation() = default;
  ConditionalAllocation(std::size_t outcomes, std::size_t slots, double fill = 0.0)
      : outcomes_(outcomes), slots_(slots), amounts_(outcomes * slots, fill) {}

  // Same row for every outcome.
  static ConditionalAllocation repeat(std::size_t outcomes, std::span<const double> row) {
    ConditionalAllocation c(outcomes, row.size());
    for (std::size_t o = 0; o < outcomes; ++o) c.set_row(o, row);
    return c;
  }

  std::size_t num_outcomes() const noexcept { return outcomes_; }
  std::size_t num_slots() const noexcept { return slots_; }

  double operator()(std::size_t outcome, std::size_t slot) const {
    return amounts_[outcome * slots_ + slot];
  }
  double& operator()(std::size_t outcome, std::size_t slot) {
    return amounts_[outcome * slots_ + slot];
  }

  std::span<const double> row(std::size_t outcome) const {
    return std::span<const double>(amounts_).subspan(outcome * slots_, slots_);
  }
  void set_row(std::size_t outcome, std::span<const double> values) {
    if (values.size() != slots_) {
      throw GameError(GameErrc::kDimensionMismatch, "", "row length does not match slot count");
    }
    for (std::size_t q = 0; q < slots_; ++q) amounts_[outcome * slots_ + q] = values[q];
  }

  std::span<const double> flat() const noexcept { return amounts_; }
  bool operator==(const ConditionalAllocation&) const = default;

 private:
  std::size_t outcomes_ = 0;
  std::size_t slots_ = 0;
  std::vector<double> amounts_;
};

// Redundant mixed-strategy representation: the uniform mixture over every
// stored pure strategy. Both sides grow in lockstep.
struct History {
  std::vector<Allocation> player1;
  std::vector<ConditionalAllocation> player2;

  std::size_t size() const noexcept { return player1.size(); }
  void push(Allocation a, ConditionalAllocation c) {
    player1.push_back(std::move(a));
    player2.push_back(std::move(c));
  }
};

namespace detail {

inline bool budget_row_ok(std::span<const double> row, double budget) {
  double sum = 0.0;
  for (double x : row) {
    if (!(x >= 0.0)) return false;
    sum += x;
  }
  return std::abs(sum - budget) <= kBudgetSumTolerance;
}

}  // namespace detail

inline bool is_valid(const Game& game, const Allocation& a) {
  return a.size() == game.num_slots() && detail::budget_row_ok(a.amounts, game.budget1());
}

inline bool is_valid(const Game& game, const ConditionalAllocation& c) {
  if (c.num_outcomes() != game.num_outcomes() || c.num_slots() != game.num_slots()) return false;
  for (std::size_t o = 0; o < c.num_outcomes(); ++o) {
    if (!detail::budget_row_ok(c.row(o), game.budget2())) return false;
  }
  return true;
}

inline void check_shape(const Game& game, const Allocation& a) {
  if (a.size() != game.num_slots()) {
    throw GameError(GameErrc::kDimensionMismatch, "", "allocation has wrong slot count");
  }
}

inline void check_shape(const Game& game, const ConditionalAllocation& c) {
  if (c.num_outcomes() != game.num_outcomes() || c.num_slots() != game.num_slots()) {
    throw GameError(GameErrc::kDimensionMismatch, "",
                    "conditional allocation has wrong outcome/slot shape");
  }
}

}  // namespace blotto
