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

// Exact best responses against uniform mixtures of stored pure strategies.
//
// Each responder's per-slot payoff is a step function of the amount it
// places there: it only changes where the amount crosses an opponent
// threshold. Restricting every slot to the finite set of amounts at which a
// new piece begins turns the indicator-constrained MILP into a
// multiple-choice knapsack (pick one amount per slot, total within budget),
// which `solve_mckp` solves exactly by depth-first branch-and-bound.
//
// Two objectives are supported. `ResponseMode::kWins` maximizes the summed
// weight of won thresholds only, exactly as the indicator MILP does; losses
// and sub-delta gaps are not distinguished. `ResponseMode::kUtility` adds a
// candidate inside every constant piece of the true payoff and maximizes the
// true expected utility.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <future>
#include <numeric>
#include <span>
#include <stdexcept>
#include <vector>

#include "blotto/game.hpp"
#include "blotto/payoff.hpp"

namespace blotto {

enum class ResponseMode { kWins, kUtility };

enum class Objective { kWinWeight, kTrueValue };

constexpr Objective objective_for(ResponseMode mode) noexcept {
  return mode == ResponseMode::kWins ? Objective::kWinWeight : Objective::kTrueValue;
}

// Thresholds closer than this are treated as one breakpoint; the cluster is
// represented by its largest member so no merged threshold is claimed as won
// without actually being met.
inline constexpr double kMergeTolerance = 1e-12;

// Relative distance past a breakpoint at which an open constant piece is
// sampled in utility mode.
inline constexpr double kPieceOffset = 1e-9;

struct Candidate {
  double amount = 0.0;
  // Averaged weight of the opponent thresholds this amount beats.
  double win_weight = 0.0;
  // Averaged true payoff of this amount on the slot.
  double true_value = 0.0;

  double value(Objective objective) const noexcept {
    return objective == Objective::kWinWeight ? win_weight : true_value;
  }
};

struct SlotCandidateList {
  std::size_t slot = 0;
  std::vector<Candidate> candidates;  // strictly increasing amounts, first is 0
};

namespace detail {

struct WeightedPoint {
  double key;
  double weight;
};

// Sorted keys with running weight sums, for "how much weight has key <= a"
// and "how much weight has key >= a" queries using exact comparisons.
class ThresholdIndex {
 public:
  explicit ThresholdIndex(std::vector<WeightedPoint> points) {
    std::sort(points.begin(), points.end(), [](const WeightedPoint& a, const WeightedPoint& b) {
      return a.key < b.key || (a.key == b.key && a.weight < b.weight);
    });
    keys_.reserve(points.size());
    prefix_.assign(points.size() + 1, 0.0);
    suffix_.assign(points.size() + 1, 0.0);
    for (std::size_t i = 0; i < points.size(); ++i) {
      keys_.push_back(points[i].key);
      prefix_[i + 1] = prefix_[i] + points[i].weight;
    }
    for (std::size_t i = points.size(); i-- > 0;) {
      suffix_[i] = suffix_[i + 1] + points[i].weight;
    }
  }

  std::span<const double> keys() const noexcept { return keys_; }

  // Total weight of keys k with k <= a.
  double weight_at_most(double a) const {
    const auto it = std::upper_bound(keys_.begin(), keys_.end(), a);
    return prefix_[static_cast<std::size_t>(it - keys_.begin())];
  }

  // Total weight of keys k with k >= a.
  double weight_at_least(double a) const {
    const auto it = std::lower_bound(keys_.begin(), keys_.end(), a);
    return suffix_[static_cast<std::size_t>(it - keys_.begin())];
  }

 private:
  std::vector<double> keys_;
  std::vector<double> prefix_;
  std::vector<double> suffix_;
};

// Sorts, drops amounts outside [0, budget] and merges near-duplicates. Zero
// is always kept as the first entry.
inline std::vector<double> normalize_amounts(std::vector<double> amounts, double budget) {
  amounts.push_back(0.0);
  std::erase_if(amounts, [budget](double a) { return !(a >= 0.0) || a > budget; });
  std::sort(amounts.begin(), amounts.end());
  std::vector<double> out;
  out.reserve(amounts.size());
  out.push_back(0.0);
  std::size_t i = 0;
  while (i < amounts.size() && amounts[i] == 0.0) ++i;
  while (i < amounts.size()) {
    const double start = amounts[i];
    double last = start;
    while (i < amounts.size() && amounts[i] - start <= kMergeTolerance) last = amounts[i++];
    if (last - out.back() <= kMergeTolerance && out.size() > 1) {
      out.back() = last;
    } else {
      out.push_back(last);
    }
  }
  return out;
}

// One point inside each open gap between consecutive distinct `points`
// (sorted in place), placed just past the left edge so the piece is reached
// at nearly its cheapest cost.
inline void append_gap_points(std::vector<double>& points, std::vector<double>& out) {
  std::sort(points.begin(), points.end());
  for (std::size_t i = 1; i < points.size(); ++i) {
    const double gap = points[i] - points[i - 1];
    if (gap > kMergeTolerance) {
      const double offset = kPieceOffset * std::max(1.0, points[i - 1]);
      out.push_back(points[i - 1] + std::min(0.5 * gap, offset));
    }
  }
}

}  // namespace detail

// Player 1's breakpoint set on `slot` against the stored player 2 strategies.
// Player 1 wins a threshold Y once its amount reaches Y + delta and loses it
// while its amount stays <= Y.
inline SlotCandidateList candidate_set1(const Game& game,
                                        std::span<const ConditionalAllocation> history2,
                                        std::size_t slot, ResponseMode mode) {
  if (history2.empty()) throw std::invalid_argument("candidate_set1: empty history");
  if (slot >= game.num_slots()) throw std::out_of_range("candidate_set1: bad slot");
  const double delta = game.delta();
  const double budget = game.budget1();
  const std::size_t n = history2.size() * game.num_outcomes();

  std::vector<detail::WeightedPoint> win_points;
  std::vector<detail::WeightedPoint> lose_points;
  win_points.reserve(n);
  lose_points.reserve(n);
  for (const ConditionalAllocation& s2 : history2) {
    check_shape(game, s2);
    for (std::size_t o = 0; o < game.num_outcomes(); ++o) {
      const double w = game.prob(o) * game.slot_value(o, slot);
      const double y = s2(o, slot);
      win_points.push_back({y + delta, w});
      lose_points.push_back({y, w});
    }
  }
  const detail::ThresholdIndex wins(std::move(win_points));
  const detail::ThresholdIndex losses(std::move(lose_points));

  std::vector<double> amounts(wins.keys().begin(), wins.keys().end());
  if (mode == ResponseMode::kUtility) {
    std::vector<double> breaks(wins.keys().begin(), wins.keys().end());
    breaks.insert(breaks.end(), losses.keys().begin(), losses.keys().end());
    breaks.push_back(0.0);
    detail::append_gap_points(breaks, amounts);
    amounts.push_back(budget);
  }
  amounts = detail::normalize_amounts(std::move(amounts), budget);

  const double inv = 1.0 / static_cast<double>(history2.size());
  SlotCandidateList out;
  out.slot = slot;
  out.candidates.reserve(amounts.size());
  for (double a : amounts) {
    const double won = wins.weight_at_most(a);
    const double lost = losses.weight_at_least(a);
    out.candidates.push_back({a, won * inv, (won - lost) * inv});
  }
  return out;
}

// Player 2's breakpoint set on `slot` under a known `outcome`. Player 2 wins
// a threshold X as soon as its amount reaches X (ties go to player 2) and
// loses it while X >= amount + delta.
inline SlotCandidateList candidate_set2(const Game& game, std::span<const Allocation> history1,
                                        std::size_t outcome, std::size_t slot,
                                        ResponseMode mode) {
  if (history1.empty()) throw std::invalid_argument("candidate_set2: empty history");
  if (outcome >= game.num_outcomes()) throw std::out_of_range("candidate_set2: bad outcome");
  if (slot >= game.num_slots()) throw std::out_of_range("candidate_set2: bad slot");
  const double delta = game.delta();
  const double budget = game.budget2();
  const double w = game.slot_value(outcome, slot);

  std::vector<detail::WeightedPoint> points;
  points.reserve(history1.size());
  for (const Allocation& s1 : history1) {
    check_shape(game, s1);
    points.push_back({s1[slot], w});
  }
  const detail::ThresholdIndex thresholds(std::move(points));

  std::vector<double> amounts(thresholds.keys().begin(), thresholds.keys().end());
  if (mode == ResponseMode::kUtility) {
    std::vector<double> breaks;
    breaks.reserve(2 * thresholds.keys().size() + 1);
    for (double x : thresholds.keys()) {
      breaks.push_back(x);
      breaks.push_back(std::max(x - delta, 0.0));
    }
    breaks.push_back(0.0);
    detail::append_gap_points(breaks, amounts);
    amounts.push_back(budget);
  }
  amounts = detail::normalize_amounts(std::move(amounts), budget);

  const double inv = 1.0 / static_cast<double>(history1.size());
  SlotCandidateList out;
  out.slot = slot;
  out.candidates.reserve(amounts.size());
  for (double a : amounts) {
    const double won = thresholds.weight_at_most(a);
    const double lost = thresholds.weight_at_least(a + delta);
    out.candidates.push_back({a, won * inv, (won - lost) * inv});
  }
  return out;
}

// Keeps only candidates whose objective strictly exceeds every cheaper one.
// Returns indices into `list.candidates`.
inline std::vector<std::size_t> pareto_frontier(const SlotCandidateList& list, double budget,
                                                Objective objective) {
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < list.candidates.size(); ++i) {
    const Candidate& c = list.candidates[i];
    if (c.amount > budget) break;
    if (keep.empty() || c.value(objective) > list.candidates[keep.back()].value(objective)) {
      keep.push_back(i);
    }
  }
  return keep;
}

struct MckpSolution {
  std::vector<std::size_t> choice;  // index into each slot's candidate list
  std::vector<double> amounts;
  double objective = 0.0;
};

namespace detail {

// Feasibility and objective of a selection are always evaluated by summing
// over slots in index order, so every search strategy agrees bit for bit.
inline double selection_cost(std::span<const SlotCandidateList> lists,
                             std::span<const std::size_t> choice) {
  double s = 0.0;
  for (std::size_t k = 0; k < lists.size(); ++k) s += lists[k].candidates[choice[k]].amount;
  return s;
}

inline double selection_value(std::span<const SlotCandidateList> lists,
                              std::span<const std::size_t> choice, Objective objective) {
  double s = 0.0;
  for (std::size_t k = 0; k < lists.size(); ++k) {
    s += lists[k].candidates[choice[k]].value(objective);
  }
  return s;
}

// True when (value, choice) should replace the incumbent: strictly better
// objective, or equal objective with a lexicographically smaller choice.
inline bool improves(double value, std::span<const std::size_t> choice, double best_value,
                     std::span<const std::size_t> best_choice) {
  if (value != best_value) return value > best_value;
  return std::lexicographical_compare(choice.begin(), choice.end(), best_choice.begin(),
                                      best_choice.end());
}

inline void check_mckp_input(std::span<const SlotCandidateList> lists, double budget) {
  if (lists.empty()) throw std::invalid_argument("solve_mckp: no slots");
  if (!(budget >= 0.0)) throw std::invalid_argument("solve_mckp: negative budget");
  for (const SlotCandidateList& l : lists) {
    if (l.candidates.empty() || l.candidates.front().amount != 0.0) {
      throw std::invalid_argument("solve_mckp: every slot needs a zero-amount candidate");
    }
    for (std::size_t i = 1; i < l.candidates.size(); ++i) {
      if (!(l.candidates[i].amount > l.candidates[i - 1].amount)) {
        throw std::invalid_argument("solve_mckp: candidate amounts must be strictly increasing");
      }
    }
  }
}

// Piecewise-linear concave majorant of the summed per-slot objectives of a
// set of slots, as a function of the budget left for them.
class RelaxationBound {
 public:
  RelaxationBound() = default;

  struct Segment {
    double width;
    double gain;
  };

  RelaxationBound(double base, std::vector<Segment> segments) : base_(base) {
    std::stable_sort(segments.begin(), segments.end(), [](const Segment& a, const Segment& b) {
      return a.gain * b.width > b.gain * a.width;
    });
    cum_amount_.reserve(segments.size() + 1);
    cum_value_.reserve(segments.size() + 1);
    cum_amount_.push_back(0.0);
    cum_value_.push_back(base_);
    for (const Segment& s : segments) {
      cum_amount_.push_back(cum_amount_.back() + s.width);
      cum_value_.push_back(cum_value_.back() + s.gain);
    }
  }

  double operator()(double budget) const {
    if (cum_amount_.empty()) return base_;
    if (budget <= 0.0) return cum_value_.front();
    if (budget >= cum_amount_.back()) return cum_value_.back();
    const auto it = std::upper_bound(cum_amount_.begin(), cum_amount_.end(), budget);
    const std::size_t hi = static_cast<std::size_t>(it - cum_amount_.begin());
    const std::size_t lo = hi - 1;
    const double frac = (budget - cum_amount_[lo]) / (cum_amount_[hi] - cum_amount_[lo]);
    return cum_value_[lo] + frac * (cum_value_[hi] - cum_value_[lo]);
  }

 private:
  double base_ = 0.0;
  std::vector<double> cum_amount_;
  std::vector<double> cum_value_;
};

// Upper concave hull segments of a frontier (amounts and values increasing).
inline std::vector<RelaxationBound::Segment> hull_segments(const SlotCandidateList& list,
                                                           std::span<const std::size_t> frontier,
                                                           Objective objective) {
  std::vector<std::size_t> hull;
  for (std::size_t idx : frontier) {
    const Candidate& c = list.candidates[idx];
    while (hull.size() >= 2) {
      const Candidate& a = list.candidates[hull[hull.size() - 2]];
      const Candidate& b = list.candidates[hull.back()];
      // Drop b when it lies on or below the chord from a to c.
      const double lhs = (b.value(objective) - a.value(objective)) * (c.amount - a.amount);
      const double rhs = (c.value(objective) - a.value(objective)) * (b.amount - a.amount);
      if (lhs <= rhs) {
        hull.pop_back();
      } else {
        break;
      }
    }
    hull.push_back(idx);
  }
  std::vector<RelaxationBound::Segment> segs;
  for (std::size_t i = 1; i < hull.size(); ++i) {
    const Candidate& a = list.candidates[hull[i - 1]];
    const Candidate& b = list.candidates[hull[i]];
    segs.push_back({b.amount - a.amount, b.value(objective) - a.value(objective)});
  }
  return segs;
}

class MckpSearch {
 public:
  MckpSearch(std::span<const SlotCandidateList> lists, double budget, Objective objective)
      : lists_(lists), budget_(budget), objective_(objective) {
    const std::size_t n = lists.size();
    frontier_.resize(n);
    std::vector<double> spread(n, 0.0);
    for (std::size_t k = 0; k < n; ++k) {
      frontier_[k] = pareto_frontier(lists[k], budget, objective);
      const Candidate& lo = lists[k].candidates[frontier_[k].front()];
      const Candidate& hi = lists[k].candidates[frontier_[k].back()];
      spread[k] = hi.value(objective) - lo.value(objective);
    }
    order_.resize(n);
    std::iota(order_.begin(), order_.end(), std::size_t{0});
    std::stable_sort(order_.begin(), order_.end(),
                     [&](std::size_t a, std::size_t b) { return spread[a] > spread[b]; });

    // suffix_bound_[d] bounds the slots order_[d..n-1].
    suffix_bound_.resize(n + 1);
    double base = 0.0;
    std::vector<RelaxationBound::Segment> segs;
    for (std::size_t d = n; d-- > 0;) {
      const std::size_t k = order_[d];
      base += lists[k].candidates[frontier_[k].front()].value(objective);
      const auto hs = hull_segments(lists[k], frontier_[k], objective);
      segs.insert(segs.end(), hs.begin(), hs.end());
      suffix_bound_[d] = RelaxationBound(base, segs);
    }

    choice_.assign(n, 0);
    best_choice_.assign(n, 0);
    best_value_ = selection_value(lists_, best_choice_, objective_);
  }

  MckpSolution run() {
    descend(0, 0.0, budget_);
    MckpSolution sol;
    sol.choice = best_choice_;
    sol.amounts.reserve(lists_.size());
    for (std::size_t k = 0; k < lists_.size(); ++k) {
      sol.amounts.push_back(lists_[k].candidates[best_choice_[k]].amount);
    }
    sol.objective = best_value_;
    return sol;
  }

 private:
  double slack() const noexcept { return 1e-9 * (1.0 + std::abs(best_value_)); }

  const Candidate& at(std::size_t slot, std::size_t frontier_pos) const {
    return lists_[slot].candidates[frontier_[slot][frontier_pos]];
  }

  void descend(std::size_t depth, double partial, double remaining) {
    const std::size_t slot = order_[depth];
    const auto& front = frontier_[slot];
    if (depth + 1 == order_.size()) {
      settle_last(slot);
      return;
    }
    const RelaxationBound& rest = suffix_bound_[depth + 1];
    const double rest_max = rest(remaining);
    for (std::size_t pos = front.size(); pos-- > 0;) {
      const Candidate& c = at(slot, pos);
      const double v = c.value(objective_);
      // Cheaper candidates have smaller objective, so none of them can do
      // better than this once the optimistic bound falls short.
      if (partial + v + rest_max + slack() < best_value_) break;
      if (c.amount > remaining) continue;
      const double left = remaining - c.amount;
      if (partial + v + rest(left) + slack() < best_value_) continue;
      choice_[slot] = front[pos];
      descend(depth + 1, partial + v, left);
    }
    choice_[slot] = front.front();
  }

  // The last slot takes the most valuable candidate that still fits; among
  // equal-valued selections the smallest index wins.
  void settle_last(std::size_t slot) {
    const auto& front = frontier_[slot];
    std::size_t lo = 0;
    std::size_t hi = front.size();
    while (hi - lo > 1) {
      const std::size_t mid = lo + (hi - lo) / 2;
      choice_[slot] = front[mid];
      if (selection_cost(lists_, choice_) <= budget_) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    choice_[slot] = front[lo];
    if (selection_cost(lists_, choice_) > budget_) {
      choice_[slot] = front.front();
      return;
    }
    double value = selection_value(lists_, choice_, objective_);
    while (lo > 0) {
      choice_[slot] = front[lo - 1];
      const double v = selection_value(lists_, choice_, objective_);
      if (v != value) break;
      --lo;
    }
    choice_[slot] = front[lo];
    if (improves(value, choice_, best_value_, best_choice_)) {
      best_value_ = value;
      best_choice_ = choice_;
    }
    choice_[slot] = front.front();
  }

  std::span<const SlotCandidateList> lists_;
  double budget_;
  Objective objective_;
  std::vector<std::vector<std::size_t>> frontier_;
  std::vector<std::size_t> order_;
  std::vector<RelaxationBound> suffix_bound_;
  std::vector<std::size_t> choice_;
  std::vector<std::size_t> best_choice_;
  double best_value_ = 0.0;
};

}  // namespace detail

// Chooses one candidate per slot maximizing the summed objective subject to
// the summed amounts staying within `budget`. Exact; ties resolve to the
// lexicographically smallest vector of candidate indices.
inline MckpSolution solve_mckp(std::span<const SlotCandidateList> lists, double budget,
                               Objective objective) {
  detail::check_mckp_input(lists, budget);
  return detail::MckpSearch(lists, budget, objective).run();
}

struct BestResponse1 {
  Allocation strategy;
  double objective = 0.0;     // the solved objective (win weight or true value)
  double win_weight = 0.0;    // summed win weight of the selected amounts
  double true_avg_utility = 0.0;
};

struct BestResponse2Row {
  std::vector<double> strategy;  // one row of player 2's allocation
  double objective = 0.0;
  double win_weight = 0.0;
  double true_avg_utility = 0.0;  // player 2's average payoff under this outcome
};

struct BestResponse2 {
  ConditionalAllocation strategy;
  std::vector<BestResponse2Row> rows;
  double true_avg_utility = 0.0;  // probability-weighted over outcomes
};

namespace detail {

// Adds whatever budget the knapsack left unused to slot 0. Payoffs are
// nondecreasing in the responder's own amount, so nothing already won is lost.
inline std::vector<double> spend_leftover(std::vector<double> amounts, double budget,
                                          std::size_t slot) {
  double used = 0.0;
  for (double a : amounts) used += a;
  amounts[slot % amounts.size()] += budget - used;
  return amounts;
}

inline double win_weight_of(std::span<const SlotCandidateList> lists,
                            std::span<const std::size_t> choice) {
  return selection_value(lists, choice, Objective::kWinWeight);
}

}  // namespace detail

inline double average_utility1(const Game& game, const Allocation& s1,
                               std::span<const ConditionalAllocation> history2) {
  double sum = 0.0;
  for (const ConditionalAllocation& s2 : history2) sum += utility1(game, s1, s2);
  return sum / static_cast<double>(history2.size());
}

inline double average_outcome_utility2(const Game& game, std::span<const Allocation> history1,
                                       std::span<const double> row, std::size_t outcome) {
  const double delta = game.delta();
  double sum = 0.0;
  for (const Allocation& s1 : history1) {
    for (std::size_t q = 0; q < game.num_slots(); ++q) {
      sum += slot_payoff2(s1[q], row[q], game.slot_value(outcome, q), delta);
    }
  }
  return sum / static_cast<double>(history1.size());
}

inline BestResponse1 best_response1(const Game& game,
                                    std::span<const ConditionalAllocation> history2,
                                    ResponseMode mode, std::size_t leftover_slot = 0) {
  if (history2.empty()) throw std::invalid_argument("best_response1: empty history");
  std::vector<SlotCandidateList> lists;
  lists.reserve(game.num_slots());
  for (std::size_t q = 0; q < game.num_slots(); ++q) {
    lists.push_back(candidate_set1(game, history2, q, mode));
  }
  const MckpSolution sol = solve_mckp(lists, game.budget1(), objective_for(mode));
  BestResponse1 out;
  out.strategy.amounts = detail::spend_leftover(sol.amounts, game.budget1(), leftover_slot);
  out.objective = sol.objective;
  out.win_weight = detail::win_weight_of(lists, sol.choice);
  out.true_avg_utility = average_utility1(game, out.strategy, history2);
  return out;
}

inline BestResponse2Row best_response2(const Game& game, std::span<const Allocation> history1,
                                       std::size_t outcome, ResponseMode mode,
                                       std::size_t leftover_slot = 0) {
  if (history1.empty()) throw std::invalid_argument("best_response2: empty history");
  if (outcome >= game.num_outcomes()) throw std::out_of_range("best_response2: bad outcome");
  std::vector<SlotCandidateList> lists;
  lists.reserve(game.num_slots());
  for (std::size_t q = 0; q < game.num_slots(); ++q) {
    lists.push_back(candidate_set2(game, history1, outcome, q, mode));
  }
  const MckpSolution sol = solve_mckp(lists, game.budget2(), objective_for(mode));
  BestResponse2Row out;
  out.strategy = detail::spend_leftover(sol.amounts, game.budget2(), leftover_slot);
  out.objective = sol.objective;
  out.win_weight = detail::win_weight_of(lists, sol.choice);
  out.true_avg_utility = average_outcome_utility2(game, history1, out.strategy, outcome);
  return out;
}

// Player 2 observes the outcome, so its response is M independent problems.
// `leftover_slots[o]` picks where outcome o's unused budget goes (slot 0 when
// empty). With `parallel` the problems run concurrently; results are merged
// in outcome order.
inline BestResponse2 best_response2(const Game& game, std::span<const Allocation> history1,
                                    ResponseMode mode,
                                    std::span<const std::size_t> leftover_slots = {},
                                    bool parallel = false) {
  const std::size_t m = game.num_outcomes();
  if (!leftover_slots.empty() && leftover_slots.size() != m) {
    throw std::invalid_argument("best_response2: need one leftover slot per outcome");
  }
  auto slot_for = [&](std::size_t o) { return leftover_slots.empty() ? 0 : leftover_slots[o]; };
  BestResponse2 out;
  out.rows.resize(m);
  if (parallel && m > 1) {
    std::vector<std::future<BestResponse2Row>> jobs;
    jobs.reserve(m);
    for (std::size_t o = 0; o < m; ++o) {
      jobs.push_back(std::async(std::launch::async, [&game, history1, o, mode, s = slot_for(o)] {
        return best_response2(game, history1, o, mode, s);
      }));
    }
    for (std::size_t o = 0; o < m; ++o) out.rows[o] = jobs[o].get();
  } else {
    for (std::size_t o = 0; o < m; ++o) {
      out.rows[o] = best_response2(game, history1, o, mode, slot_for(o));
    }
  }
  out.strategy = ConditionalAllocation(m, game.num_slots());
  for (std::size_t o = 0; o < m; ++o) {
    out.strategy.set_row(o, out.rows[o].strategy);
    out.true_avg_utility += game.prob(o) * out.rows[o].true_avg_utility;
  }
  return out;
}

}  // namespace blotto
