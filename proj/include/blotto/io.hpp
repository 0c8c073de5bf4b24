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

// File formats:
//
//   Game config (JSON): battlefield_values, outcomes (0-based permutations),
//   outcome_probs, budget_p1, budget_p2, delta.
//
//   Trace (CSV): header `iteration,elapsed_seconds,eps1,eps2,eps,v1`, one row
//   per report, floats written with 17 significant digits.
//
//   Strategies (JSON): {"game": <config>, "player1": T x |F|,
//   "player2": T x M x |F|}.

#pragma once

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "blotto/fictitious_play.hpp"
#include "blotto/game.hpp"

namespace blotto {

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

template <typename T>
T required_field(const nlohmann::json& j, const char* name) {
  if (!j.contains(name)) {
    throw GameError(GameErrc::kMissingField, name, std::string("missing field '") + name + "'");
  }
  try {
    return j.at(name).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw GameError(GameErrc::kParse, name,
                    std::string("field '") + name + "' has the wrong type: " + e.what());
  }
}

inline nlohmann::json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "'");
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw GameError(GameErrc::kParse, "", "'" + path + "': " + e.what());
  }
}

inline void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << text;
  if (!out) throw IoError("failed writing '" + path + "'");
}

}  // namespace detail

inline GameConfig config_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw GameError(GameErrc::kParse, "", "game config must be a JSON object");
  GameConfig c;
  c.battlefield_values = detail::required_field<std::vector<double>>(j, "battlefield_values");
  c.outcomes = detail::required_field<std::vector<std::vector<int>>>(j, "outcomes");
  c.outcome_probs = detail::required_field<std::vector<double>>(j, "outcome_probs");
  c.budget1 = detail::required_field<double>(j, "budget_p1");
  c.budget2 = detail::required_field<double>(j, "budget_p2");
  c.delta = detail::required_field<double>(j, "delta");
  return c;
}

inline nlohmann::json config_to_json(const GameConfig& c) {
  return nlohmann::json{{"battlefield_values", c.battlefield_values},
                        {"outcomes", c.outcomes},
                        {"outcome_probs", c.outcome_probs},
                        {"budget_p1", c.budget1},
                        {"budget_p2", c.budget2},
                        {"delta", c.delta}};
}

inline Game parse_game(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw GameError(GameErrc::kParse, "", e.what());
  }
  return Game::validate(config_from_json(j));
}

inline Game load_config(const std::string& path) {
  return Game::validate(config_from_json(detail::read_json_file(path)));
}

// 17 significant digits round-trips every double.
inline std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

inline constexpr const char* kTraceHeader = "iteration,elapsed_seconds,eps1,eps2,eps,v1";

inline std::string trace_row(const TraceRecord& r) {
  std::string s = std::to_string(r.iteration);
  for (double x : {r.elapsed_seconds, r.eps1, r.eps2, r.eps, r.v_star1}) {
    s += ',';
    s += format_double(x);
  }
  return s;
}

// Writes the CSV trace, flushing after every row so an interrupted run keeps
// everything reported so far.
class TraceWriter {
 public:
  explicit TraceWriter(const std::string& path) : out_(path) {
    if (!out_) throw IoError("cannot open '" + path + "' for writing");
    out_ << kTraceHeader << '\n' << std::flush;
  }

  void operator()(const TraceRecord& r) {
    out_ << trace_row(r) << '\n' << std::flush;
    if (!out_) throw IoError("failed writing trace row");
  }

 private:
  std::ofstream out_;
};

inline std::vector<TraceRecord> read_trace(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "'");
  std::string line;
  if (!std::getline(in, line) || line != kTraceHeader) {
    throw IoError("'" + path + "' does not start with the trace header");
  }
  std::vector<TraceRecord> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ss(line);
    std::string cell;
    std::vector<std::string> cells;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (cells.size() != 6) throw IoError("malformed trace row: " + line);
    TraceRecord r;
    try {
      r.iteration = std::stoull(cells[0]);
      r.elapsed_seconds = std::stod(cells[1]);
      r.eps1 = std::stod(cells[2]);
      r.eps2 = std::stod(cells[3]);
      r.eps = std::stod(cells[4]);
      r.v_star1 = std::stod(cells[5]);
    } catch (const std::exception&) {
      throw IoError("malformed trace row: " + line);
    }
    rows.push_back(r);
  }
  return rows;
}

struct StrategyDump {
  GameConfig game;
  History history;
};

inline nlohmann::json history_to_json(const Game& game, const History& history) {
  nlohmann::json p1 = nlohmann::json::array();
  for (const Allocation& a : history.player1) p1.push_back(a.amounts);
  nlohmann::json p2 = nlohmann::json::array();
  for (const ConditionalAllocation& c : history.player2) {
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t o = 0; o < c.num_outcomes(); ++o) {
      const auto row = c.row(o);
      rows.push_back(std::vector<double>(row.begin(), row.end()));
    }
    p2.push_back(std::move(rows));
  }
  return nlohmann::json{{"game", config_to_json(game.to_config())},
                        {"player1", std::move(p1)},
                        {"player2", std::move(p2)}};
}

inline void dump_strategies(const Game& game, const History& history, const std::string& path) {
  detail::write_text_file(path, history_to_json(game, history).dump(1) + "\n");
}

inline StrategyDump load_strategies(const std::string& path) {
  const nlohmann::json j = detail::read_json_file(path);
  StrategyDump d;
  d.game = config_from_json(j.at("game"));
  try {
    for (const auto& row : j.at("player1")) {
      d.history.player1.push_back(Allocation{row.get<std::vector<double>>()});
    }
    for (const auto& entry : j.at("player2")) {
      const auto rows = entry.get<std::vector<std::vector<double>>>();
      const std::size_t slots = rows.empty() ? 0 : rows.front().size();
      ConditionalAllocation c(rows.size(), slots);
      for (std::size_t o = 0; o < rows.size(); ++o) c.set_row(o, rows[o]);
      d.history.player2.push_back(std::move(c));
    }
  } catch (const nlohmann::json::exception& e) {
    throw IoError("'" + path + "': malformed strategy arrays: " + e.what());
  }
  if (d.history.player1.size() != d.history.player2.size()) {
    throw IoError("'" + path + "': player histories differ in length");
  }
  return d;
}

}  // namespace blotto
