// Copyright 2026 The Cosig Authors.
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

#ifndef COSIG_INSTANCE_HPP
#define COSIG_INSTANCE_HPP

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Core>

#include "cosig/types.hpp"

namespace cosig {

/// A finite signaling instance: a distribution over items, the players'
/// values, the signal set with its item-signal edge relation, and the budget
/// on the number of distinct signals a scheme may use.
///
/// `values(i, j)` is player i's value for item j. `edges(j, s)` is true when
/// item j may be mapped to signal s. When `k` is smaller than the number of
/// signals, `no_info` must name a signal connected to every item.
struct Instance {
  Eigen::VectorXd p;
  Eigen::MatrixXd values;
  std::vector<std::string> signals;
  EdgeMatrix edges;
  int k = 1;
  std::optional<int> no_info;

  /// Complete edges, labels "s0".."s{S-1}", and signal 0 as no-information.
  static Instance complete(Eigen::VectorXd p, Eigen::MatrixXd values,
                           int num_signals, int k);

  int num_items() const { return static_cast<int>(p.size()); }
  int num_players() const { return static_cast<int>(values.rows()); }
  int num_signals() const { return static_cast<int>(signals.size()); }

  bool allows(int item, int signal) const { return edges(item, signal); }
  bool is_complete() const { return edges.all(); }

  /// Probability-weighted values, v̂_i(j) = p_j v_i(j), as an n x m matrix.
  Eigen::MatrixXd weighted_values() const {
    return values * p.asDiagonal();
  }

  /// Copy of the instance with one player removed.
  Instance without_player(int player) const;

  std::vector<std::string> violations() const;
  void validate() const;
};

/// A finite prior over valuation profiles. Each support entry is an n x m
/// value matrix; a single entry encodes known valuations.
struct Prior {
  std::vector<Eigen::MatrixXd> support;
  std::vector<double> probs;

  static Prior point(const Eigen::MatrixXd& values) {
    return Prior{{values}, {1.0}};
  }

  int size() const { return static_cast<int>(support.size()); }

  Prior without_player(int player) const;

  std::vector<std::string> violations(const Instance& inst) const;
  void validate(const Instance& inst) const;
};

/// Deterministic signaling map: item j is sent to signal `map[j]`.
using SignalMap = std::vector<int>;

/// Item-independent lottery over signals.
struct SignalLottery {
  Eigen::VectorXd probs;
};

struct SchemeComponent {
  double weight = 1.0;
  std::variant<SignalMap, SignalLottery> rule;
};

/// A finite weighted mixture of deterministic maps and constant-signal
/// lotteries. Raw marginal matrices are not representable.
struct Scheme {
  std::vector<SchemeComponent> components;

  static Scheme deterministic(SignalMap map) {
    return Scheme{{SchemeComponent{1.0, std::move(map)}}};
  }

  bool is_deterministic() const;

  /// The single map of a deterministic scheme; throws ValidationError
  /// otherwise.
  const SignalMap& map() const;

  /// Sorted distinct signals used with positive probability.
  std::vector<int> signals_used() const;

  /// Edge, weight and shape checks; the distinct-signal budget is checked
  /// only when `check_budget` is set.
  std::vector<std::string> violations(const Instance& inst,
                                      bool check_budget = true) const;
  void validate(const Instance& inst) const;
};

}  // namespace cosig

#endif  // COSIG_INSTANCE_HPP
