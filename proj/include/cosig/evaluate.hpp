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

#ifndef COSIG_EVALUATE_HPP
#define COSIG_EVALUATE_HPP

#include <vector>

#include <Eigen/Core>

#include "cosig/instance.hpp"

namespace cosig {

/// Largest and second-largest entries of a column, with the index of the
/// largest. Ties resolve to the lowest index; the second value of a
/// single-entry column is 0.
template <typename Derived>
struct TopTwo {
  Index winner = 0;
  typename Derived::Scalar first = 0;
  typename Derived::Scalar second = 0;
};

template <typename Derived>
TopTwo<Derived> top_two(const Eigen::DenseBase<Derived>& column) {
  TopTwo<Derived> out;
  if (column.size() == 0) return out;
  out.first = column(0);
  for (Index i = 1; i < column.size(); ++i) {
    const auto v = column(i);
    if (v > out.first) {
      out.second = out.first;
      out.first = v;
      out.winner = i;
    } else if (i == 1 || v > out.second) {
      out.second = v;
    }
  }
  return out;
}

/// x(j, s): probability that item j is sent to signal s. Rows sum to one.
Eigen::MatrixXd marginals(const Scheme& scheme, const Instance& inst);

/// x(s) = sum_j p_j x(j, s).
Eigen::VectorXd signal_probabilities(const Eigen::MatrixXd& x,
                                     const Instance& inst);

/// Weighted bundle values, B(i, s) = sum_j x(j, s) p_j v_i(j), for one
/// value matrix.
inline Eigen::MatrixXd bundle_values(const Eigen::MatrixXd& values,
                                     const Eigen::VectorXd& p,
                                     const Eigen::MatrixXd& x) {
  return (values * p.asDiagonal()) * x;
}

/// Posterior expected value of `player` given `signal`. Throws
/// ZeroProbabilitySignal when the signal is never sent.
double conditional_value(const Instance& inst, const Scheme& scheme,
                         int player, int signal);

double welfare(const Instance& inst, const Scheme& scheme, const Prior& prior);
double welfare(const Instance& inst, const Scheme& scheme);

/// Expected second-price revenue; zero with fewer than two players.
double revenue(const Instance& inst, const Scheme& scheme, const Prior& prior);
double revenue(const Instance& inst, const Scheme& scheme);

/// Welfare with the winner chosen among all players except `excluded`.
double welfare_excluding(const Instance& inst, const Scheme& scheme,
                         const Prior& prior, int excluded);
double welfare_excluding(const Instance& inst, const Scheme& scheme,
                         int excluded);

/// Same quantities from precomputed marginals; no scheme validation.
double welfare_from_marginals(const Instance& inst, const Eigen::MatrixXd& x,
                              const Prior& prior);
double revenue_from_marginals(const Instance& inst, const Eigen::MatrixXd& x,
                              const Prior& prior);

struct SignalRecord {
  int signal = 0;
  double prob = 0.0;
  int winner = 0;
  double first = 0.0;
  double second = 0.0;
};

/// Per-signal outcome of the second-price auction under known valuations.
/// Signals with x(s) = 0 are omitted.
struct AuctionReport {
  std::vector<SignalRecord> records;
  double welfare = 0.0;
  double revenue = 0.0;
};

AuctionReport auction_report(const Instance& inst, const Scheme& scheme);

}  // namespace cosig

#endif  // COSIG_EVALUATE_HPP
