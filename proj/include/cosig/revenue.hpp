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

#ifndef COSIG_REVENUE_HPP
#define COSIG_REVENUE_HPP

// Constant-factor revenue for communication-constrained signaling (complete
// edges, known valuations). Two candidate schemes are built and the one with
// more second-price revenue is kept:
//
//   g  merges the welfare solution's signals until winners are distinct,
//      then merges them in pairs by decreasing contribution, so each merged
//      signal has two strong bidders;
//   x  mixes a welfare solution h for everyone except the bidder i* with
//      the highest prior value with a constant lottery y over h's signals,
//      so that i* competes on every signal.

#include <numbers>
#include <optional>

#include <Eigen/Core>

#include "cosig/instance.hpp"
#include "cosig/winner_mapping.hpp"

namespace cosig {

/// β = (e - 1) / (2e - 1).
inline constexpr double kRevenueBeta =
    (std::numbers::e - 1.0) / (2.0 * std::numbers::e - 1.0);

/// Guaranteed ratio 2e (2e - 1) / (e - 1)².
inline constexpr double kRevenueRatio =
    2.0 * std::numbers::e * (2.0 * std::numbers::e - 1.0) /
    ((std::numbers::e - 1.0) * (std::numbers::e - 1.0));

/// Sends the items of signals s and t to min(s, t). Both must be used by the
/// deterministic scheme.
Scheme merge_signals(const Instance& inst, const Scheme& scheme, int s,
                     int t);

/// Scheme g. Requires complete edges.
Scheme procedure1(const Instance& inst, const WelfareOptions& options = {});

struct Procedure2Result {
  Scheme scheme;  // x
  Scheme h;
  SignalLottery lottery;
  int istar = 0;
  double vstar = 0.0;
  double alpha = 0.0;
  double welfare_h = 0.0;
  Eigen::VectorXd vs;  // per signal of h; 0 where unused
  double weight_h = 0.5;
};

/// Scheme x. Requires complete edges and n >= 2; throws Degenerate when the
/// players other than i* value every item at zero. With `optimized_mix`, h
/// gets weight α / (1 + α) instead of 1/2.
Procedure2Result procedure2(const Instance& inst, bool optimized_mix = false,
                            const WelfareOptions& options = {});

struct RevenuePlan {
  Scheme scheme_g;
  std::optional<Procedure2Result> x;
  bool chose_x = false;
  double revenue_g = 0.0;
  double revenue_x = 0.0;

  const Scheme& chosen() const { return chose_x ? x->scheme : scheme_g; }
  double revenue() const { return chose_x ? revenue_x : revenue_g; }
};

/// Runs both procedures and keeps the strictly better revenue, g on ties.
/// With one player, or when procedure 2 is degenerate, only g is built.
RevenuePlan solve_revenue(const Instance& inst, bool optimized_mix = false,
                          const WelfareOptions& options = {});

}  // namespace cosig

#endif  // COSIG_REVENUE_HPP
