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

#ifndef COSIG_STRUCTURAL_HPP
#define COSIG_STRUCTURAL_HPP

#include <Eigen/Core>

#include "cosig/instance.hpp"

namespace cosig {

/// Welfare contribution of each signal of a deterministic scheme,
/// sum_l q_l max_i sum_{j in f^-1(s)} v̂^l_i(j). Unused signals get 0.
Eigen::VectorXd signal_contributions(const Instance& inst,
                                     const SignalMap& map,
                                     const Prior& prior);

/// Unconstrained-optimal scheme on at most min(m, n) signals. With n <= m
/// each item goes to the signal of its highest-value player (signals
/// numbered in first-use order); otherwise the item itself is announced.
/// Requires complete edges and enough signals within the budget.
Scheme full_welfare_scheme(const Instance& inst);

/// Restricts a deterministic scheme to its k highest-contribution signals.
/// Orphaned items join, in item order, the kept signal with the largest
/// marginal welfare gain (lowest signal on ties). Returns the scheme
/// unchanged when it already uses at most k signals.
Scheme truncate_scheme(const Instance& inst, const Scheme& scheme, int k,
                       const Prior& prior);
Scheme truncate_scheme(const Instance& inst, const Scheme& scheme, int k);

}  // namespace cosig

#endif  // COSIG_STRUCTURAL_HPP
