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

#include "cosig/structural.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "cosig/error.hpp"

namespace cosig {
namespace {

void CheckMap(const Instance& inst, const SignalMap& map) {
  // Truncation inputs may exceed the instance budget.
  auto v = Scheme::deterministic(map).violations(inst, false);
  if (!v.empty()) throw ValidationError(std::move(v));
}

}  // namespace

Eigen::VectorXd signal_contributions(const Instance& inst,
                                     const SignalMap& map,
                                     const Prior& prior) {
  CheckMap(inst, map);
  prior.validate(inst);
  Eigen::VectorXd out = Eigen::VectorXd::Zero(inst.num_signals());
  for (int l = 0; l < prior.size(); ++l) {
    const Eigen::MatrixXd vhat = prior.support[l] * inst.p.asDiagonal();
    Eigen::MatrixXd bundles =
        Eigen::MatrixXd::Zero(inst.num_players(), inst.num_signals());
    for (int j = 0; j < inst.num_items(); ++j) {
      bundles.col(map[j]) += vhat.col(j);
    }
    out += prior.probs[l] * bundles.colwise().maxCoeff().transpose();
  }
  return out;
}

Scheme full_welfare_scheme(const Instance& inst) {
  inst.validate();
  if (!inst.is_complete()) {
    throw UnsupportedConstraint(
        "full-welfare construction requires complete edges");
  }
  const int m = inst.num_items();
  const int n = inst.num_players();
  SignalMap map(m);
  int used = 0;
  if (n <= m) {
    std::vector<int> label_of_player(n, -1);
    for (int j = 0; j < m; ++j) {
      Index winner;
      inst.values.col(j).maxCoeff(&winner);
      if (label_of_player[winner] < 0) label_of_player[winner] = used++;
      map[j] = label_of_player[winner];
    }
  } else {
    std::iota(map.begin(), map.end(), 0);
    used = m;
  }
  if (used > inst.num_signals() || used > inst.k) {
    throw UnsupportedConstraint(
        "full-welfare construction needs " + std::to_string(used) +
        " signals; instance allows " +
        std::to_string(std::min(inst.num_signals(), inst.k)));
  }
  return Scheme::deterministic(std::move(map));
}

Scheme truncate_scheme(const Instance& inst, const Scheme& scheme, int k,
                       const Prior& prior) {
  if (k < 1) throw ValidationError("truncation budget must be at least 1");
  const SignalMap& map = scheme.map();
  const Eigen::VectorXd contrib = signal_contributions(inst, map, prior);
  std::vector<int> used = scheme.signals_used();
  if (static_cast<int>(used.size()) <= k) return scheme;

  std::stable_sort(used.begin(), used.end(), [&](int a, int b) {
    return contrib(a) > contrib(b);
  });
  std::vector<int> kept(used.begin(), used.begin() + k);
  std::sort(kept.begin(), kept.end());
  std::vector<bool> is_kept(inst.num_signals(), false);
  for (int s : kept) is_kept[s] = true;

  std::vector<Eigen::MatrixXd> vhat;
  std::vector<Eigen::MatrixXd> bundles;
  for (int l = 0; l < prior.size(); ++l) {
    vhat.push_back(prior.support[l] * inst.p.asDiagonal());
    bundles.push_back(
        Eigen::MatrixXd::Zero(inst.num_players(), inst.num_signals()));
  }
  SignalMap out = map;
  for (int j = 0; j < inst.num_items(); ++j) {
    if (!is_kept[map[j]]) continue;
    for (int l = 0; l < prior.size(); ++l) {
      bundles[l].col(map[j]) += vhat[l].col(j);
    }
  }
  for (int j = 0; j < inst.num_items(); ++j) {
    if (is_kept[map[j]]) continue;
    int best = -1;
    double best_gain = 0.0;
    for (int s : kept) {
      if (!inst.allows(j, s)) continue;
      double gain = 0.0;
      for (int l = 0; l < prior.size(); ++l) {
        gain += prior.probs[l] *
                ((bundles[l].col(s) + vhat[l].col(j)).maxCoeff() -
                 bundles[l].col(s).maxCoeff());
      }
      if (best < 0 || gain > best_gain) {
        best = s;
        best_gain = gain;
      }
    }
    if (best < 0) {
      throw UnsupportedConstraint("item " + std::to_string(j) +
                                  " has no edge to a kept signal");
    }
    out[j] = best;
    for (int l = 0; l < prior.size(); ++l) {
      bundles[l].col(best) += vhat[l].col(j);
    }
  }
  return Scheme::deterministic(std::move(out));
}

Scheme truncate_scheme(const Instance& inst, const Scheme& scheme, int k) {
  return truncate_scheme(inst, scheme, k, Prior::point(inst.values));
}

}  // namespace cosig
