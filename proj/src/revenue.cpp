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

#include "cosig/revenue.hpp"

#include <algorithm>
#include <map>
#include <string>

#include "cosig/error.hpp"
#include "cosig/evaluate.hpp"
#include "cosig/structural.hpp"

namespace cosig {
namespace {

void RequireComplete(const Instance& inst, const char* what) {
  inst.validate();
  if (!inst.is_complete()) {
    throw UnsupportedConstraint(std::string(what) +
                                " requires complete edges");
  }
}

}  // namespace

Scheme merge_signals(const Instance& inst, const Scheme& scheme, int s,
                     int t) {
  scheme.validate(inst);
  const std::vector<int> used = scheme.signals_used();
  for (int label : {s, t}) {
    if (!std::binary_search(used.begin(), used.end(), label)) {
      throw ValidationError("signal " + std::to_string(label) +
                            " is not used by the scheme");
    }
  }
  if (s == t) throw ValidationError("cannot merge a signal with itself");
  const int keep = std::min(s, t);
  const int gone = std::max(s, t);
  SignalMap map = scheme.map();
  for (int& label : map) {
    if (label == gone) label = keep;
  }
  return Scheme::deterministic(std::move(map));
}

Scheme procedure1(const Instance& inst, const WelfareOptions& options) {
  RequireComplete(inst, "procedure 1");
  Scheme f = solve_welfare(inst, options).scheme;

  // Signals sharing a winner collapse onto the lowest of their labels.
  const Eigen::MatrixXd bundles =
      bundle_values(inst.values, inst.p, marginals(f, inst));
  std::map<Index, int> first_with_winner;
  for (int s : f.signals_used()) {
    const Index winner = top_two(bundles.col(s)).winner;
    auto [it, fresh] = first_with_winner.try_emplace(winner, s);
    if (!fresh) f = merge_signals(inst, f, it->second, s);
  }

  const Prior point = Prior::point(inst.values);
  const Eigen::VectorXd contrib = signal_contributions(inst, f.map(), point);
  std::vector<int> order = f.signals_used();
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return contrib(a) > contrib(b); });
  for (std::size_t i = 0; i + 1 < order.size(); i += 2) {
    f = merge_signals(inst, f, order[i], order[i + 1]);
  }
  return f;
}

Procedure2Result procedure2(const Instance& inst, bool optimized_mix,
                            const WelfareOptions& options) {
  RequireComplete(inst, "procedure 2");
  if (inst.num_players() < 2) {
    throw Degenerate("procedure 2 needs at least two players");
  }
  Procedure2Result out;
  const Eigen::VectorXd expected = inst.values * inst.p;
  Index istar;
  out.vstar = expected.maxCoeff(&istar);
  out.istar = static_cast<int>(istar);

  const Instance rest = inst.without_player(out.istar);
  out.h = solve_welfare(rest, options).scheme;
  const Eigen::MatrixXd bundles =
      bundle_values(rest.values, rest.p, marginals(out.h, rest));
  out.vs = bundles.colwise().maxCoeff().transpose();
  out.welfare_h = out.vs.sum();
  if (!(out.welfare_h > 0.0)) {
    throw Degenerate("welfare without player " + std::to_string(out.istar) +
                     " is zero");
  }
  out.alpha = out.vstar / out.welfare_h;
  out.lottery.probs = out.alpha * out.vs / out.vstar;
  out.weight_h = optimized_mix ? out.alpha / (1.0 + out.alpha) : 0.5;
  out.scheme.components = {
      SchemeComponent{out.weight_h, out.h.map()},
      SchemeComponent{1.0 - out.weight_h, out.lottery},
  };
  return out;
}

RevenuePlan solve_revenue(const Instance& inst, bool optimized_mix,
                          const WelfareOptions& options) {
  RequireComplete(inst, "revenue maximization");
  RevenuePlan plan;
  plan.scheme_g = procedure1(inst, options);
  plan.revenue_g = revenue(inst, plan.scheme_g);
  if (inst.num_players() < 2) return plan;
  try {
    plan.x = procedure2(inst, optimized_mix, options);
  } catch (const Degenerate&) {
    return plan;
  }
  plan.revenue_x = revenue(inst, plan.x->scheme);
  plan.chose_x = plan.revenue_x > plan.revenue_g;
  return plan;
}

}  // namespace cosig
