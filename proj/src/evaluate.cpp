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

#include "cosig/evaluate.hpp"

#include <string>

#include "cosig/error.hpp"

namespace cosig {
namespace {

void CheckInputs(const Instance& inst, const Scheme& scheme,
                 const Prior& prior) {
  auto v = inst.violations();
  auto pv = prior.violations(inst);
  v.insert(v.end(), pv.begin(), pv.end());
  if (v.empty()) {
    auto sv = scheme.violations(inst);
    v.insert(v.end(), sv.begin(), sv.end());
  }
  if (!v.empty()) throw ValidationError(std::move(v));
}

// Sum over signals of a per-column statistic of the bundle-value matrix,
// averaged over the prior. Columns are visited in signal order so the result
// does not depend on evaluation schedule.
template <typename ColumnStat>
double SumOverSignals(const Instance& inst, const Eigen::MatrixXd& x,
                      const Prior& prior, ColumnStat stat) {
  double total = 0.0;
  for (int l = 0; l < prior.size(); ++l) {
    const Eigen::MatrixXd b = bundle_values(prior.support[l], inst.p, x);
    double per_profile = 0.0;
    for (Index s = 0; s < b.cols(); ++s) per_profile += stat(b.col(s));
    total += prior.probs[l] * per_profile;
  }
  return total;
}

}  // namespace

Eigen::MatrixXd marginals(const Scheme& scheme, const Instance& inst) {
  auto v = scheme.violations(inst);
  if (!v.empty()) throw ValidationError(std::move(v));
  Eigen::MatrixXd x =
      Eigen::MatrixXd::Zero(inst.num_items(), inst.num_signals());
  for (const auto& comp : scheme.components) {
    if (const auto* map = std::get_if<SignalMap>(&comp.rule)) {
      for (int j = 0; j < inst.num_items(); ++j) {
        x(j, (*map)[j]) += comp.weight;
      }
    } else {
      const auto& lottery = std::get<SignalLottery>(comp.rule);
      x.rowwise() += comp.weight * lottery.probs.transpose();
    }
  }
  return x;
}

Eigen::VectorXd signal_probabilities(const Eigen::MatrixXd& x,
                                     const Instance& inst) {
  return x.transpose() * inst.p;
}

double conditional_value(const Instance& inst, const Scheme& scheme,
                         int player, int signal) {
  inst.validate();
  if (player < 0 || player >= inst.num_players()) {
    throw ValidationError("player " + std::to_string(player) +
                          " out of range");
  }
  if (signal < 0 || signal >= inst.num_signals()) {
    throw ValidationError("signal " + std::to_string(signal) +
                          " out of range");
  }
  const Eigen::MatrixXd x = marginals(scheme, inst);
  const double prob = inst.p.dot(x.col(signal));
  if (!(prob > 0.0)) {
    throw ZeroProbabilitySignal("signal " + std::to_string(signal) +
                                " has zero probability");
  }
  const double weighted =
      (inst.values.row(player).transpose().cwiseProduct(inst.p))
          .dot(x.col(signal));
  return weighted / prob;
}

double welfare_from_marginals(const Instance& inst, const Eigen::MatrixXd& x,
                              const Prior& prior) {
  return SumOverSignals(inst, x, prior,
                        [](const auto& col) { return col.maxCoeff(); });
}

double revenue_from_marginals(const Instance& inst, const Eigen::MatrixXd& x,
                              const Prior& prior) {
  return SumOverSignals(inst, x, prior,
                        [](const auto& col) { return top_two(col).second; });
}

double welfare(const Instance& inst, const Scheme& scheme,
               const Prior& prior) {
  CheckInputs(inst, scheme, prior);
  return welfare_from_marginals(inst, marginals(scheme, inst), prior);
}

double welfare(const Instance& inst, const Scheme& scheme) {
  return welfare(inst, scheme, Prior::point(inst.values));
}

double revenue(const Instance& inst, const Scheme& scheme,
               const Prior& prior) {
  CheckInputs(inst, scheme, prior);
  return revenue_from_marginals(inst, marginals(scheme, inst), prior);
}

double revenue(const Instance& inst, const Scheme& scheme) {
  return revenue(inst, scheme, Prior::point(inst.values));
}

double welfare_excluding(const Instance& inst, const Scheme& scheme,
                         const Prior& prior, int excluded) {
  CheckInputs(inst, scheme, prior);
  if (excluded < 0 || excluded >= inst.num_players()) {
    throw ValidationError("excluded player " + std::to_string(excluded) +
                          " out of range");
  }
  if (inst.num_players() == 1) return 0.0;
  const Instance rest = inst.without_player(excluded);
  return welfare_from_marginals(rest, marginals(scheme, inst),
                                prior.without_player(excluded));
}

double welfare_excluding(const Instance& inst, const Scheme& scheme,
                         int excluded) {
  return welfare_excluding(inst, scheme, Prior::point(inst.values), excluded);
}

AuctionReport auction_report(const Instance& inst, const Scheme& scheme) {
  const Prior prior = Prior::point(inst.values);
  CheckInputs(inst, scheme, prior);
  const Eigen::MatrixXd x = marginals(scheme, inst);
  const Eigen::VectorXd probs = signal_probabilities(x, inst);
  const Eigen::MatrixXd b = bundle_values(inst.values, inst.p, x);

  AuctionReport report;
  for (int s = 0; s < inst.num_signals(); ++s) {
    if (!(probs(s) > 0.0)) continue;
    const auto top = top_two(b.col(s));
    report.records.push_back(SignalRecord{s, probs(s),
                                          static_cast<int>(top.winner),
                                          top.first / probs(s),
                                          top.second / probs(s)});
    report.welfare += top.first;
    report.revenue += top.second;
  }
  return report;
}

}  // namespace cosig
