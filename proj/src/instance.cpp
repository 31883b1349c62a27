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

#include "cosig/instance.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>

#include "cosig/error.hpp"

namespace cosig {
namespace {

std::string Str(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.12g", x);
  return buf;
}

Eigen::MatrixXd DropRow(const Eigen::MatrixXd& m, int row) {
  Eigen::MatrixXd out(m.rows() - 1, m.cols());
  out.topRows(row) = m.topRows(row);
  out.bottomRows(m.rows() - row - 1) = m.bottomRows(m.rows() - row - 1);
  return out;
}

}  // namespace

Instance Instance::complete(Eigen::VectorXd p, Eigen::MatrixXd values,
                            int num_signals, int k) {
  Instance inst;
  inst.p = std::move(p);
  inst.values = std::move(values);
  for (int s = 0; s < num_signals; ++s) {
    inst.signals.push_back("s" + std::to_string(s));
  }
  inst.edges = EdgeMatrix::Constant(inst.p.size(), num_signals, true);
  inst.k = k;
  inst.no_info = 0;
  return inst;
}

Instance Instance::without_player(int player) const {
  if (player < 0 || player >= num_players()) {
    throw ValidationError("player " + std::to_string(player) +
                          " out of range");
  }
  Instance out = *this;
  out.values = DropRow(values, player);
  return out;
}

std::vector<std::string> Instance::violations() const {
  std::vector<std::string> out;
  const Index m = p.size();
  if (m < 1) out.push_back("instance needs at least one item");
  if (values.cols() != m) {
    out.push_back("values has " + std::to_string(values.cols()) +
                  " columns, expected m = " + std::to_string(m));
  }
  if (values.rows() < 1) out.push_back("instance needs at least one player");
  if (!p.allFinite() || (p.array() < 0.0).any()) {
    out.push_back("item probabilities must be finite and nonnegative");
  }
  if (m > 0 && std::abs(p.sum() - 1.0) > kProbabilityTolerance) {
    out.push_back("item probabilities sum to " + Str(p.sum()) +
                  ", expected 1");
  }
  if (!values.allFinite() || (values.array() < 0.0).any()) {
    out.push_back("values must be finite and nonnegative");
  }
  if (signals.empty()) out.push_back("instance needs at least one signal");
  if (k < 1) out.push_back("signal budget k must be at least 1");
  if (edges.rows() != m || edges.cols() != num_signals()) {
    out.push_back("edge matrix must be m x |S|");
    return out;
  }
  for (Index j = 0; j < m; ++j) {
    if (!edges.row(j).any()) {
      out.push_back("item " + std::to_string(j) + " has no allowed signal");
    }
  }
  if (no_info) {
    if (*no_info < 0 || *no_info >= num_signals()) {
      out.push_back("no_info signal out of range");
    } else if (!edges.col(*no_info).all()) {
      out.push_back("no_info signal must be connected to every item");
    }
  } else if (k < num_signals()) {
    out.push_back("k < |S| requires a no_info signal");
  }
  return out;
}

void Instance::validate() const {
  auto v = violations();
  if (!v.empty()) throw ValidationError(std::move(v));
}

Prior Prior::without_player(int player) const {
  Prior out;
  out.probs = probs;
  for (const auto& values : support) {
    if (player < 0 || player >= values.rows()) {
      throw ValidationError("player " + std::to_string(player) +
                            " out of range");
    }
    out.support.push_back(DropRow(values, player));
  }
  return out;
}

std::vector<std::string> Prior::violations(const Instance& inst) const {
  std::vector<std::string> out;
  if (support.empty()) out.push_back("prior needs at least one support entry");
  if (probs.size() != support.size()) {
    out.push_back("prior has " + std::to_string(probs.size()) +
                  " probabilities for " + std::to_string(support.size()) +
                  " support entries");
    return out;
  }
  double total = 0.0;
  for (std::size_t l = 0; l < support.size(); ++l) {
    if (!(probs[l] >= 0.0)) {
      out.push_back("prior probability " + std::to_string(l) +
                    " is negative");
    }
    total += probs[l];
    const auto& v = support[l];
    if (v.rows() != inst.num_players() || v.cols() != inst.num_items()) {
      out.push_back("prior support entry " + std::to_string(l) +
                    " must be n x m");
    } else if (!v.allFinite() || (v.array() < 0.0).any()) {
      out.push_back("prior support entry " + std::to_string(l) +
                    " has negative or non-finite values");
    }
  }
  if (!support.empty() && std::abs(total - 1.0) > kProbabilityTolerance) {
    out.push_back("prior probabilities sum to " + Str(total) + ", expected 1");
  }
  return out;
}

void Prior::validate(const Instance& inst) const {
  auto v = violations(inst);
  if (!v.empty()) throw ValidationError(std::move(v));
}

bool Scheme::is_deterministic() const {
  return components.size() == 1 &&
         std::holds_alternative<SignalMap>(components.front().rule);
}

const SignalMap& Scheme::map() const {
  if (!is_deterministic()) {
    throw ValidationError("scheme is not deterministic");
  }
  return std::get<SignalMap>(components.front().rule);
}

std::vector<int> Scheme::signals_used() const {
  std::set<int> used;
  for (const auto& c : components) {
    if (const auto* map = std::get_if<SignalMap>(&c.rule)) {
      used.insert(map->begin(), map->end());
    } else {
      const auto& lottery = std::get<SignalLottery>(c.rule);
      for (Index s = 0; s < lottery.probs.size(); ++s) {
        if (lottery.probs(s) > 0.0) used.insert(static_cast<int>(s));
      }
    }
  }
  return {used.begin(), used.end()};
}

std::vector<std::string> Scheme::violations(const Instance& inst,
                                            bool check_budget) const {
  std::vector<std::string> out;
  if (components.empty()) {
    out.push_back("scheme has no components");
    return out;
  }
  double total = 0.0;
  for (std::size_t c = 0; c < components.size(); ++c) {
    const auto& comp = components[c];
    const std::string where = "component " + std::to_string(c);
    if (!(comp.weight > 0.0 && comp.weight <= 1.0 + kProbabilityTolerance)) {
      out.push_back(where + " weight " + Str(comp.weight) +
                    " outside (0, 1]");
    }
    total += comp.weight;
    if (const auto* map = std::get_if<SignalMap>(&comp.rule)) {
      if (static_cast<int>(map->size()) != inst.num_items()) {
        out.push_back(where + " maps " + std::to_string(map->size()) +
                      " items, expected " + std::to_string(inst.num_items()));
        continue;
      }
      for (int j = 0; j < inst.num_items(); ++j) {
        const int s = (*map)[j];
        if (s < 0 || s >= inst.num_signals()) {
          out.push_back(where + " sends item " + std::to_string(j) +
                        " to unknown signal " + std::to_string(s));
        } else if (!inst.allows(j, s)) {
          out.push_back(where + " sends item " + std::to_string(j) +
                        " to signal " + std::to_string(s) +
                        " without an edge");
        }
      }
    } else {
      const auto& lottery = std::get<SignalLottery>(comp.rule);
      if (lottery.probs.size() != inst.num_signals()) {
        out.push_back(where + " lottery must have one entry per signal");
        continue;
      }
      if ((lottery.probs.array() < 0.0).any() ||
          std::abs(lottery.probs.sum() - 1.0) > kProbabilityTolerance) {
        out.push_back(where + " lottery is not a probability vector");
      }
      if (!inst.is_complete()) {
        out.push_back(where +
                      " is a constant-signal lottery, which needs complete "
                      "edges");
      }
    }
  }
  if (std::abs(total - 1.0) > kProbabilityTolerance) {
    out.push_back("component weights sum to " + Str(total) + ", expected 1");
  }
  if (out.empty() && check_budget) {
    const auto used = signals_used();
    if (static_cast<int>(used.size()) > inst.k) {
      out.push_back("scheme uses " + std::to_string(used.size()) +
                    " signals, budget k = " + std::to_string(inst.k));
    }
  }
  return out;
}

void Scheme::validate(const Instance& inst) const {
  auto v = violations(inst);
  if (!v.empty()) throw ValidationError(std::move(v));
}

}  // namespace cosig
