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

#include "cosig/oracle.hpp"

#include <algorithm>

#include "cosig/error.hpp"
#include "cosig/evaluate.hpp"

namespace cosig {
namespace {

class MapWalker {
 public:
  MapWalker(const Instance& inst,
            const std::function<void(std::span<const int>)>& visit,
            bool canonical)
      : inst_(inst),
        visit_(visit),
        canonical_(canonical),
        map_(inst.num_items(), 0),
        uses_(inst.num_signals(), 0) {}

  std::int64_t Run() {
    Recurse(0);
    return count_;
  }

 private:
  void Recurse(int item) {
    if (item == inst_.num_items()) {
      ++count_;
      visit_(map_);
      return;
    }
    const int limit = canonical_
                          ? std::min(distinct_ + 1, inst_.num_signals())
                          : inst_.num_signals();
    for (int s = 0; s < limit; ++s) {
      if (!inst_.allows(item, s)) continue;
      const bool fresh = uses_[s] == 0;
      if (fresh && distinct_ >= inst_.k) continue;
      map_[item] = s;
      ++uses_[s];
      if (fresh) ++distinct_;
      Recurse(item + 1);
      --uses_[s];
      if (fresh) --distinct_;
    }
  }

  const Instance& inst_;
  const std::function<void(std::span<const int>)>& visit_;
  bool canonical_;
  std::vector<int> map_;
  std::vector<int> uses_;
  int distinct_ = 0;
  std::int64_t count_ = 0;
};

// Value of a deterministic map under the prior, straight from the bundle
// form sum_s max_i sum_{j in f^-1(s)} v̂_i(j).
class MapScorer {
 public:
  MapScorer(const Instance& inst, const Prior& prior, Objective objective)
      : inst_(inst), prior_(prior), objective_(objective) {
    for (const auto& v : prior.support) {
      vhat_.push_back(v * inst.p.asDiagonal());
    }
    bundles_.setZero(inst.num_players(), inst.num_signals());
  }

  double operator()(std::span<const int> map) {
    double total = 0.0;
    for (std::size_t l = 0; l < vhat_.size(); ++l) {
      bundles_.setZero();
      for (int j = 0; j < inst_.num_items(); ++j) {
        bundles_.col(map[j]) += vhat_[l].col(j);
      }
      double value = 0.0;
      for (Index s = 0; s < bundles_.cols(); ++s) {
        value += objective_ == Objective::kWelfare
                     ? bundles_.col(s).maxCoeff()
                     : top_two(bundles_.col(s)).second;
      }
      total += prior_.probs[l] * value;
    }
    return total;
  }

 private:
  const Instance& inst_;
  const Prior& prior_;
  Objective objective_;
  std::vector<Eigen::MatrixXd> vhat_;
  Eigen::MatrixXd bundles_;
};

OracleResult Optimize(const Instance& inst, const Prior& prior,
                      Objective objective, const OracleOptions& options) {
  inst.validate();
  prior.validate(inst);
  check_enumeration_budget(inst, options.max_maps);
  MapScorer score(inst, prior, objective);
  OracleResult result;
  result.objective = objective;
  bool have = false;
  SignalMap best;
  auto visit = [&](std::span<const int> map) {
    const double v = score(map);
    if (!have || v > result.value) {
      have = true;
      result.value = v;
      best.assign(map.begin(), map.end());
    }
  };
  if (options.canonicalize && inst.is_complete()) {
    result.enumerated = for_each_canonical_map(inst, visit, options.max_maps);
  } else {
    result.enumerated = for_each_valid_map(inst, visit, options.max_maps);
  }
  if (!have) throw Infeasible("instance admits no valid signaling map");
  result.scheme = Scheme::deterministic(std::move(best));
  return result;
}

}  // namespace

std::string to_string(Objective objective) {
  return objective == Objective::kWelfare ? "welfare" : "revenue";
}

void check_enumeration_budget(const Instance& inst, std::int64_t max_maps) {
  // |S|^m computed with early exit so it cannot overflow.
  std::int64_t total = 1;
  for (int j = 0; j < inst.num_items(); ++j) {
    if (total > max_maps / std::max(1, inst.num_signals())) {
      throw SizeGuardError("oracle enumeration |S|^m = " +
                           std::to_string(inst.num_signals()) + "^" +
                           std::to_string(inst.num_items()) +
                           " exceeds the bound " + std::to_string(max_maps));
    }
    total *= inst.num_signals();
  }
  if (total > max_maps) {
    throw SizeGuardError("oracle enumeration exceeds the bound " +
                         std::to_string(max_maps));
  }
}

std::int64_t for_each_valid_map(
    const Instance& inst,
    const std::function<void(std::span<const int>)>& visit,
    std::int64_t max_maps) {
  inst.validate();
  check_enumeration_budget(inst, max_maps);
  return MapWalker(inst, visit, /*canonical=*/false).Run();
}

std::int64_t for_each_canonical_map(
    const Instance& inst,
    const std::function<void(std::span<const int>)>& visit,
    std::int64_t max_maps) {
  inst.validate();
  if (!inst.is_complete()) {
    throw UnsupportedConstraint(
        "canonical enumeration requires complete edges");
  }
  check_enumeration_budget(inst, max_maps);
  return MapWalker(inst, visit, /*canonical=*/true).Run();
}

std::vector<Scheme> enumerate_valid_maps(const Instance& inst,
                                         const OracleOptions& options) {
  std::vector<Scheme> out;
  for_each_valid_map(
      inst,
      [&](std::span<const int> map) {
        out.push_back(Scheme::deterministic(SignalMap(map.begin(), map.end())));
      },
      options.max_maps);
  return out;
}

OracleResult opt_welfare(const Instance& inst, const Prior& prior,
                         const OracleOptions& options) {
  return Optimize(inst, prior, Objective::kWelfare, options);
}

OracleResult opt_welfare(const Instance& inst, const OracleOptions& options) {
  return opt_welfare(inst, Prior::point(inst.values), options);
}

OracleResult opt_revenue_det(const Instance& inst, const Prior& prior,
                             const OracleOptions& options) {
  return Optimize(inst, prior, Objective::kRevenue, options);
}

OracleResult opt_revenue_det(const Instance& inst,
                             const OracleOptions& options) {
  return opt_revenue_det(inst, Prior::point(inst.values), options);
}

double opt_welfare_excluding(const Instance& inst, const Prior& prior,
                             int excluded, const OracleOptions& options) {
  if (inst.num_players() == 1) return 0.0;
  return opt_welfare(inst.without_player(excluded),
                     prior.without_player(excluded), options)
      .value;
}

}  // namespace cosig
