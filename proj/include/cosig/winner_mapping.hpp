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

#ifndef COSIG_WINNER_MAPPING_HPP
#define COSIG_WINNER_MAPPING_HPP

// Welfare maximization under edge and budget constraints, by way of winner
// mappings: choose at most one winning profile per signal and at most k
// pairs overall (a truncated partition matroid), then send every item to the
// reachable chosen signal whose winner values it most. The value of a
// mapping is a weighted coverage function, so it is monotone submodular.
//
// A profile is a player under known valuations. Under a prior with t
// support entries it is a tuple (i_0, .., i_{t-1}) naming the winner in each
// entry, encoded as the mixed-radix index sum_l i_l n^l.

#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "cosig/instance.hpp"

namespace cosig {

struct WinnerPair {
  int signal = 0;
  int profile = 0;

  friend bool operator==(const WinnerPair&, const WinnerPair&) = default;
  friend auto operator<=>(const WinnerPair&, const WinnerPair&) = default;
};

struct WinnerMapping {
  std::vector<WinnerPair> pairs;

  bool empty() const { return pairs.empty(); }
  int size() const { return static_cast<int>(pairs.size()); }
};

/// Ground set signals x profiles with the profile weights per item.
struct WinnerGround {
  Eigen::MatrixXd weights;  // profiles x items
  EdgeMatrix edges;         // items x signals
  int k = 1;

  int num_signals() const { return static_cast<int>(edges.cols()); }
  int num_profiles() const { return static_cast<int>(weights.rows()); }
  int num_items() const { return static_cast<int>(weights.cols()); }
  std::int64_t size() const {
    return static_cast<std::int64_t>(num_signals()) * num_profiles();
  }

  /// Element id of a pair: signal * num_profiles + profile.
  int element(const WinnerPair& pair) const {
    return pair.signal * num_profiles() + pair.profile;
  }
  WinnerPair pair(int element) const {
    return WinnerPair{element / num_profiles(), element % num_profiles()};
  }
};

/// Weights q_l v̂^l_{i_l}(j) summed over the prior for every profile.
/// Throws SizeGuardError when n^t exceeds `max_profiles`.
WinnerGround winner_ground(const Instance& inst, const Prior& prior,
                           std::int64_t max_profiles = 100'000);
WinnerGround winner_ground(const Instance& inst);

/// Decodes a tuple profile into per-entry winners.
std::vector<int> profile_players(int profile, int num_players, int t);

/// Independence in the truncated partition matroid: every element in
/// range, at most one element per signal, at most k elements.
class TruncatedPartitionMatroid {
 public:
  TruncatedPartitionMatroid(int num_signals, int num_profiles, int k)
      : num_signals_(num_signals), num_profiles_(num_profiles), k_(k) {}
  explicit TruncatedPartitionMatroid(const WinnerGround& ground)
      : TruncatedPartitionMatroid(ground.num_signals(), ground.num_profiles(),
                                  ground.k) {}

  bool independent(std::span<const WinnerPair> pairs) const;
  bool independent(const WinnerMapping& w) const {
    return independent(w.pairs);
  }

  /// Names of the violated constraints; empty when independent.
  std::vector<std::string> violations(std::span<const WinnerPair> pairs) const;

  int rank() const { return std::min(k_, num_signals_); }

 private:
  int num_signals_;
  int num_profiles_;
  int k_;
};

/// sum_j max over chosen pairs (s, r) with (j, s) ∈ E of weights(r, j); an
/// empty max counts as 0. Defined for any element set, independent or not.
double winner_set_welfare(const WinnerGround& ground,
                          std::span<const int> elements);

/// Same value for an independent mapping; throws MatroidViolation otherwise.
double winner_mapping_welfare(const WinnerGround& ground,
                              const WinnerMapping& w);
double winner_mapping_welfare(const Instance& inst, const WinnerMapping& w,
                              const Prior& prior);
double winner_mapping_welfare(const Instance& inst, const WinnerMapping& w);

/// Lazy greedy over the matroid: repeatedly adds the feasible pair with the
/// largest strictly positive marginal gain, ties to the lowest (signal,
/// profile). Pairs come out in insertion order.
WinnerMapping greedy_winner_mapping(const WinnerGround& ground);
WinnerMapping greedy_winner_mapping(const Instance& inst, const Prior& prior);
WinnerMapping greedy_winner_mapping(const Instance& inst);

struct ContinuousGreedyOptions {
  int samples = 64;
  int steps = 32;
  // Swap roundings of the fractional solution; the best is returned.
  int roundings = 16;
  std::uint64_t seed = 0;
};

/// Sampled continuous greedy on the multilinear extension followed by swap
/// rounding. Each step estimates every marginal from the same `samples`
/// random sets, moves 1/steps toward the max-weight base, and the step
/// bases are merged pairwise by randomized exchanges. Of `roundings` such
/// merges the best is kept; pairs that add nothing are dropped and freed
/// slots are refilled greedily.
WinnerMapping continuous_greedy_winner_mapping(
    const WinnerGround& ground, const ContinuousGreedyOptions& options);
WinnerMapping continuous_greedy_winner_mapping(
    const Instance& inst, const Prior& prior,
    const ContinuousGreedyOptions& options);

struct MappingRealization {
  Scheme scheme;
  // The mapping after the fix-up; equal to the input when no fix-up ran.
  WinnerMapping mapping;
  bool fixed_up = false;
};

/// Sends each item to the reachable chosen signal whose winner has the
/// highest weight for it (lowest signal on ties), else to the no-information
/// signal. When that uses k + 1 signals, the chosen signal other than s0
/// with the smallest welfare contribution loses its winner and the items are
/// reassigned under the reduced mapping.
MappingRealization realize_mapping(const Instance& inst,
                                   const WinnerMapping& w, const Prior& prior);

Scheme scheme_from_mapping(const Instance& inst, const WinnerMapping& w,
                           const Prior& prior);
Scheme scheme_from_mapping(const Instance& inst, const WinnerMapping& w);

/// Greedy over the tuple-expanded ground set, realized as a scheme.
Scheme solve_bayes_support(const Instance& inst, const Prior& prior,
                           std::int64_t max_profiles = 100'000);

enum class WelfareSolver { kGreedy, kContinuousGreedy };

struct WelfareOptions {
  WelfareSolver solver = WelfareSolver::kGreedy;
  ContinuousGreedyOptions continuous;
  std::int64_t max_profiles = 100'000;
};

struct WelfareSolution {
  WinnerMapping mapping;
  Scheme scheme;
  double mapping_welfare = 0.0;
  double welfare = 0.0;
  bool fixed_up = false;
};

WelfareSolution solve_welfare(const Instance& inst, const Prior& prior,
                              const WelfareOptions& options = {});
WelfareSolution solve_welfare(const Instance& inst,
                              const WelfareOptions& options = {});

}  // namespace cosig

#endif  // COSIG_WINNER_MAPPING_HPP
