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

#include "cosig/winner_mapping.hpp"

#include <algorithm>
#include <queue>
#include <stdexcept>
#include <string>

#include "cosig/error.hpp"
#include "cosig/evaluate.hpp"
#include "cosig/rng.hpp"
#include "cosig/structural.hpp"

namespace cosig {
namespace {

// Items credited so far: best(j) is the largest weight any chosen pair
// reaching j gives it.
class Coverage {
 public:
  explicit Coverage(const WinnerGround& g)
      : g_(g), best_(Eigen::VectorXd::Zero(g.num_items())) {}

  double Gain(int element) const {
    const WinnerPair e = g_.pair(element);
    double gain = 0.0;
    for (int j = 0; j < g_.num_items(); ++j) {
      if (!g_.edges(j, e.signal)) continue;
      gain += std::max(0.0, g_.weights(e.profile, j) - best_(j));
    }
    return gain;
  }

  void Add(int element) {
    const WinnerPair e = g_.pair(element);
    for (int j = 0; j < g_.num_items(); ++j) {
      if (g_.edges(j, e.signal)) {
        best_(j) = std::max(best_(j), g_.weights(e.profile, j));
      }
    }
  }

  void Reset() { best_.setZero(); }

  double Value() const { return best_.sum(); }

 private:
  const WinnerGround& g_;
  Eigen::VectorXd best_;
};

std::vector<WinnerPair> ToPairs(const WinnerGround& g,
                                const std::vector<int>& elements) {
  std::vector<WinnerPair> out;
  for (int e : elements) out.push_back(g.pair(e));
  return out;
}

void RequireIndependent(const WinnerGround& g, const WinnerMapping& w) {
  auto v = TruncatedPartitionMatroid(g).violations(w.pairs);
  if (!v.empty()) throw MatroidViolation(std::move(v));
}

// Full base of largest weight: best profile per signal, then the heaviest
// min(k, |S|) signals. Ties go to lower indices.
std::vector<int> MaxWeightBase(const WinnerGround& g,
                               const Eigen::VectorXd& w) {
  const int R = g.num_profiles();
  std::vector<int> best(g.num_signals());
  for (int s = 0; s < g.num_signals(); ++s) {
    int arg = 0;
    for (int r = 1; r < R; ++r) {
      if (w(s * R + r) > w(s * R + arg)) arg = r;
    }
    best[s] = s * R + arg;
  }
  std::vector<int> order(g.num_signals());
  for (int s = 0; s < g.num_signals(); ++s) order[s] = s;
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return w(best[a]) > w(best[b]); });
  const int rank = std::min(g.k, g.num_signals());
  std::vector<int> base;
  for (int t = 0; t < rank; ++t) base.push_back(best[order[t]]);
  std::sort(base.begin(), base.end());
  return base;
}

bool Independent(const WinnerGround& g, const std::vector<int>& elements) {
  return TruncatedPartitionMatroid(g).independent(ToPairs(g, elements));
}

std::vector<int> Swap(const std::vector<int>& set, int out, int in) {
  std::vector<int> r;
  for (int e : set) {
    if (e != out) r.push_back(e);
  }
  r.push_back(in);
  std::sort(r.begin(), r.end());
  return r;
}

// Merges equal-size bases with the given weights into one base, each
// element surviving with probability proportional to its weight.
std::vector<int> SwapRound(const WinnerGround& g,
                           const std::vector<std::vector<int>>& bases,
                           double weight, Rng& rng) {
  std::vector<int> c = bases.front();
  double beta = weight;
  for (std::size_t t = 1; t < bases.size(); ++t) {
    std::vector<int> b = bases[t];
    for (;;) {
      std::vector<int> only_c, only_b;
      std::set_difference(c.begin(), c.end(), b.begin(), b.end(),
                          std::back_inserter(only_c));
      if (only_c.empty()) break;
      std::set_difference(b.begin(), b.end(), c.begin(), c.end(),
                          std::back_inserter(only_b));
      const int i = only_c.front();
      int j = -1;
      for (int cand : only_b) {
        if (Independent(g, Swap(c, i, cand)) &&
            Independent(g, Swap(b, cand, i))) {
          j = cand;
          break;
        }
      }
      if (j < 0) throw std::logic_error("basis exchange failed");
      if (rng.uniform() < beta / (beta + weight)) {
        b = Swap(b, j, i);
      } else {
        c = Swap(c, i, j);
      }
    }
    beta += weight;
  }
  return c;
}

}  // namespace

WinnerGround winner_ground(const Instance& inst, const Prior& prior,
                           std::int64_t max_profiles) {
  inst.validate();
  prior.validate(inst);
  const int n = inst.num_players();
  const int t = prior.size();
  std::int64_t profiles = 1;
  for (int l = 0; l < t; ++l) {
    if (profiles > max_profiles / n) {
      throw SizeGuardError("tuple ground set n^t = " + std::to_string(n) +
                           "^" + std::to_string(t) + " exceeds the bound " +
                           std::to_string(max_profiles));
    }
    profiles *= n;
  }
  WinnerGround g;
  g.edges = inst.edges;
  g.k = inst.k;
  g.weights = Eigen::MatrixXd::Zero(profiles, inst.num_items());
  std::vector<Eigen::MatrixXd> vhat;
  for (int l = 0; l < t; ++l) {
    vhat.push_back(prior.probs[l] * prior.support[l] * inst.p.asDiagonal());
  }
  for (std::int64_t r = 0; r < profiles; ++r) {
    std::int64_t code = r;
    for (int l = 0; l < t; ++l) {
      g.weights.row(r) += vhat[l].row(code % n);
      code /= n;
    }
  }
  return g;
}

WinnerGround winner_ground(const Instance& inst) {
  return winner_ground(inst, Prior::point(inst.values));
}

std::vector<int> profile_players(int profile, int num_players, int t) {
  std::vector<int> out(t);
  for (int l = 0; l < t; ++l) {
    out[l] = profile % num_players;
    profile /= num_players;
  }
  return out;
}

std::vector<std::string> TruncatedPartitionMatroid::violations(
    std::span<const WinnerPair> pairs) const {
  std::vector<std::string> out;
  std::vector<int> seen(std::max(num_signals_, 0), 0);
  for (const auto& e : pairs) {
    if (e.signal < 0 || e.signal >= num_signals_ || e.profile < 0 ||
        e.profile >= num_profiles_) {
      out.push_back("pair (" + std::to_string(e.signal) + ", " +
                    std::to_string(e.profile) + ") out of range");
    } else if (++seen[e.signal] == 2) {
      out.push_back("signal " + std::to_string(e.signal) +
                    " has more than one winner");
    }
  }
  if (static_cast<int>(pairs.size()) > k_) {
    out.push_back("mapping has " + std::to_string(pairs.size()) +
                  " pairs; budget is " + std::to_string(k_));
  }
  return out;
}

bool TruncatedPartitionMatroid::independent(
    std::span<const WinnerPair> pairs) const {
  if (static_cast<int>(pairs.size()) > k_) return false;
  std::vector<bool> seen(std::max(num_signals_, 0), false);
  for (const auto& e : pairs) {
    if (e.signal < 0 || e.signal >= num_signals_ || e.profile < 0 ||
        e.profile >= num_profiles_ || seen[e.signal]) {
      return false;
    }
    seen[e.signal] = true;
  }
  return true;
}

double winner_set_welfare(const WinnerGround& ground,
                          std::span<const int> elements) {
  Coverage cover(ground);
  for (int e : elements) {
    if (e < 0 || e >= ground.size()) {
      throw ValidationError("element " + std::to_string(e) + " out of range");
    }
    cover.Add(e);
  }
  return cover.Value();
}

double winner_mapping_welfare(const WinnerGround& ground,
                              const WinnerMapping& w) {
  RequireIndependent(ground, w);
  std::vector<int> elements;
  for (const auto& e : w.pairs) elements.push_back(ground.element(e));
  return winner_set_welfare(ground, elements);
}

double winner_mapping_welfare(const Instance& inst, const WinnerMapping& w,
                              const Prior& prior) {
  return winner_mapping_welfare(winner_ground(inst, prior), w);
}

double winner_mapping_welfare(const Instance& inst, const WinnerMapping& w) {
  return winner_mapping_welfare(winner_ground(inst), w);
}

WinnerMapping greedy_winner_mapping(const WinnerGround& ground) {
  struct Entry {
    double gain;
    int element;
    int round;
  };
  // Higher gain first, then lower element id (signal-major order).
  auto after = [](const Entry& a, const Entry& b) {
    if (a.gain != b.gain) return a.gain < b.gain;
    return a.element > b.element;
  };
  std::priority_queue<Entry, std::vector<Entry>, decltype(after)> heap(after);
  Coverage cover(ground);
  for (int e = 0; e < ground.size(); ++e) {
    const double g = cover.Gain(e);
    if (g > 0.0) heap.push(Entry{g, e, 0});
  }
  std::vector<bool> signal_used(ground.num_signals(), false);
  WinnerMapping out;
  int round = 0;
  while (out.size() < ground.k && !heap.empty()) {
    Entry top = heap.top();
    heap.pop();
    const WinnerPair pair = ground.pair(top.element);
    if (signal_used[pair.signal]) continue;
    if (top.round != round) {
      top.gain = cover.Gain(top.element);
      top.round = round;
      if (top.gain > 0.0) heap.push(top);
      continue;
    }
    cover.Add(top.element);
    signal_used[pair.signal] = true;
    out.pairs.push_back(pair);
    ++round;
  }
  return out;
}

WinnerMapping greedy_winner_mapping(const Instance& inst,
                                    const Prior& prior) {
  return greedy_winner_mapping(winner_ground(inst, prior));
}

WinnerMapping greedy_winner_mapping(const Instance& inst) {
  return greedy_winner_mapping(winner_ground(inst));
}

WinnerMapping continuous_greedy_winner_mapping(
    const WinnerGround& ground, const ContinuousGreedyOptions& options) {
  if (options.samples < 1 || options.steps < 1 || options.roundings < 1) {
    throw ValidationError("samples, steps and roundings must be at least 1");
  }
  const auto size = static_cast<int>(ground.size());
  Rng rng(options.seed);
  Eigen::VectorXd y = Eigen::VectorXd::Zero(size);
  const double dt = 1.0 / options.steps;
  std::vector<std::vector<int>> bases;
  Coverage cover(ground);
  for (int step = 0; step < options.steps; ++step) {
    Eigen::VectorXd grad = Eigen::VectorXd::Zero(size);
    for (int sample = 0; sample < options.samples; ++sample) {
      cover.Reset();
      for (int e = 0; e < size; ++e) {
        if (rng.uniform() < y(e)) cover.Add(e);
      }
      for (int e = 0; e < size; ++e) grad(e) += cover.Gain(e);
    }
    grad /= options.samples;
    bases.push_back(MaxWeightBase(ground, grad));
    for (int e : bases.back()) y(e) += dt;
  }
  // Independent roundings of the same fractional point; the best one by
  // exact value is kept, first on ties.
  std::vector<int> chosen;
  double best = -1.0;
  for (int round = 0; round < options.roundings; ++round) {
    std::vector<int> candidate = SwapRound(ground, bases, dt, rng);
    const double value = winner_set_welfare(ground, candidate);
    if (value > best) {
      best = value;
      chosen = std::move(candidate);
    }
  }

  // Drop pairs whose removal loses nothing.
  for (std::size_t t = 0; t < chosen.size();) {
    std::vector<int> without = chosen;
    without.erase(without.begin() + static_cast<std::ptrdiff_t>(t));
    if (winner_set_welfare(ground, without) >=
        winner_set_welfare(ground, chosen)) {
      chosen = std::move(without);
    } else {
      ++t;
    }
  }
  // Refill freed slots greedily; each addition strictly increases the value.
  for (;;) {
    const double base = winner_set_welfare(ground, chosen);
    int arg = -1;
    double gain = 0.0;
    for (int e = 0; e < size; ++e) {
      std::vector<int> grown = chosen;
      grown.push_back(e);
      std::sort(grown.begin(), grown.end());
      if (!Independent(ground, grown)) continue;
      const double d = winner_set_welfare(ground, grown) - base;
      if (d > gain) {
        gain = d;
        arg = e;
      }
    }
    if (arg < 0) break;
    chosen.push_back(arg);
    std::sort(chosen.begin(), chosen.end());
  }
  WinnerMapping out;
  out.pairs = ToPairs(ground, chosen);
  return out;
}

WinnerMapping continuous_greedy_winner_mapping(
    const Instance& inst, const Prior& prior,
    const ContinuousGreedyOptions& options) {
  return continuous_greedy_winner_mapping(winner_ground(inst, prior), options);
}

MappingRealization realize_mapping(const Instance& inst,
                                   const WinnerMapping& w,
                                   const Prior& prior) {
  const WinnerGround ground = winner_ground(inst, prior);
  RequireIndependent(ground, w);
  std::vector<int> winner_of(inst.num_signals(), -1);
  for (const auto& e : w.pairs) winner_of[e.signal] = e.profile;

  // Each item goes to the reachable chosen signal whose winner values it
  // most (lowest signal on ties), else to s0.
  auto assign = [&] {
    SignalMap map(inst.num_items(), -1);
    for (int j = 0; j < inst.num_items(); ++j) {
      for (int s = 0; s < inst.num_signals(); ++s) {
        if (winner_of[s] < 0 || !inst.allows(j, s)) continue;
        if (map[j] < 0 || ground.weights(winner_of[s], j) >
                              ground.weights(winner_of[map[j]], j)) {
          map[j] = s;
        }
      }
      if (map[j] < 0) {
        if (!inst.no_info) {
          throw Infeasible("item " + std::to_string(j) +
                           " reaches no chosen signal and there is no "
                           "no-information signal");
        }
        map[j] = *inst.no_info;
      }
    }
    return map;
  };

  MappingRealization out;
  out.mapping = w;
  SignalMap map = assign();
  std::vector<int> used = Scheme::deterministic(map).signals_used();
  if (static_cast<int>(used.size()) > inst.k) {
    // Only reachable when s0 was added as a fallback; drop the chosen signal
    // contributing least and reassign its items.
    const int s0 = *inst.no_info;
    const Eigen::VectorXd contrib = signal_contributions(inst, map, prior);
    int drop = -1;
    for (int s : used) {
      if (s == s0 || winner_of[s] < 0) continue;
      if (drop < 0 || contrib(s) < contrib(drop)) drop = s;
    }
    winner_of[drop] = -1;
    std::erase_if(out.mapping.pairs,
                  [&](const WinnerPair& e) { return e.signal == drop; });
    map = assign();
    out.fixed_up = true;
  }
  out.scheme = Scheme::deterministic(std::move(map));
  return out;
}

Scheme scheme_from_mapping(const Instance& inst, const WinnerMapping& w,
                           const Prior& prior) {
  return realize_mapping(inst, w, prior).scheme;
}

Scheme scheme_from_mapping(const Instance& inst, const WinnerMapping& w) {
  return scheme_from_mapping(inst, w, Prior::point(inst.values));
}

Scheme solve_bayes_support(const Instance& inst, const Prior& prior,
                           std::int64_t max_profiles) {
  const WinnerGround ground = winner_ground(inst, prior, max_profiles);
  return scheme_from_mapping(inst, greedy_winner_mapping(ground), prior);
}

WelfareSolution solve_welfare(const Instance& inst, const Prior& prior,
                              const WelfareOptions& options) {
  const WinnerGround ground = winner_ground(inst, prior, options.max_profiles);
  WelfareSolution out;
  const WinnerMapping w =
      options.solver == WelfareSolver::kGreedy
          ? greedy_winner_mapping(ground)
          : continuous_greedy_winner_mapping(ground, options.continuous);
  MappingRealization real = realize_mapping(inst, w, prior);
  out.mapping = std::move(real.mapping);
  out.scheme = std::move(real.scheme);
  out.fixed_up = real.fixed_up;
  out.mapping_welfare = winner_mapping_welfare(ground, out.mapping);
  out.welfare = welfare(inst, out.scheme, prior);
  return out;
}

WelfareSolution solve_welfare(const Instance& inst,
                              const WelfareOptions& options) {
  return solve_welfare(inst, Prior::point(inst.values), options);
}

}  // namespace cosig
