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

#ifndef COSIG_GENERATORS_HPP
#define COSIG_GENERATORS_HPP

// Instance construction. Every generator is a pure function of its
// parameters and seed; randomness comes from cosig::Rng (std::mt19937_64
// with variates derived in-library), so outputs match across toolchains.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "cosig/instance.hpp"
#include "cosig/jl.hpp"
#include "cosig/mw.hpp"
#include "cosig/rng.hpp"

namespace cosig {

// ------------------------------------------------------------- max cover

/// Ground set {0, .., m-1}, sets A_0 .. A_{n-1}, budget k.
struct MaxCoverSpec {
  int m = 1;
  std::vector<std::vector<int>> sets;
  int k = 1;

  int num_sets() const { return static_cast<int>(sets.size()); }

  std::vector<std::string> violations() const;
  void validate() const;
};

/// Uniform items, v_i(j) = 1 iff j ∈ A_i, k complete signals, budget k.
Instance from_max_cover(const MaxCoverSpec& spec);

/// Number of ground elements covered by the chosen sets.
int coverage(const MaxCoverSpec& spec, const std::vector<int>& cover);

/// Items of the first chosen set go to signal 0, items newly covered by the
/// second to signal 1, and so on; uncovered items join signal 0. Requires
/// |cover| <= k and distinct set indices.
Scheme cover_to_scheme(const MaxCoverSpec& spec,
                       const std::vector<int>& cover);

/// Winners of the signals of a deterministic scheme on from_max_cover(spec),
/// deduplicated in signal order.
std::vector<int> scheme_to_cover(const MaxCoverSpec& spec,
                                 const Scheme& scheme);

/// Line format: "m n k", then one line of space-separated 0-based item
/// indices per set (an empty line is an empty set).
MaxCoverSpec parse_max_cover(std::istream& in);
MaxCoverSpec parse_max_cover(const std::string& text);
std::string format_max_cover(const MaxCoverSpec& spec);

/// Each item joins each set independently with probability `density`.
MaxCoverSpec random_max_cover(int m, int n, int k, double density,
                              std::uint64_t seed);

// ------------------------------------------------------- random instances

struct ValueDistribution {
  enum class Kind { kUniform01, kBernoulli };
  Kind kind = Kind::kUniform01;
  double q = 0.5;
};

struct RandomInstanceOptions {
  int m = 3;
  int n = 2;
  int num_signals = 3;
  int k = 3;
  std::uint64_t seed = 0;
  ValueDistribution values;
  // When set, each non-s0 edge is present with this probability and signal 0
  // is the universally connected no-information signal.
  std::optional<double> edge_density;
};

/// Uniform point on the probability simplex from sorted uniform spacings.
Eigen::VectorXd random_simplex(int size, Rng& rng);

Instance random_instance(const RandomInstanceOptions& options);

/// Prior with `t` support entries drawn like the instance's values, with
/// probabilities from random_simplex.
Prior random_prior(const Instance& inst, int t, ValueDistribution values,
                   std::uint64_t seed);

/// Mixture of `components` random maps (plus a lottery when edges are
/// complete and `with_lottery` is set) that together use at most k signals.
Scheme random_scheme(const Instance& inst, int components, bool with_lottery,
                     Rng& rng);

// ------------------------------------------------------------- geometric

/// `num_items` items on the l1 simplex with random probabilities and n
/// valuations with entries uniform on [0, 1] (or [-1, 1] when `signed_values`
/// is set); both norms are within the inner-product domain.
GeoInstance random_inner_product(int d, int n, int num_items,
                                 std::uint64_t seed,
                                 bool signed_values = false);

struct SubspaceInstance {
  Eigen::MatrixXd items;  // d x N, unit columns
  std::vector<SubspaceValuation> valuations;
};

/// Unit items from normalized Gaussians and rank-k orthonormal bases.
SubspaceInstance random_subspace(int d, int n, int k, int num_items,
                                 std::uint64_t seed);

/// Counter-based i.i.d. stream of vectors uniform on [lo, hi]^d: entry j of
/// vector i depends only on (seed, i, j), so samples are drawn lazily.
struct IidCubeStream {
  std::uint64_t seed = 0;
  std::int64_t dim = 1;
  double lo = 0.0;
  double hi = 1.0;

  Eigen::VectorXd operator()(std::int64_t index) const;
};

}  // namespace cosig

#endif  // COSIG_GENERATORS_HPP
