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

#ifndef COSIG_MW_HPP
#define COSIG_MW_HPP

// Bounded-length signals for inner-product valuations. The auctioneer runs
// multiplicative weights over the d coordinates, using valuation vectors as
// loss vectors, until the hypothesis ω̂ agrees with the realized item ω to
// within ε/2 on every vector. The signal is the list of (vector index, sign)
// pairs that triggered updates; anyone holding the vectors replays it to
// recover ω̂.
//
// Logs are natural throughout. The multiplicative factor is ε/4 for both the
// known-valuation and the sampled-prior variants.

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include <Eigen/Core>

#include "cosig/error.hpp"
#include "cosig/types.hpp"

namespace cosig {

struct MWUpdate {
  std::int64_t index = 0;
  int sign = 1;

  friend bool operator==(const MWUpdate&, const MWUpdate&) = default;
  friend bool operator<(const MWUpdate& a, const MWUpdate& b) {
    return std::tie(a.index, a.sign) < std::tie(b.index, b.sign);
  }
};

struct MWParams {
  double epsilon = 0.1;
  std::int64_t num_vectors = 0;
  std::int64_t dim = 1;

  friend bool operator==(const MWParams&, const MWParams&) = default;
};

struct MWSignal {
  std::vector<MWUpdate> updates;
  MWParams params;
  // Sampled-prior variant only: whether the run of non-updating samples
  // reached the halting threshold before the samples ran out.
  bool halted = true;
  // Sampled-prior variant only: fewer samples than the sample complexity.
  bool undersampled = false;
};

/// 16 ln d / ε², the bound on the number of updates.
double mw_update_bound(std::int64_t dim, double epsilon);

/// ⌈16 ln d / ε²⌉.
std::int64_t mw_max_updates(std::int64_t dim, double epsilon);

/// Halting threshold r = 2n (ln(16 ln d/ε²) + ln(2n/δ)) / δ.
double mw_halt_threshold(int n, std::int64_t dim, double epsilon,
                         double delta);

/// Number of prior samples m = 2n U (ln U + ln(2n/δ)) / δ with
/// U = 16 ln d / ε², rounded up. Zero for d = 1.
std::int64_t sample_complexity(int n, std::int64_t dim, double epsilon,
                               double delta);

/// Same formula with ln d supplied directly.
std::int64_t sample_complexity_from_log_dim(int n, double log_dim,
                                            double epsilon, double delta);

namespace detail {

/// A callable index -> vector, as opposed to an Eigen matrix of columns.
template <typename T>
concept SampleCallable = requires(T& sample, std::int64_t i) {
  { sample(i).size() };
};

void check_epsilon(double epsilon);
void check_delta(double delta);

template <typename Derived>
void check_simplex_item(const Eigen::MatrixBase<Derived>& omega) {
  if (omega.size() < 1) throw ValidationError("item must have dimension >= 1");
  if ((omega.array() < 0).any() ||
      std::abs(static_cast<double>(omega.sum()) - 1.0) > 1e-9) {
    throw ValidationError("item must be nonnegative with unit l1 norm");
  }
}

template <typename Derived>
void check_linear_valuation(const Eigen::MatrixBase<Derived>& z) {
  if (z.size() > 0 && static_cast<double>(z.cwiseAbs().maxCoeff()) > 1.0) {
    throw ValidationError("valuation vectors must have l-infinity norm <= 1");
  }
}

/// One multiplicative step with factor ε/4 followed by l1 normalization.
template <typename Scalar, typename DerivedZ>
void mw_step(Vector<Scalar>& w, const Eigen::MatrixBase<DerivedZ>& z,
             int sign, double epsilon) {
  const Scalar rate = static_cast<Scalar>(sign * epsilon / 4.0);
  w.array() *= (Scalar(1) - rate * z.array().template cast<Scalar>());
  w /= w.sum();
}

[[noreturn]] void update_bound_exceeded(std::int64_t cap);

}  // namespace detail

/// Known-valuation signal. `vectors` is d x m; column i is z_i. Repeatedly
/// updates on the lowest-index vector violating the ε/2 test.
template <typename DerivedOmega, typename DerivedZ>
MWSignal mw_signal_known(const Eigen::MatrixBase<DerivedOmega>& omega,
                         const Eigen::MatrixBase<DerivedZ>& vectors,
                         double epsilon) {
  using Scalar = typename DerivedOmega::Scalar;
  detail::check_epsilon(epsilon);
  detail::check_simplex_item(omega);
  if (vectors.rows() != omega.size()) {
    throw ValidationError("valuation vectors must have the item's dimension");
  }
  detail::check_linear_valuation(vectors);

  const Index d = omega.size();
  MWSignal signal;
  signal.params = MWParams{epsilon, static_cast<std::int64_t>(vectors.cols()),
                           static_cast<std::int64_t>(d)};
  const std::int64_t cap = mw_max_updates(d, epsilon);
  const Vector<Scalar> target =
      vectors.transpose().template cast<Scalar>() * omega;
  Vector<Scalar> w = Vector<Scalar>::Constant(d, Scalar(1) / Scalar(d));
  const Scalar half = static_cast<Scalar>(epsilon / 2.0);
  for (;;) {
    const Vector<Scalar> current =
        vectors.transpose().template cast<Scalar>() * w;
    Index violated = -1;
    for (Index i = 0; i < current.size(); ++i) {
      if (std::abs(target(i) - current(i)) >= half) {
        violated = i;
        break;
      }
    }
    if (violated < 0) break;
    if (static_cast<std::int64_t>(signal.updates.size()) >= cap) {
      detail::update_bound_exceeded(cap);
    }
    const int sign = current(violated) > target(violated) ? 1 : -1;
    signal.updates.push_back(MWUpdate{violated, sign});
    detail::mw_step(w, vectors.col(violated), sign, epsilon);
  }
  return signal;
}

/// Sampled-prior signal: one pass over m samples, at most one update per
/// sample, halting after mw_halt_threshold consecutive non-updating samples.
/// `sample(i)` returns z_i as a d-vector for 0 <= i < m.
template <typename DerivedOmega, typename SampleSource>
MWSignal mw_signal_bayes(const Eigen::MatrixBase<DerivedOmega>& omega,
                         SampleSource&& sample, std::int64_t num_samples,
                         double epsilon, double delta, int n) {
  using Scalar = typename DerivedOmega::Scalar;
  detail::check_epsilon(epsilon);
  detail::check_delta(delta);
  detail::check_simplex_item(omega);
  if (n < 1) throw ValidationError("player count must be positive");

  const Index d = omega.size();
  MWSignal signal;
  signal.params =
      MWParams{epsilon, num_samples, static_cast<std::int64_t>(d)};
  signal.undersampled =
      num_samples < sample_complexity(n, d, epsilon, delta);
  signal.halted = false;
  const std::int64_t cap = mw_max_updates(d, epsilon);
  const double threshold = mw_halt_threshold(n, d, epsilon, delta);
  const Scalar half = static_cast<Scalar>(epsilon / 2.0);

  Vector<Scalar> w = Vector<Scalar>::Constant(d, Scalar(1) / Scalar(d));
  double quiet = 0;
  for (std::int64_t i = 0; i < num_samples; ++i) {
    const Vector<Scalar> z = sample(i).template cast<Scalar>();
    if (z.size() != d) {
      throw ValidationError("sample dimension differs from the item's");
    }
    detail::check_linear_valuation(z);
    const Scalar truth = z.dot(omega);
    const Scalar guess = z.dot(w);
    if (std::abs(truth - guess) >= half) {
      if (static_cast<std::int64_t>(signal.updates.size()) >= cap) {
        detail::update_bound_exceeded(cap);
      }
      const int sign = guess > truth ? 1 : -1;
      signal.updates.push_back(MWUpdate{i, sign});
      detail::mw_step(w, z, sign, epsilon);
      quiet = 0;
    } else {
      quiet += 1;
      if (quiet >= threshold) {
        signal.halted = true;
        break;
      }
    }
  }
  return signal;
}

template <typename DerivedOmega, typename DerivedZ>
MWSignal mw_signal_bayes(const Eigen::MatrixBase<DerivedOmega>& omega,
                         const Eigen::MatrixBase<DerivedZ>& samples,
                         double epsilon, double delta, int n) {
  return mw_signal_bayes(
      omega, [&](std::int64_t i) { return samples.col(i); }, samples.cols(),
      epsilon, delta, n);
}

/// Every hypothesis ω̂^1 .. ω̂^{T+1} visited while replaying the signal.
template <typename Scalar = double, detail::SampleCallable SampleSource>
std::vector<Vector<Scalar>> mw_trajectory(const MWSignal& signal,
                                          SampleSource&& sample) {
  const std::int64_t d = signal.params.dim;
  if (d < 1) throw DecodeError("signal dimension must be positive");
  std::vector<Vector<Scalar>> out;
  out.push_back(Vector<Scalar>::Constant(d, Scalar(1) / Scalar(d)));
  for (const auto& u : signal.updates) {
    if (u.index < 0 || u.index >= signal.params.num_vectors) {
      throw DecodeError("signal references vector " + std::to_string(u.index) +
                        " of " + std::to_string(signal.params.num_vectors));
    }
    if (u.sign != 1 && u.sign != -1) throw DecodeError("sign must be +1 or -1");
    const Vector<Scalar> z = sample(u.index).template cast<Scalar>();
    if (z.size() != d) throw DecodeError("vector dimension mismatch");
    Vector<Scalar> next = out.back();
    detail::mw_step(next, z, u.sign, signal.params.epsilon);
    out.push_back(std::move(next));
  }
  return out;
}

/// ω̂^{T+1}, a function of the signal and the public vectors only.
template <typename Scalar = double, detail::SampleCallable SampleSource>
Vector<Scalar> reconstruct(const MWSignal& signal, SampleSource&& sample) {
  const std::int64_t d = signal.params.dim;
  if (d < 1) throw DecodeError("signal dimension must be positive");
  Vector<Scalar> w = Vector<Scalar>::Constant(d, Scalar(1) / Scalar(d));
  for (const auto& u : signal.updates) {
    if (u.index < 0 || u.index >= signal.params.num_vectors) {
      throw DecodeError("signal references vector " + std::to_string(u.index) +
                        " of " + std::to_string(signal.params.num_vectors));
    }
    if (u.sign != 1 && u.sign != -1) throw DecodeError("sign must be +1 or -1");
    const Vector<Scalar> z = sample(u.index).template cast<Scalar>();
    if (z.size() != d) throw DecodeError("vector dimension mismatch");
    detail::mw_step(w, z, u.sign, signal.params.epsilon);
  }
  return w;
}

template <typename Derived>
Eigen::VectorXd reconstruct(const MWSignal& signal,
                            const Eigen::MatrixBase<Derived>& vectors) {
  if (vectors.cols() < signal.params.num_vectors) {
    throw DecodeError("fewer vectors than the signal's parameters declare");
  }
  return reconstruct(signal, [&](std::int64_t i) { return vectors.col(i); });
}

// Bit codec. Layout, most significant bit first: the update count in
// mw_length_bits bits, then per update the vector index in mw_index_bits
// bits followed by one sign bit (1 for -1).

using BitString = std::vector<bool>;

/// ⌈log₂ m⌉; zero for m = 1.
int mw_index_bits(std::int64_t num_vectors);

/// ⌈log₂(T_max + 1)⌉ with T_max = mw_max_updates.
int mw_length_bits(std::int64_t dim, double epsilon);

/// Worst-case encoded length: T_max (⌈log₂ m⌉ + 1) + length prefix.
std::int64_t mw_bit_bound(const MWParams& params);

BitString encode(const MWSignal& signal);
MWSignal decode_mw_signal(const BitString& bits, const MWParams& params);

std::string to_hex(const BitString& bits);
BitString from_hex(const std::string& hex, std::size_t num_bits);

// Pointwise welfare audit on a finite set of geometric items.

/// Items are columns of a d x N matrix drawn with `probs`; valuations are
/// columns of a d x n matrix.
struct GeoInstance {
  Eigen::MatrixXd items;
  Eigen::VectorXd probs;
  Eigen::MatrixXd valuations;
};

struct MWTrialRow {
  int trial = 0;
  int omega_id = 0;
  std::int64_t updates = 0;
  std::int64_t bits = 0;
  double welfare = 0.0;
  double opt = 0.0;
  double gap = 0.0;
};

struct MWGuaranteeReport {
  std::vector<MWTrialRow> rows;
  // p-weighted averages over items, then over trials.
  double mean_welfare = 0.0;
  double mean_opt = 0.0;
  double max_gap = 0.0;
  std::int64_t max_updates = 0;
  std::int64_t max_bits = 0;
};

/// Known valuations: signals use the valuations themselves as vectors.
MWGuaranteeReport mw_welfare_guarantee_check(const GeoInstance& inst,
                                             double epsilon);

/// Sampled prior: valuations and the m public vectors are i.i.d. uniform on
/// [0, 1]^d, redrawn per trial. `inst.valuations` is ignored; n players.
MWGuaranteeReport mw_welfare_guarantee_check_bayes(const GeoInstance& inst,
                                                   int n, double epsilon,
                                                   double delta, int trials,
                                                   std::uint64_t seed);

}  // namespace cosig

#endif  // COSIG_MW_HPP
