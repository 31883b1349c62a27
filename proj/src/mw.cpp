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

#include "cosig/mw.hpp"

#include <algorithm>
#include <map>

#include "cosig/generators.hpp"
#include "cosig/rng.hpp"

namespace cosig {
namespace {

// Smallest b with 2^b >= x.
int CeilLog2(std::uint64_t x) {
  int b = 0;
  while (b < 64 && (std::uint64_t{1} << b) < x) ++b;
  return b;
}

void PutBits(BitString& out, std::uint64_t value, int width) {
  for (int b = width - 1; b >= 0; --b) out.push_back((value >> b) & 1U);
}

class BitReader {
 public:
  explicit BitReader(const BitString& bits) : bits_(bits) {}

  std::uint64_t Take(int width) {
    if (pos_ + static_cast<std::size_t>(width) > bits_.size()) {
      throw DecodeError("bitstring truncated at bit " + std::to_string(pos_) +
                        " of " + std::to_string(bits_.size()));
    }
    std::uint64_t v = 0;
    for (int b = 0; b < width; ++b) v = (v << 1) | (bits_[pos_++] ? 1U : 0U);
    return v;
  }

  std::size_t remaining() const { return bits_.size() - pos_; }

 private:
  const BitString& bits_;
  std::size_t pos_ = 0;
};

void CheckGeo(const GeoInstance& inst) {
  if (inst.items.cols() < 1 || inst.items.rows() < 1) {
    throw ValidationError("geometric instance needs at least one item");
  }
  if (inst.probs.size() != inst.items.cols()) {
    throw ValidationError("item probabilities must match the item count");
  }
  if ((inst.probs.array() < 0).any() ||
      std::abs(inst.probs.sum() - 1.0) > kProbabilityTolerance) {
    throw ValidationError("item probabilities must form a distribution");
  }
}

// Welfare credited to each item: the winner's posterior value given the
// item's signal. Averaging it over items with their probabilities gives the
// auction's welfare.
std::vector<double> GroupWelfare(const GeoInstance& inst,
                                 const Eigen::MatrixXd& valuations,
                                 const std::vector<int>& group) {
  const int num_groups = *std::max_element(group.begin(), group.end()) + 1;
  const Eigen::MatrixXd values = valuations.transpose() * inst.items;
  Eigen::MatrixXd bundles = Eigen::MatrixXd::Zero(values.rows(), num_groups);
  Eigen::MatrixXd plain = Eigen::MatrixXd::Zero(values.rows(), num_groups);
  Eigen::VectorXd mass = Eigen::VectorXd::Zero(num_groups);
  Eigen::VectorXd count = Eigen::VectorXd::Zero(num_groups);
  for (Index w = 0; w < inst.items.cols(); ++w) {
    bundles.col(group[w]) += inst.probs(w) * values.col(w);
    plain.col(group[w]) += values.col(w);
    mass(group[w]) += inst.probs(w);
    count(group[w]) += 1;
  }
  std::vector<double> out(inst.items.cols());
  for (Index w = 0; w < inst.items.cols(); ++w) {
    const int g = group[w];
    // Signals sent with probability zero fall back to the unweighted mean.
    out[w] = mass(g) > 0 ? bundles.col(g).maxCoeff() / mass(g)
                         : plain.col(g).maxCoeff() / count(g);
  }
  return out;
}

void Summarize(const GeoInstance& inst, int trials,
               MWGuaranteeReport& report) {
  report.mean_welfare = report.mean_opt = report.max_gap = 0.0;
  for (const auto& row : report.rows) {
    report.mean_welfare += inst.probs(row.omega_id) * row.welfare / trials;
    report.mean_opt += inst.probs(row.omega_id) * row.opt / trials;
    report.max_gap = std::max(report.max_gap, row.gap);
    report.max_updates = std::max(report.max_updates, row.updates);
    report.max_bits = std::max(report.max_bits, row.bits);
  }
}

}  // namespace

namespace detail {

void check_epsilon(double epsilon) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    throw ValidationError("epsilon must lie in (0, 1)");
  }
}

void check_delta(double delta) {
  if (!(delta > 0.0 && delta < 1.0)) {
    throw ValidationError("delta must lie in (0, 1)");
  }
}

void update_bound_exceeded(std::int64_t cap) {
  throw std::logic_error("multiplicative-weights update count exceeded " +
                         std::to_string(cap));
}

}  // namespace detail

double mw_update_bound(std::int64_t dim, double epsilon) {
  detail::check_epsilon(epsilon);
  if (dim < 1) throw ValidationError("dimension must be positive");
  return 16.0 * std::log(static_cast<double>(dim)) / (epsilon * epsilon);
}

std::int64_t mw_max_updates(std::int64_t dim, double epsilon) {
  return static_cast<std::int64_t>(std::ceil(mw_update_bound(dim, epsilon)));
}

double mw_halt_threshold(int n, std::int64_t dim, double epsilon,
                         double delta) {
  detail::check_delta(delta);
  if (n < 1) throw ValidationError("player count must be positive");
  const double u = mw_update_bound(dim, epsilon);
  if (u <= 0.0) return 1.0;
  const double r =
      2.0 * n * (std::log(u) + std::log(2.0 * n / delta)) / delta;
  return std::max(1.0, r);
}

std::int64_t sample_complexity_from_log_dim(int n, double log_dim,
                                            double epsilon, double delta) {
  detail::check_epsilon(epsilon);
  detail::check_delta(delta);
  if (n < 1) throw ValidationError("player count must be positive");
  if (log_dim < 0) throw ValidationError("log dimension must be >= 0");
  if (log_dim == 0.0) return 0;
  const double u = 16.0 * log_dim / (epsilon * epsilon);
  const double m =
      2.0 * n * u * (std::log(u) + std::log(2.0 * n / delta)) / delta;
  return static_cast<std::int64_t>(std::ceil(std::max(0.0, m)));
}

std::int64_t sample_complexity(int n, std::int64_t dim, double epsilon,
                               double delta) {
  if (dim < 1) throw ValidationError("dimension must be positive");
  return sample_complexity_from_log_dim(
      n, std::log(static_cast<double>(dim)), epsilon, delta);
}

int mw_index_bits(std::int64_t num_vectors) {
  if (num_vectors < 1) throw ValidationError("need at least one vector");
  return CeilLog2(static_cast<std::uint64_t>(num_vectors));
}

int mw_length_bits(std::int64_t dim, double epsilon) {
  return CeilLog2(static_cast<std::uint64_t>(mw_max_updates(dim, epsilon)) +
                  1);
}

std::int64_t mw_bit_bound(const MWParams& params) {
  return mw_max_updates(params.dim, params.epsilon) *
             (mw_index_bits(params.num_vectors) + 1) +
         mw_length_bits(params.dim, params.epsilon);
}

BitString encode(const MWSignal& signal) {
  const MWParams& pr = signal.params;
  const std::int64_t cap = mw_max_updates(pr.dim, pr.epsilon);
  if (static_cast<std::int64_t>(signal.updates.size()) > cap) {
    throw ValidationError("signal has more updates than the bound " +
                          std::to_string(cap));
  }
  const int width = mw_index_bits(pr.num_vectors);
  BitString bits;
  PutBits(bits, signal.updates.size(), mw_length_bits(pr.dim, pr.epsilon));
  for (const auto& u : signal.updates) {
    if (u.index < 0 || u.index >= pr.num_vectors) {
      throw ValidationError("update index out of range");
    }
    PutBits(bits, static_cast<std::uint64_t>(u.index), width);
    bits.push_back(u.sign < 0);
  }
  return bits;
}

MWSignal decode_mw_signal(const BitString& bits, const MWParams& params) {
  BitReader in(bits);
  const std::int64_t cap = mw_max_updates(params.dim, params.epsilon);
  const auto count = static_cast<std::int64_t>(
      in.Take(mw_length_bits(params.dim, params.epsilon)));
  if (count > cap) {
    throw DecodeError("declared update count " + std::to_string(count) +
                      " exceeds the bound " + std::to_string(cap));
  }
  const int width = mw_index_bits(params.num_vectors);
  MWSignal signal;
  signal.params = params;
  for (std::int64_t t = 0; t < count; ++t) {
    const auto index = static_cast<std::int64_t>(in.Take(width));
    if (index >= params.num_vectors) {
      throw DecodeError("decoded index " + std::to_string(index) +
                        " out of range");
    }
    const int sign = in.Take(1) ? -1 : 1;
    signal.updates.push_back(MWUpdate{index, sign});
  }
  if (in.remaining() != 0) {
    throw DecodeError(std::to_string(in.remaining()) +
                      " trailing bits after the last update");
  }
  return signal;
}

std::string to_hex(const BitString& bits) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  for (std::size_t i = 0; i < bits.size(); i += 4) {
    int nibble = 0;
    for (std::size_t b = 0; b < 4; ++b) {
      nibble <<= 1;
      if (i + b < bits.size() && bits[i + b]) nibble |= 1;
    }
    out.push_back(kDigits[nibble]);
  }
  return out;
}

BitString from_hex(const std::string& hex, std::size_t num_bits) {
  if (hex.size() * 4 < num_bits) throw DecodeError("hex string too short");
  BitString bits;
  for (char c : hex) {
    int v;
    if (c >= '0' && c <= '9') {
      v = c - '0';
    } else if (c >= 'a' && c <= 'f') {
      v = c - 'a' + 10;
    } else if (c >= 'A' && c <= 'F') {
      v = c - 'A' + 10;
    } else {
      throw DecodeError(std::string("invalid hex digit '") + c + "'");
    }
    for (int b = 3; b >= 0; --b) bits.push_back((v >> b) & 1);
  }
  bits.resize(num_bits);
  return bits;
}

MWGuaranteeReport mw_welfare_guarantee_check(const GeoInstance& inst,
                                             double epsilon) {
  CheckGeo(inst);
  if (inst.valuations.rows() != inst.items.rows() ||
      inst.valuations.cols() < 1) {
    throw ValidationError("valuations must be d x n with n >= 1");
  }
  MWGuaranteeReport report;
  std::map<std::vector<MWUpdate>, int> groups;
  std::vector<int> group(inst.items.cols());
  std::vector<MWSignal> signals;
  for (Index w = 0; w < inst.items.cols(); ++w) {
    signals.push_back(
        mw_signal_known(inst.items.col(w), inst.valuations, epsilon));
    group[w] = groups.try_emplace(signals.back().updates,
                                  static_cast<int>(groups.size()))
                   .first->second;
  }
  const std::vector<double> welfare =
      GroupWelfare(inst, inst.valuations, group);
  for (Index w = 0; w < inst.items.cols(); ++w) {
    MWTrialRow row;
    row.trial = 0;
    row.omega_id = static_cast<int>(w);
    row.updates = static_cast<std::int64_t>(signals[w].updates.size());
    row.bits = static_cast<std::int64_t>(encode(signals[w]).size());
    row.welfare = welfare[w];
    row.opt = (inst.valuations.transpose() * inst.items.col(w)).maxCoeff();
    row.gap = row.opt - row.welfare;
    report.rows.push_back(row);
  }
  Summarize(inst, 1, report);
  return report;
}

MWGuaranteeReport mw_welfare_guarantee_check_bayes(const GeoInstance& inst,
                                                   int n, double epsilon,
                                                   double delta, int trials,
                                                   std::uint64_t seed) {
  CheckGeo(inst);
  if (trials < 1) throw ValidationError("need at least one trial");
  const Index d = inst.items.rows();
  const std::int64_t m = sample_complexity(n, d, epsilon, delta);
  MWGuaranteeReport report;
  for (int t = 0; t < trials; ++t) {
    const IidCubeStream public_samples{splitmix64(seed + 2 * t), d, 0.0, 1.0};
    const IidCubeStream player_draws{splitmix64(seed + 2 * t + 1), d, 0.0,
                                     1.0};
    Eigen::MatrixXd valuations(d, n);
    for (int i = 0; i < n; ++i) valuations.col(i) = player_draws(i);

    std::map<std::vector<MWUpdate>, int> groups;
    std::vector<int> group(inst.items.cols());
    std::vector<MWSignal> signals;
    for (Index w = 0; w < inst.items.cols(); ++w) {
      signals.push_back(mw_signal_bayes(inst.items.col(w), public_samples,
                                        std::max<std::int64_t>(m, 1), epsilon,
                                        delta, n));
      group[w] = groups.try_emplace(signals.back().updates,
                                    static_cast<int>(groups.size()))
                     .first->second;
    }
    const std::vector<double> welfare = GroupWelfare(inst, valuations, group);
    for (Index w = 0; w < inst.items.cols(); ++w) {
      MWTrialRow row;
      row.trial = t;
      row.omega_id = static_cast<int>(w);
      row.updates = static_cast<std::int64_t>(signals[w].updates.size());
      row.bits = static_cast<std::int64_t>(encode(signals[w]).size());
      row.welfare = welfare[w];
      row.opt = (valuations.transpose() * inst.items.col(w)).maxCoeff();
      row.gap = row.opt - row.welfare;
      report.rows.push_back(row);
    }
  }
  Summarize(inst, trials, report);
  return report;
}

}  // namespace cosig
