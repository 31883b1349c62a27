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

#include "cosig/generators.hpp"

#include <algorithm>
#include <istream>
#include <numeric>
#include <set>
#include <sstream>

#include "cosig/error.hpp"
#include "cosig/evaluate.hpp"

namespace cosig {
namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

void Shuffle(std::vector<int>& v, Rng& rng) {
  for (std::size_t i = v.size(); i > 1; --i) {
    std::swap(v[i - 1], v[rng.below(i)]);
  }
}

double DrawValue(const ValueDistribution& dist, Rng& rng) {
  return dist.kind == ValueDistribution::Kind::kUniform01
             ? rng.uniform()
             : (rng.bernoulli(dist.q) ? 1.0 : 0.0);
}

Eigen::MatrixXd DrawValues(int n, int m, const ValueDistribution& dist,
                           Rng& rng) {
  Eigen::MatrixXd v(n, m);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < m; ++j) v(i, j) = DrawValue(dist, rng);
  }
  return v;
}

Eigen::VectorXd PositiveSimplex(int size, Rng& rng) {
  for (;;) {
    Eigen::VectorXd w = random_simplex(size, rng);
    if ((w.array() > 0).all()) return w;
  }
}

}  // namespace

std::vector<std::string> MaxCoverSpec::violations() const {
  std::vector<std::string> out;
  if (m < 1) out.push_back("ground set size must be positive");
  if (sets.empty()) out.push_back("need at least one set");
  if (k < 1) out.push_back("budget k must be at least 1");
  if (k > num_sets()) out.push_back("budget k exceeds the number of sets");
  for (int i = 0; i < num_sets(); ++i) {
    std::set<int> seen;
    for (int j : sets[i]) {
      if (j < 0 || j >= m) {
        out.push_back("set " + std::to_string(i) + " has element " +
                      std::to_string(j) + " outside [0, " +
                      std::to_string(m) + ")");
      } else if (!seen.insert(j).second) {
        out.push_back("set " + std::to_string(i) + " repeats element " +
                      std::to_string(j));
      }
    }
  }
  return out;
}

void MaxCoverSpec::validate() const {
  auto v = violations();
  if (!v.empty()) throw ValidationError(std::move(v));
}

Instance from_max_cover(const MaxCoverSpec& spec) {
  spec.validate();
  Eigen::MatrixXd values = Eigen::MatrixXd::Zero(spec.num_sets(), spec.m);
  for (int i = 0; i < spec.num_sets(); ++i) {
    for (int j : spec.sets[i]) values(i, j) = 1.0;
  }
  return Instance::complete(Eigen::VectorXd::Constant(spec.m, 1.0 / spec.m),
                            std::move(values), spec.k, spec.k);
}

int coverage(const MaxCoverSpec& spec, const std::vector<int>& cover) {
  spec.validate();
  std::vector<bool> hit(spec.m, false);
  for (int i : cover) {
    if (i < 0 || i >= spec.num_sets()) {
      throw ValidationError("cover names unknown set " + std::to_string(i));
    }
    for (int j : spec.sets[i]) hit[j] = true;
  }
  return static_cast<int>(std::count(hit.begin(), hit.end(), true));
}

Scheme cover_to_scheme(const MaxCoverSpec& spec,
                       const std::vector<int>& cover) {
  spec.validate();
  if (static_cast<int>(cover.size()) > spec.k) {
    throw ValidationError("cover uses more than k sets");
  }
  if (std::set<int>(cover.begin(), cover.end()).size() != cover.size()) {
    throw ValidationError("cover repeats a set");
  }
  SignalMap map(spec.m, -1);
  for (std::size_t c = 0; c < cover.size(); ++c) {
    const int i = cover[c];
    if (i < 0 || i >= spec.num_sets()) {
      throw ValidationError("cover names unknown set " + std::to_string(i));
    }
    for (int j : spec.sets[i]) {
      if (map[j] < 0) map[j] = static_cast<int>(c);
    }
  }
  for (int& s : map) {
    if (s < 0) s = 0;
  }
  return Scheme::deterministic(std::move(map));
}

std::vector<int> scheme_to_cover(const MaxCoverSpec& spec,
                                 const Scheme& scheme) {
  const Instance inst = from_max_cover(spec);
  const AuctionReport report = auction_report(inst, scheme);
  std::vector<int> cover;
  for (const auto& rec : report.records) {
    if (std::find(cover.begin(), cover.end(), rec.winner) == cover.end()) {
      cover.push_back(rec.winner);
    }
  }
  return cover;
}

MaxCoverSpec parse_max_cover(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ValidationError("empty max-cover spec");
  MaxCoverSpec spec;
  int n = 0;
  {
    std::istringstream head(line);
    if (!(head >> spec.m >> n >> spec.k)) {
      throw ValidationError("first line must be 'm n k'");
    }
    std::string extra;
    if (head >> extra) throw ValidationError("trailing tokens on the first line");
  }
  if (n < 1) throw ValidationError("set count must be positive");
  spec.sets.resize(n);
  for (int i = 0; i < n && std::getline(in, line); ++i) {
    std::istringstream row(line);
    std::string token;
    while (row >> token) {
      std::size_t used = 0;
      int j;
      try {
        j = std::stoi(token, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != token.size()) {
        throw ValidationError("set " + std::to_string(i) + ": bad item '" +
                              token + "'");
      }
      spec.sets[i].push_back(j);
    }
  }
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") != std::string::npos) {
      throw ValidationError("more set lines than declared");
    }
  }
  spec.validate();
  return spec;
}

MaxCoverSpec parse_max_cover(const std::string& text) {
  std::istringstream in(text);
  return parse_max_cover(in);
}

std::string format_max_cover(const MaxCoverSpec& spec) {
  std::ostringstream out;
  out << spec.m << ' ' << spec.num_sets() << ' ' << spec.k << '\n';
  for (const auto& set : spec.sets) {
    for (std::size_t t = 0; t < set.size(); ++t) {
      if (t > 0) out << ' ';
      out << set[t];
    }
    out << '\n';
  }
  return out.str();
}

MaxCoverSpec random_max_cover(int m, int n, int k, double density,
                              std::uint64_t seed) {
  Rng rng(seed);
  MaxCoverSpec spec;
  spec.m = m;
  spec.k = k;
  spec.sets.resize(std::max(n, 0));
  for (auto& set : spec.sets) {
    for (int j = 0; j < m; ++j) {
      if (rng.bernoulli(density)) set.push_back(j);
    }
  }
  spec.validate();
  return spec;
}

Eigen::VectorXd random_simplex(int size, Rng& rng) {
  if (size < 1) throw ValidationError("simplex dimension must be positive");
  std::vector<double> cuts(size - 1);
  for (double& c : cuts) c = rng.uniform();
  std::sort(cuts.begin(), cuts.end());
  Eigen::VectorXd out(size);
  double prev = 0.0;
  for (int i = 0; i + 1 < size; ++i) {
    out(i) = cuts[i] - prev;
    prev = cuts[i];
  }
  out(size - 1) = 1.0 - prev;
  return out;
}

Instance random_instance(const RandomInstanceOptions& o) {
  if (o.m < 1 || o.n < 1 || o.num_signals < 1 || o.k < 1) {
    throw ValidationError("instance sizes must be positive");
  }
  // Draw order: item probabilities, values row by row, then edges.
  Rng rng(o.seed);
  Eigen::VectorXd p = random_simplex(o.m, rng);
  Eigen::MatrixXd values = DrawValues(o.n, o.m, o.values, rng);
  Instance inst =
      Instance::complete(std::move(p), std::move(values), o.num_signals, o.k);
  if (o.edge_density) {
    for (int j = 0; j < o.m; ++j) {
      for (int s = 1; s < o.num_signals; ++s) {
        inst.edges(j, s) = rng.bernoulli(*o.edge_density);
      }
    }
  }
  inst.validate();
  return inst;
}

Prior random_prior(const Instance& inst, int t, ValueDistribution values,
                   std::uint64_t seed) {
  if (t < 1) throw ValidationError("prior needs at least one entry");
  Rng rng(seed);
  Prior prior;
  for (int l = 0; l < t; ++l) {
    prior.support.push_back(
        DrawValues(inst.num_players(), inst.num_items(), values, rng));
  }
  const Eigen::VectorXd q = random_simplex(t, rng);
  prior.probs.assign(q.data(), q.data() + t);
  return prior;
}

Scheme random_scheme(const Instance& inst, int components, bool with_lottery,
                     Rng& rng) {
  inst.validate();
  if (components < 1) throw ValidationError("need at least one component");
  const bool complete = inst.is_complete();
  const int budget = std::min(inst.k, inst.num_signals());
  const int count = 1 + static_cast<int>(rng.below(budget));
  std::vector<int> order(inst.num_signals());
  std::iota(order.begin(), order.end(), 0);
  Shuffle(order, rng);
  std::vector<int> chosen(order.begin(), order.begin() + count);
  if (!complete && inst.no_info &&
      std::find(chosen.begin(), chosen.end(), *inst.no_info) == chosen.end()) {
    chosen.back() = *inst.no_info;
  }
  std::sort(chosen.begin(), chosen.end());

  const bool lottery = with_lottery && complete;
  const Eigen::VectorXd weights =
      PositiveSimplex(components + (lottery ? 1 : 0), rng);
  Scheme scheme;
  for (int c = 0; c < components; ++c) {
    SignalMap map(inst.num_items());
    for (int j = 0; j < inst.num_items(); ++j) {
      std::vector<int> options;
      for (int s : chosen) {
        if (inst.allows(j, s)) options.push_back(s);
      }
      if (options.empty()) {
        throw Infeasible("item " + std::to_string(j) +
                         " has no edge to the chosen signals");
      }
      map[j] = options[rng.below(options.size())];
    }
    scheme.components.push_back(SchemeComponent{weights(c), std::move(map)});
  }
  if (lottery) {
    const Eigen::VectorXd q = random_simplex(count, rng);
    SignalLottery l{Eigen::VectorXd::Zero(inst.num_signals())};
    for (int c = 0; c < count; ++c) l.probs(chosen[c]) = q(c);
    scheme.components.push_back(SchemeComponent{weights(components), l});
  }
  return scheme;
}

GeoInstance random_inner_product(int d, int n, int num_items,
                                 std::uint64_t seed, bool signed_values) {
  if (d < 1 || n < 1 || num_items < 1) {
    throw ValidationError("geometric sizes must be positive");
  }
  Rng rng(seed);
  GeoInstance g;
  g.items.resize(d, num_items);
  for (int w = 0; w < num_items; ++w) g.items.col(w) = random_simplex(d, rng);
  g.probs = random_simplex(num_items, rng);
  g.valuations.resize(d, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < d; ++j) {
      g.valuations(j, i) =
          signed_values ? rng.uniform(-1.0, 1.0) : rng.uniform();
    }
  }
  return g;
}

SubspaceInstance random_subspace(int d, int n, int k, int num_items,
                                 std::uint64_t seed) {
  if (d < 1 || n < 1 || k < 1 || num_items < 1 || k > d) {
    throw ValidationError("need 1 <= k <= d and positive sizes");
  }
  Rng rng(seed);
  SubspaceInstance g;
  g.items.resize(d, num_items);
  for (int w = 0; w < num_items; ++w) {
    Eigen::VectorXd v(d);
    do {
      for (int j = 0; j < d; ++j) v(j) = rng.normal();
    } while (v.norm() == 0.0);
    g.items.col(w) = v.normalized();
  }
  for (int i = 0; i < n; ++i) {
    SubspaceValuation val;
    do {
      Eigen::MatrixXd raw(d, k);
      for (int c = 0; c < k; ++c) {
        for (int j = 0; j < d; ++j) raw(j, c) = rng.normal();
      }
      val = orthonormalize(raw);
    } while (val.rank() < k);
    g.valuations.push_back(std::move(val));
  }
  return g;
}

Eigen::VectorXd IidCubeStream::operator()(std::int64_t index) const {
  const std::uint64_t base =
      splitmix64(seed ^ splitmix64(static_cast<std::uint64_t>(index)));
  Eigen::VectorXd v(dim);
  for (std::int64_t j = 0; j < dim; ++j) {
    v(j) = lo + (hi - lo) * unit_double(splitmix64(
                                base + static_cast<std::uint64_t>(j) * kGolden));
  }
  return v;
}

}  // namespace cosig
