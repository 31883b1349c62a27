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

#ifndef COSIG_ORACLE_HPP
#define COSIG_ORACLE_HPP

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "cosig/instance.hpp"

namespace cosig {

// Exhaustive search over deterministic signaling maps. Exact by
// construction; intended as ground truth on small instances.

enum class Objective { kWelfare, kRevenue };

std::string to_string(Objective objective);

struct OracleOptions {
  // Hard cap on |S|^m. Exceeding it raises SizeGuardError; the oracle never
  // falls back to sampling.
  std::int64_t max_maps = 10'000'000;
  // With complete edges every relabeling of a map is valid and has the same
  // value, so only maps whose labels appear in first-use order are visited.
  bool canonicalize = true;
};

struct OracleResult {
  Objective objective = Objective::kWelfare;
  double value = 0.0;
  Scheme scheme;
  std::int64_t enumerated = 0;
};

/// Throws SizeGuardError when |S|^m exceeds `max_maps`.
void check_enumeration_budget(const Instance& inst, std::int64_t max_maps);

/// Calls `visit` once for every valid map: each item sent along an edge and
/// at most k distinct signals in total. Visits in lexicographic order of
/// (f(0), f(1), ...). Returns the number of maps visited.
std::int64_t for_each_valid_map(
    const Instance& inst,
    const std::function<void(std::span<const int>)>& visit,
    std::int64_t max_maps = OracleOptions{}.max_maps);

/// Same set of maps, restricted to canonical labelings: labels appear in
/// first-use order 0, 1, 2, .... Requires complete edges.
std::int64_t for_each_canonical_map(
    const Instance& inst,
    const std::function<void(std::span<const int>)>& visit,
    std::int64_t max_maps = OracleOptions{}.max_maps);

/// Every valid map as a deterministic scheme.
std::vector<Scheme> enumerate_valid_maps(const Instance& inst,
                                         const OracleOptions& options = {});

OracleResult opt_welfare(const Instance& inst, const Prior& prior,
                         const OracleOptions& options = {});
OracleResult opt_welfare(const Instance& inst,
                         const OracleOptions& options = {});

OracleResult opt_revenue_det(const Instance& inst, const Prior& prior,
                             const OracleOptions& options = {});
OracleResult opt_revenue_det(const Instance& inst,
                             const OracleOptions& options = {});

/// Optimal welfare among all players except `excluded`; 0 when n = 1.
double opt_welfare_excluding(const Instance& inst, const Prior& prior,
                             int excluded, const OracleOptions& options = {});

}  // namespace cosig

#endif  // COSIG_ORACLE_HPP
