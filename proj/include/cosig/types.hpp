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

#ifndef COSIG_TYPES_HPP
#define COSIG_TYPES_HPP

#include <cstdint>

#include <Eigen/Core>

namespace cosig {

using Index = Eigen::Index;

template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

typedef Eigen::Array<bool, Eigen::Dynamic, Eigen::Dynamic> EdgeMatrix;

// Absolute tolerance for probability vectors summing to one.
inline constexpr double kProbabilityTolerance = 1e-9;

}  // namespace cosig

#endif  // COSIG_TYPES_HPP
