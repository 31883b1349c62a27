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

#ifndef COSIG_JL_HPP
#define COSIG_JL_HPP

// Prior-free bounded signals for subspace valuations. The auctioneer
// projects the unit item ω with a T x d sign matrix A whose entries come
// from an r-wise independent hash, rounds Aω to a fixed-point grid and
// announces (hash description, rounded vector). Bidder i estimates its
// value 1 - dist(ω, S_i) from ⟨Aω, A z⟩ over its orthonormal basis z.
//
// A is never stored. Entry (row, col) is the low bit of a polynomial of
// degree r-1 over GF(2^s) evaluated at row*d + col, where s is the smallest
// width with 2^s >= T*d: bit 0 gives +1/√T, bit 1 gives -1/√T.

#include <cstdint>
#include <vector>

#include <Eigen/Core>

#include "cosig/types.hpp"

namespace cosig {

// ---------------------------------------------------------------- GF(2^s)

/// Product of a and b in GF(2)[x] / (modulus), with deg(modulus) = bits.
std::uint64_t gf2_mul(std::uint64_t a, std::uint64_t b,
                      std::uint64_t modulus, int bits);

/// Rabin's irreducibility test for a polynomial of degree `bits` <= 63.
bool gf2_is_irreducible(std::uint64_t poly, int bits);

/// The first irreducible trinomial x^s + x^a + 1 (smallest a), else the
/// first pentanomial in lexicographic order. Always exists for s <= 63.
std::uint64_t gf2_find_irreducible(int bits);

// ------------------------------------------------------------------- hash

struct RWiseHash {
  std::uint64_t seed = 0;
  int degree = 0;       // polynomial degree, r - 1
  int field_bits = 1;   // s
  std::uint64_t modulus = 3;
  std::vector<std::uint64_t> coeffs;  // degree + 1 entries, constant first

  /// Low output bit of the polynomial at field element x.
  bool bit(std::uint64_t x) const;

  /// ±scale for cells x0 .. x0+count-1.
  void signs(std::uint64_t x0, std::int64_t count, double scale,
             double* out) const;
};

/// Hash over the smallest field with 2^s >= cells; coefficients are the
/// SplitMix64 stream started at `seed`, truncated to s bits.
RWiseHash make_rwise_hash(std::uint64_t seed, int degree, int field_bits);

/// r-wise independent hash for a T x d sign matrix (degree r - 1).
RWiseHash make_rwise_hash(std::uint64_t seed, int r, std::int64_t rows,
                          std::int64_t cols);

/// Smallest s >= 1 with 2^s >= cells. Throws SizeGuardError past 63.
int field_bits_for(std::int64_t rows, std::int64_t cols);

/// Entry (row, col) of the implicit sign matrix.
double sign_entry(const RWiseHash& hash, std::int64_t rows, std::int64_t cols,
                  std::int64_t row, std::int64_t col);

/// A * M for the implicit rows x d matrix A and a dense d x c matrix M.
/// Rows of A are generated once and applied to every column of M.
Eigen::MatrixXd project(const RWiseHash& hash, std::int64_t rows,
                        const Eigen::Ref<const Eigen::MatrixXd>& m);

// ---------------------------------------------------------------- signals

struct JLParams {
  std::int64_t rows = 0;  // T
  double epsilon = 0.1;
  int k = 1;
  int n = 1;
  std::int64_t dim = 1;  // d
  double t_scale = 1.0;
  int r = 1;              // independence; polynomial degree r - 1
  int fraction_bits = 1;  // F = ⌈log₂(3d/ε)⌉
  int value_bits = 3;     // F + 2: sign, one integer bit, F fraction bits
  int field_bits = 1;

  friend bool operator==(const JLParams&, const JLParams&) = default;
};

/// T = ⌈t_scale · 131072 k² ln(3n/ε) / ε⁴⌉, r = ⌈2 ln(3nk/ε)⌉, the grid
/// and the field width. Requires ε in (0, 1/2).
JLParams jl_params(int k, double epsilon, int n, std::int64_t dim,
                   double t_scale = 1.0);

/// Declared signal length η: 88 header bits plus T values of value_bits.
std::int64_t jl_signal_bits(const JLParams& params);

struct JLSignal {
  RWiseHash hash;
  JLParams params;
  // Rounded Aω; every entry is an integer multiple of 2^-F in [-2, 2).
  Eigen::VectorXd projected;
};

/// Rounds to the 2^-F grid (ties to even) and clamps to [-2, 2 - 2^-F].
double quantize(double value, int fraction_bits);

JLSignal jl_signal(const Eigen::Ref<const Eigen::VectorXd>& omega, int k,
                   double epsilon, int n, std::uint64_t seed,
                   double t_scale = 1.0);

/// Orthonormal basis stored as the columns of a d x ℓ matrix.
struct SubspaceValuation {
  Eigen::MatrixXd basis;

  Index dim() const { return basis.rows(); }
  Index rank() const { return basis.cols(); }

  /// Throws unless the columns are orthonormal to 1e-8.
  void validate() const;
};

/// Modified Gram-Schmidt over the columns; residuals with norm <= 1e-9 are
/// dropped. Throws ValidationError when nothing survives.
SubspaceValuation orthonormalize(const Eigen::Ref<const Eigen::MatrixXd>& vectors);

/// 1 - √max(0, 1 - Σ_j ⟨ω, z_j⟩²).
double subspace_value(const Eigen::Ref<const Eigen::VectorXd>& omega,
                      const SubspaceValuation& val);

/// 1 - √max(0, 1 - Σ_j ⟨ω̂', A z_j⟩²), using only the signal.
double estimate_value_from_signal(const JLSignal& signal,
                                  const SubspaceValuation& val);

/// Batch form: one pass over A for all valuations.
std::vector<double> estimate_value_from_signal(
    const JLSignal& signal, const std::vector<SubspaceValuation>& vals);

// ------------------------------------------------------------------ codec

/// Little-endian seed (8 bytes), degree (2 bytes), field bits (1 byte), then
/// the T values as value_bits-wide two's-complement integers packed LSB
/// first and zero-padded to a byte boundary.
struct JLWire {
  std::vector<std::uint8_t> bytes;
  std::int64_t bit_length = 0;
};

JLWire encode(const JLSignal& signal);

/// Needs the parameters the sender used; checks the header against them.
JLSignal decode_jl_signal(const std::vector<std::uint8_t>& bytes,
                          const JLParams& params);

}  // namespace cosig

#endif  // COSIG_JL_HPP
