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

#include "cosig/jl.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <string>

#include "cosig/error.hpp"
#include "cosig/rng.hpp"
#include "gf2_impl.hpp"

namespace cosig {
namespace gf2 {

void sign_run_portable(const Field& f, const std::uint64_t* coeffs,
                       int ncoeffs, std::uint64_t x0, std::int64_t count,
                       double plus, double* out) {
  sign_run(f, coeffs, ncoeffs, x0, count, plus, out,
           [](std::uint64_t x, std::uint64_t y) { return clmul_portable(x, y); });
}

#if !defined(COSIG_HAVE_CLMUL)
void sign_run_clmul(const Field& f, const std::uint64_t* coeffs, int ncoeffs,
                    std::uint64_t x0, std::int64_t count, double plus,
                    double* out) {
  sign_run_portable(f, coeffs, ncoeffs, x0, count, plus, out);
}
std::uint64_t mul_clmul(std::uint64_t a, std::uint64_t b, const Field& f) {
  return mul_mod(a, b, f, clmul_portable);
}
#endif

bool have_clmul() {
#if defined(COSIG_HAVE_CLMUL)
  static const bool supported = __builtin_cpu_supports("pclmul");
  return supported;
#else
  return false;
#endif
}

}  // namespace gf2

namespace {

constexpr std::int64_t kMaxRows = std::int64_t{1} << 27;
constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;
constexpr int kHeaderBits = 88;

int Degree(std::uint64_t poly) {
  return poly == 0 ? -1 : 63 - __builtin_clzll(poly);
}

std::uint64_t PolyMod(std::uint64_t a, std::uint64_t b) {
  const int db = Degree(b);
  for (int da = Degree(a); da >= db; da = Degree(a)) a ^= b << (da - db);
  return a;
}

std::uint64_t PolyGcd(std::uint64_t a, std::uint64_t b) {
  while (b != 0) {
    a = PolyMod(a, b);
    std::swap(a, b);
  }
  return a;
}

gf2::Field FieldOf(const RWiseHash& h) {
  return gf2::Field::make(h.field_bits, h.modulus);
}

void CheckUnit(const Eigen::Ref<const Eigen::VectorXd>& omega) {
  if (omega.size() < 1 || !omega.allFinite() ||
      std::abs(omega.norm() - 1.0) > 1e-9) {
    throw ValidationError("item must be a unit vector in l2");
  }
}

}  // namespace

std::uint64_t gf2_mul(std::uint64_t a, std::uint64_t b, std::uint64_t modulus,
                      int bits) {
  if (bits < 1 || bits > 63 || Degree(modulus) != bits) {
    throw ValidationError("modulus degree must equal the field width");
  }
  const auto f = gf2::Field::make(bits, modulus);
  if ((a & ~f.mask) != 0 || (b & ~f.mask) != 0) {
    throw ValidationError("operand outside the field");
  }
  return gf2::have_clmul() ? gf2::mul_clmul(a, b, f)
                           : gf2::mul_mod(a, b, f, gf2::clmul_portable);
}

bool gf2_is_irreducible(std::uint64_t poly, int bits) {
  if (bits < 1 || bits > 63 || Degree(poly) != bits) return false;
  if (bits == 1) return true;
  if ((poly & 1U) == 0) return false;
  const auto f = gf2::Field::make(bits, poly);
  const std::uint64_t x = 2;
  auto frobenius = [&](int times) {
    std::uint64_t h = x;
    for (int i = 0; i < times; ++i) {
      h = gf2::mul_mod(h, h, f, gf2::clmul_portable);
    }
    return h;
  };
  if (frobenius(bits) != x) return false;
  int rest = bits;
  for (int q = 2; q <= rest; ++q) {
    if (rest % q != 0) continue;
    while (rest % q == 0) rest /= q;
    if (PolyGcd(poly, frobenius(bits / q) ^ x) != 1) return false;
  }
  return true;
}

std::uint64_t gf2_find_irreducible(int bits) {
  if (bits < 1 || bits > 63) {
    throw ValidationError("field width must lie in [1, 63]");
  }
  const std::uint64_t top = std::uint64_t{1} << bits;
  if (bits == 1) return top | 1U;
  for (int a = 1; a < bits; ++a) {
    const std::uint64_t p = top | (std::uint64_t{1} << a) | 1U;
    if (gf2_is_irreducible(p, bits)) return p;
  }
  for (int a = 3; a < bits; ++a) {
    for (int b = 2; b < a; ++b) {
      for (int c = 1; c < b; ++c) {
        const std::uint64_t p = top | (std::uint64_t{1} << a) |
                                (std::uint64_t{1} << b) |
                                (std::uint64_t{1} << c) | 1U;
        if (gf2_is_irreducible(p, bits)) return p;
      }
    }
  }
  throw std::logic_error("no sparse irreducible polynomial of degree " +
                         std::to_string(bits));
}

bool RWiseHash::bit(std::uint64_t x) const {
  double s;
  signs(x, 1, 1.0, &s);
  return s < 0;
}

void RWiseHash::signs(std::uint64_t x0, std::int64_t count, double scale,
                      double* out) const {
  const auto f = FieldOf(*this);
  const int nc = static_cast<int>(coeffs.size());
  if (gf2::have_clmul()) {
    gf2::sign_run_clmul(f, coeffs.data(), nc, x0, count, scale, out);
  } else {
    gf2::sign_run_portable(f, coeffs.data(), nc, x0, count, scale, out);
  }
}

RWiseHash make_rwise_hash(std::uint64_t seed, int degree, int field_bits) {
  if (degree < 0 || degree > 0xFFFF) {
    throw ValidationError("hash degree must lie in [0, 65535]");
  }
  RWiseHash h;
  h.seed = seed;
  h.degree = degree;
  h.field_bits = field_bits;
  h.modulus = gf2_find_irreducible(field_bits);
  const std::uint64_t mask = (std::uint64_t{1} << field_bits) - 1;
  for (int i = 0; i <= degree; ++i) {
    h.coeffs.push_back(
        splitmix64(seed + static_cast<std::uint64_t>(i) * kGolden) & mask);
  }
  return h;
}

int field_bits_for(std::int64_t rows, std::int64_t cols) {
  if (rows < 1 || cols < 1) {
    throw ValidationError("matrix dimensions must be positive");
  }
  if (rows > std::numeric_limits<std::int64_t>::max() / cols) {
    throw SizeGuardError("T*d overflows 64 bits");
  }
  const auto cells = static_cast<std::uint64_t>(rows * cols);
  int s = 1;
  while (s < 64 && (std::uint64_t{1} << s) < cells) ++s;
  if (s > 63) throw SizeGuardError("field width beyond 63 bits");
  return s;
}

RWiseHash make_rwise_hash(std::uint64_t seed, int r, std::int64_t rows,
                          std::int64_t cols) {
  if (r < 1) throw ValidationError("independence r must be at least 1");
  return make_rwise_hash(seed, r - 1, field_bits_for(rows, cols));
}

double sign_entry(const RWiseHash& hash, std::int64_t rows, std::int64_t cols,
                  std::int64_t row, std::int64_t col) {
  if (row < 0 || row >= rows || col < 0 || col >= cols) {
    throw ValidationError("cell outside the matrix");
  }
  double s;
  hash.signs(static_cast<std::uint64_t>(row * cols + col), 1,
             1.0 / std::sqrt(static_cast<double>(rows)), &s);
  return s;
}

Eigen::MatrixXd project(const RWiseHash& hash, std::int64_t rows,
                        const Eigen::Ref<const Eigen::MatrixXd>& m) {
  const Index d = m.rows();
  if (rows < 1 || d < 1) throw ValidationError("empty projection");
  if ((std::uint64_t{1} << hash.field_bits) <
      static_cast<std::uint64_t>(rows) * static_cast<std::uint64_t>(d)) {
    throw ValidationError("hash field too small for the matrix");
  }
  const double scale = 1.0 / std::sqrt(static_cast<double>(rows));
  Eigen::MatrixXd out(rows, m.cols());
  Eigen::RowVectorXd signs(d);
  for (std::int64_t t = 0; t < rows; ++t) {
    hash.signs(static_cast<std::uint64_t>(t * d), d, scale, signs.data());
    out.row(t).noalias() = signs * m;
  }
  return out;
}

JLParams jl_params(int k, double epsilon, int n, std::int64_t dim,
                   double t_scale) {
  if (!(epsilon > 0.0 && epsilon < 0.5)) {
    throw ValidationError("epsilon must lie in (0, 1/2)");
  }
  if (k < 1) throw ValidationError("subspace rank k must be at least 1");
  if (n < 1) throw ValidationError("player count must be positive");
  if (dim < 1) throw ValidationError("dimension must be positive");
  if (!(t_scale > 0.0) || !std::isfinite(t_scale)) {
    throw ValidationError("t_scale must be positive");
  }
  JLParams p;
  p.epsilon = epsilon;
  p.k = k;
  p.n = n;
  p.dim = dim;
  p.t_scale = t_scale;
  const double rows = std::ceil(t_scale * 131072.0 * k * k *
                                std::log(3.0 * n / epsilon) /
                                std::pow(epsilon, 4));
  if (rows > static_cast<double>(kMaxRows)) {
    char shown[32];
    std::snprintf(shown, sizeof shown, "%.0f", rows);
    throw SizeGuardError(std::string("projection dimension T = ") + shown +
                         " exceeds " + std::to_string(kMaxRows) +
                         "; lower t_scale");
  }
  p.rows = std::max<std::int64_t>(1, static_cast<std::int64_t>(rows));
  p.r = std::max(1, static_cast<int>(
                        std::ceil(2.0 * std::log(3.0 * n * k / epsilon))));
  const double grid = 3.0 * static_cast<double>(dim) / epsilon;
  p.fraction_bits = 0;
  while (std::ldexp(1.0, p.fraction_bits) < grid) ++p.fraction_bits;
  p.value_bits = p.fraction_bits + 2;
  if (p.value_bits > 62) throw SizeGuardError("fixed-point grid too fine");
  p.field_bits = field_bits_for(p.rows, dim);
  return p;
}

std::int64_t jl_signal_bits(const JLParams& params) {
  return kHeaderBits + params.rows * params.value_bits;
}

double quantize(double value, int fraction_bits) {
  const double lim = std::ldexp(1.0, fraction_bits + 1);
  double q = std::nearbyint(std::ldexp(value, fraction_bits));
  q = std::min(std::max(q, -lim), lim - 1.0);
  return std::ldexp(q, -fraction_bits);
}

JLSignal jl_signal(const Eigen::Ref<const Eigen::VectorXd>& omega, int k,
                   double epsilon, int n, std::uint64_t seed,
                   double t_scale) {
  CheckUnit(omega);
  JLSignal s;
  s.params = jl_params(k, epsilon, n, omega.size(), t_scale);
  s.hash = make_rwise_hash(seed, s.params.r - 1, s.params.field_bits);
  s.projected = project(s.hash, s.params.rows, omega);
  for (Index t = 0; t < s.projected.size(); ++t) {
    s.projected(t) = quantize(s.projected(t), s.params.fraction_bits);
  }
  return s;
}

void SubspaceValuation::validate() const {
  if (basis.rows() < 1) throw ValidationError("subspace needs dimension >= 1");
  if (!basis.allFinite()) throw ValidationError("basis must be finite");
  const Eigen::MatrixXd gram = basis.transpose() * basis;
  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(rank(), rank());
  if (rank() > 0 && (gram - id).cwiseAbs().maxCoeff() > 1e-8) {
    throw ValidationError("basis vectors must be orthonormal");
  }
}

SubspaceValuation orthonormalize(
    const Eigen::Ref<const Eigen::MatrixXd>& vectors) {
  std::vector<Eigen::VectorXd> kept;
  for (Index c = 0; c < vectors.cols(); ++c) {
    Eigen::VectorXd v = vectors.col(c);
    // Two sweeps keep the residual orthogonal in floating point.
    for (int sweep = 0; sweep < 2; ++sweep) {
      for (const auto& q : kept) v -= q.dot(v) * q;
    }
    const double norm = v.norm();
    if (norm > 1e-9) kept.push_back(v / norm);
  }
  if (kept.empty()) throw ValidationError("all input vectors are zero");
  SubspaceValuation out;
  out.basis.resize(vectors.rows(), static_cast<Index>(kept.size()));
  for (std::size_t c = 0; c < kept.size(); ++c) {
    out.basis.col(static_cast<Index>(c)) = kept[c];
  }
  return out;
}

double subspace_value(const Eigen::Ref<const Eigen::VectorXd>& omega,
                      const SubspaceValuation& val) {
  CheckUnit(omega);
  val.validate();
  if (val.dim() != omega.size()) {
    throw ValidationError("subspace and item dimensions differ");
  }
  // ||ω − Pω|| rather than sqrt(1 − ||Pω||²), which cancels near 1.
  const Eigen::VectorXd residual =
      omega - val.basis * (val.basis.transpose() * omega);
  return 1.0 - std::min(1.0, residual.norm());
}

std::vector<double> estimate_value_from_signal(
    const JLSignal& signal, const std::vector<SubspaceValuation>& vals) {
  const std::int64_t d = signal.params.dim;
  if (signal.projected.size() != signal.params.rows) {
    throw ValidationError("signal length differs from T");
  }
  Index total = 0;
  for (const auto& v : vals) {
    v.validate();
    if (v.dim() != d) {
      throw ValidationError("valuation dimension " + std::to_string(v.dim()) +
                            " differs from the signal's " + std::to_string(d));
    }
    total += v.rank();
  }
  Eigen::MatrixXd stacked(d, total);
  Index at = 0;
  for (const auto& v : vals) {
    stacked.middleCols(at, v.rank()) = v.basis;
    at += v.rank();
  }
  const Eigen::RowVectorXd inner =
      total > 0 ? Eigen::RowVectorXd(signal.projected.transpose() *
                                     project(signal.hash, signal.params.rows,
                                             stacked))
                : Eigen::RowVectorXd();
  std::vector<double> out;
  at = 0;
  for (const auto& v : vals) {
    const double mass = inner.segment(at, v.rank()).squaredNorm();
    out.push_back(1.0 - std::sqrt(std::max(0.0, 1.0 - mass)));
    at += v.rank();
  }
  return out;
}

double estimate_value_from_signal(const JLSignal& signal,
                                  const SubspaceValuation& val) {
  return estimate_value_from_signal(signal, std::vector{val}).front();
}

JLWire encode(const JLSignal& signal) {
  const JLParams& p = signal.params;
  if (signal.projected.size() != p.rows) {
    throw ValidationError("signal length differs from T");
  }
  JLWire wire;
  auto& bytes = wire.bytes;
  for (int b = 0; b < 8; ++b) bytes.push_back((signal.hash.seed >> (8 * b)) & 0xFF);
  bytes.push_back(signal.hash.degree & 0xFF);
  bytes.push_back((signal.hash.degree >> 8) & 0xFF);
  bytes.push_back(static_cast<std::uint8_t>(signal.hash.field_bits));
  std::int64_t bit = kHeaderBits;
  const std::uint64_t mask = (std::uint64_t{1} << p.value_bits) - 1;
  for (Index t = 0; t < p.rows; ++t) {
    const double q = std::ldexp(signal.projected(t), p.fraction_bits);
    if (q != std::nearbyint(q) || quantize(signal.projected(t),
                                           p.fraction_bits) !=
                                      signal.projected(t)) {
      throw ValidationError("projected entry off the fixed-point grid");
    }
    const auto code = static_cast<std::uint64_t>(static_cast<std::int64_t>(q)) & mask;
    for (int b = 0; b < p.value_bits; ++b, ++bit) {
      if (bit / 8 >= static_cast<std::int64_t>(bytes.size())) bytes.push_back(0);
      if ((code >> b) & 1U) bytes[bit / 8] |= static_cast<std::uint8_t>(1U << (bit % 8));
    }
  }
  wire.bit_length = bit;
  return wire;
}

JLSignal decode_jl_signal(const std::vector<std::uint8_t>& bytes,
                          const JLParams& params) {
  const std::int64_t bits = jl_signal_bits(params);
  const auto expected = static_cast<std::size_t>((bits + 7) / 8);
  if (bytes.size() != expected) {
    throw DecodeError("signal has " + std::to_string(bytes.size()) +
                      " bytes; parameters imply " + std::to_string(expected));
  }
  std::uint64_t seed = 0;
  for (int b = 0; b < 8; ++b) seed |= static_cast<std::uint64_t>(bytes[b]) << (8 * b);
  const int degree = bytes[8] | (bytes[9] << 8);
  const int field_bits = bytes[10];
  if (degree != params.r - 1 || field_bits != params.field_bits) {
    throw DecodeError("hash header disagrees with the parameters");
  }
  JLSignal s;
  s.params = params;
  s.hash = make_rwise_hash(seed, degree, field_bits);
  s.projected.resize(params.rows);
  std::int64_t bit = kHeaderBits;
  for (Index t = 0; t < params.rows; ++t) {
    std::uint64_t code = 0;
    for (int b = 0; b < params.value_bits; ++b, ++bit) {
      if ((bytes[bit / 8] >> (bit % 8)) & 1U) code |= std::uint64_t{1} << b;
    }
    std::int64_t v = static_cast<std::int64_t>(code);
    if ((code >> (params.value_bits - 1)) & 1U) {
      v -= std::int64_t{1} << params.value_bits;
    }
    s.projected(t) = std::ldexp(static_cast<double>(v), -params.fraction_bits);
  }
  for (; bit < static_cast<std::int64_t>(expected) * 8; ++bit) {
    if ((bytes[bit / 8] >> (bit % 8)) & 1U) {
      throw DecodeError("nonzero padding bits");
    }
  }
  return s;
}

}  // namespace cosig
