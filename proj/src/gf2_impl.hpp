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

#ifndef COSIG_SRC_GF2_IMPL_HPP
#define COSIG_SRC_GF2_IMPL_HPP

// Arithmetic in GF(2^s), s <= 63, shared by the portable and the
// carry-less-multiply translation units. Elements are the low s bits of a
// uint64; the modulus includes its x^s term.

#include <bit>
#include <cstdint>

namespace cosig::gf2 {

using u128 = unsigned __int128;

struct Field {
  int bits = 1;
  std::uint64_t modulus = 3;  // x + 1
  std::uint64_t tail = 1;     // modulus without the x^s term
  std::uint64_t mask = 1;
  // Exponents of the tail's terms; the moduli in use have at most five.
  int tail_exps[8] = {};
  int num_tail = 0;
  bool two_folds = false;

  static Field make(int bits, std::uint64_t modulus) {
    Field f;
    f.bits = bits;
    f.modulus = modulus;
    f.mask = (std::uint64_t{1} << bits) - 1;
    f.tail = modulus & f.mask;
    for (int e = 0; e < bits && f.num_tail < 8; ++e) {
      if ((f.tail >> e) & 1U) f.tail_exps[f.num_tail++] = e;
    }
    if (std::popcount(f.tail) > 8) f.num_tail = -1;
    f.two_folds =
        bits <= 32 && 2 * static_cast<int>(std::bit_width(f.tail)) <= bits + 2;
    return f;
  }
};

inline u128 clmul_portable(std::uint64_t a, std::uint64_t b) {
  u128 r = 0;
  while (b != 0) {
    r ^= static_cast<u128>(a) << __builtin_ctzll(b);
    b &= b - 1;
  }
  return r;
}

template <typename Clmul>
inline std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, const Field& f,
                             Clmul clmul) {
  u128 p = clmul(a, b);
  if (f.num_tail < 0) {
    while ((p >> f.bits) != 0) {
      const auto hi = static_cast<std::uint64_t>(p >> f.bits);
      p = (p & f.mask) ^ clmul(hi, f.tail);
    }
    return static_cast<std::uint64_t>(p);
  }
  // x^s = tail, so the high part folds back as hi * tail. With a tail of
  // degree at most s/2 two folds always finish, and the multiplier's
  // second operand has only a few set bits.
  if (f.two_folds) {
    auto q = static_cast<std::uint64_t>(p);
    q = (q & f.mask) ^ static_cast<std::uint64_t>(clmul(q >> f.bits, f.tail));
    q = (q & f.mask) ^ static_cast<std::uint64_t>(clmul(q >> f.bits, f.tail));
    return q;
  }
  for (u128 hi = p >> f.bits; hi != 0; hi = p >> f.bits) {
    p &= f.mask;
    for (int t = 0; t < f.num_tail; ++t) p ^= hi << f.tail_exps[t];
  }
  return static_cast<std::uint64_t>(p);
}

/// Horner evaluation of sum_i coeffs[i] x^i for x = x0 .. x0+count-1, each
/// mapped to +plus (low bit 0) or -plus (low bit 1). Eight lanes at a time
/// so consecutive multiplies overlap.
template <typename Clmul>
inline void sign_run(const Field& f, const std::uint64_t* coeffs, int ncoeffs,
                     std::uint64_t x0, std::int64_t count, double plus,
                     double* out, Clmul clmul) {
  constexpr int kLanes = 8;
  std::int64_t c = 0;
  for (; c + kLanes <= count; c += kLanes) {
    std::uint64_t x[kLanes];
    std::uint64_t h[kLanes];
    for (int l = 0; l < kLanes; ++l) {
      x[l] = x0 + c + l;
      h[l] = coeffs[ncoeffs - 1];
    }
    for (int i = ncoeffs - 2; i >= 0; --i) {
      for (int l = 0; l < kLanes; ++l) {
        h[l] = mul_mod(h[l], x[l], f, clmul) ^ coeffs[i];
      }
    }
    for (int l = 0; l < kLanes; ++l) out[c + l] = (h[l] & 1U) ? -plus : plus;
  }
  for (; c < count; ++c) {
    const std::uint64_t x = x0 + c;
    std::uint64_t h = coeffs[ncoeffs - 1];
    for (int i = ncoeffs - 2; i >= 0; --i) h = mul_mod(h, x, f, clmul) ^ coeffs[i];
    out[c] = (h & 1U) ? -plus : plus;
  }
}

void sign_run_portable(const Field& f, const std::uint64_t* coeffs,
                       int ncoeffs, std::uint64_t x0, std::int64_t count,
                       double plus, double* out);

// Defined only when the carry-less-multiply unit is compiled in.
void sign_run_clmul(const Field& f, const std::uint64_t* coeffs, int ncoeffs,
                    std::uint64_t x0, std::int64_t count, double plus,
                    double* out);
std::uint64_t mul_clmul(std::uint64_t a, std::uint64_t b, const Field& f);

bool have_clmul();

}  // namespace cosig::gf2

#endif  // COSIG_SRC_GF2_IMPL_HPP
