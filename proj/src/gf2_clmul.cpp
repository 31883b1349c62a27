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

// Built with -mpclmul. Only reached after a runtime CPU check.

#include <wmmintrin.h>

#include "gf2_impl.hpp"

namespace cosig::gf2 {
namespace {

inline u128 ClmulHw(std::uint64_t a, std::uint64_t b) {
  const __m128i r = _mm_clmulepi64_si128(
      _mm_cvtsi64_si128(static_cast<long long>(a)),
      _mm_cvtsi64_si128(static_cast<long long>(b)), 0x00);
  const auto lo = static_cast<std::uint64_t>(_mm_cvtsi128_si64(r));
  const auto hi =
      static_cast<std::uint64_t>(_mm_cvtsi128_si64(_mm_unpackhi_epi64(r, r)));
  return (static_cast<u128>(hi) << 64) | lo;
}

}  // namespace

void sign_run_clmul(const Field& f, const std::uint64_t* coeffs, int ncoeffs,
                    std::uint64_t x0, std::int64_t count, double plus,
                    double* out) {
  sign_run(f, coeffs, ncoeffs, x0, count, plus, out,
           [](std::uint64_t x, std::uint64_t y) { return ClmulHw(x, y); });
}

std::uint64_t mul_clmul(std::uint64_t a, std::uint64_t b, const Field& f) {
  return mul_mod(a, b, f, ClmulHw);
}

}  // namespace cosig::gf2
