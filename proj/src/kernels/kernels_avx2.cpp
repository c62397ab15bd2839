// Copyright 2026 The bideg Authors
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

// Compiled with -mavx2 -mfma. Only reached through the dispatcher after a
// runtime CPU check.

#include <immintrin.h>

#include <cmath>
#include <cstddef>
#include <cstring>

#include "bideg/kernels.hpp"

namespace bideg::kernels::avx2 {

namespace {

double horizontal_sum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d pair = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(pair, _mm_unpackhi_pd(pair, pair)));
}

std::uint64_t horizontal_sum_u64(__m256i v) {
  alignas(32) std::uint64_t lanes[4];
  _mm256_store_si256(reinterpret_cast<__m256i*>(lanes), v);
  return lanes[0] + lanes[1] + lanes[2] + lanes[3];
}

}  // namespace

std::uint64_t sum_cubes(std::span<const std::uint32_t> degrees) {
  const std::size_t n = degrees.size();
  const std::uint32_t* data = degrees.data();
  __m256i acc = _mm256_setzero_si256();
  const __m256i low_mask = _mm256_set1_epi64x(0xffffffffLL);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m128i raw = _mm_loadu_si128(reinterpret_cast<const __m128i*>(data + i));
    const __m256i d = _mm256_cvtepu32_epi64(raw);
    const __m256i d2 = _mm256_mul_epu32(d, d);
    // d2 * d modulo 2^64 from two 32x32 products.
    const __m256i lo = _mm256_mul_epu32(_mm256_and_si256(d2, low_mask), d);
    const __m256i hi = _mm256_mul_epu32(_mm256_srli_epi64(d2, 32), d);
    acc = _mm256_add_epi64(acc, _mm256_add_epi64(lo, _mm256_slli_epi64(hi, 32)));
  }
  std::uint64_t total = horizontal_sum_u64(acc);
  for (; i < n; ++i) {
    const std::uint64_t x = data[i];
    total += x * x * x;
  }
  return total;
}

double adjacent_mass(std::span<const Edge> pairs,
                     std::span<const std::uint32_t> left_deg,
                     std::span<const std::uint32_t> right_deg, double alpha,
                     double beta) {
  static_assert(sizeof(Edge) == 2 * sizeof(std::uint32_t));
  const std::size_t n = pairs.size();
  const auto* raw = reinterpret_cast<const std::uint32_t*>(pairs.data());
  const auto* ldeg = reinterpret_cast<const int*>(left_deg.data());
  const auto* rdeg = reinterpret_cast<const int*>(right_deg.data());
  const __m256d va = _mm256_set1_pd(alpha);
  const __m256d vb = _mm256_set1_pd(beta);
  // Interleaved (u0 v0 u1 v1 ...) -> (u0 u1 u2 u3 | v0 v1 v2 v3).
  const __m256i deinterleave = _mm256_setr_epi32(0, 2, 4, 6, 1, 3, 5, 7);
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256i uv = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(raw + 2 * i));
    const __m256i split = _mm256_permutevar8x32_epi32(uv, deinterleave);
    const __m128i us = _mm256_castsi256_si128(split);
    const __m128i vs = _mm256_extracti128_si256(split, 1);
    const __m128i du = _mm_i32gather_epi32(ldeg, us, 4);
    const __m128i dv = _mm_i32gather_epi32(rdeg, vs, 4);
    const __m256d wu = _mm256_add_pd(_mm256_cvtepi32_pd(du), va);
    const __m256d wv = _mm256_add_pd(_mm256_cvtepi32_pd(dv), vb);
    acc = _mm256_fmadd_pd(wu, wv, acc);
  }
  double total = horizontal_sum(acc);
  for (; i < n; ++i) {
    total += (static_cast<double>(left_deg[pairs[i].u]) + alpha) *
             (static_cast<double>(right_deg[pairs[i].v]) + beta);
  }
  return total;
}

double l1_distance(std::span<const double> p, std::span<const double> q) {
  const std::size_t n = p.size();
  const __m256d sign = _mm256_set1_pd(-0.0);
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d diff = _mm256_sub_pd(_mm256_loadu_pd(p.data() + i),
                                       _mm256_loadu_pd(q.data() + i));
    acc = _mm256_add_pd(acc, _mm256_andnot_pd(sign, diff));
  }
  double total = horizontal_sum(acc);
  for (; i < n; ++i) total += std::fabs(p[i] - q[i]);
  return total;
}

double log_rising(double x, std::int64_t m) {
  if (m <= 0) return 0.0;
  // Eight factors per lane between renormalizations stay inside the double
  // range while every factor lies in [1e-30, 1e30].
  if (x < 1e-30 || x + static_cast<double>(m) > 1e30 || m < 16) {
    return scalar::log_rising(x, m);
  }
  constexpr int kBlock = 8;
  const __m256i exp_mask = _mm256_set1_epi64x(0x7ff0000000000000LL);
  const __m256i exp_one = _mm256_set1_epi64x(0x3ff0000000000000LL);
  const __m256i bias = _mm256_set1_epi64x(1023);
  __m256d base = _mm256_setr_pd(x, x + 1.0, x + 2.0, x + 3.0);
  const __m256d step = _mm256_set1_pd(4.0);
  __m256d prod = _mm256_set1_pd(1.0);
  __m256i exponents = _mm256_setzero_si256();

  const std::int64_t vector_terms = (m / 4) * 4;
  std::int64_t done = 0;
  int in_block = 0;
  while (done < vector_terms) {
    prod = _mm256_mul_pd(prod, base);
    base = _mm256_add_pd(base, step);
    done += 4;
    if (++in_block == kBlock || done == vector_terms) {
      // prod = mantissa * 2^e with mantissa in [1, 2); keep the mantissa.
      const __m256i bits = _mm256_castpd_si256(prod);
      const __m256i e = _mm256_sub_epi64(
          _mm256_srli_epi64(_mm256_and_si256(bits, exp_mask), 52), bias);
      exponents = _mm256_add_epi64(exponents, e);
      prod = _mm256_castsi256_pd(
          _mm256_or_si256(_mm256_andnot_si256(exp_mask, bits), exp_one));
      in_block = 0;
    }
  }
  alignas(32) double mantissa[4];
  alignas(32) std::int64_t exps[4];
  _mm256_store_pd(mantissa, prod);
  _mm256_store_si256(reinterpret_cast<__m256i*>(exps), exponents);
  const double log_mantissa = std::log(mantissa[0] * mantissa[1]) +
                              std::log(mantissa[2] * mantissa[3]);
  const std::int64_t exp_total = exps[0] + exps[1] + exps[2] + exps[3];
  double total = log_mantissa + static_cast<double>(exp_total) * std::log(2.0);
  for (std::int64_t j = vector_terms; j < m; ++j) {
    total += std::log(x + static_cast<double>(j));
  }
  return total;
}

}  // namespace bideg::kernels::avx2
