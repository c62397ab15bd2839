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

#pragma once

// Data-parallel reductions used by the graph, theory and experiment code.
//
// Every kernel has a scalar reference in `kernels::scalar` and, on x86-64, an
// AVX2 variant in `kernels::avx2`. The unqualified entry points dispatch once
// per process to the best backend the CPU supports. Setting the environment
// variable BIDEG_KERNELS=scalar pins the scalar backend.
//
// Integer kernels are bit-identical across backends. Floating-point kernels
// reassociate sums, so backends agree to a few ulps of the result, not
// bitwise.

#include <cstdint>
#include <span>
#include <string_view>

#include "bideg/params.hpp"

namespace bideg::kernels {

enum class Backend { kScalar, kAvx2 };

std::string_view backend_name(Backend backend);
bool avx2_supported();
Backend active_backend();

// Sum of d^3 over the span, modulo 2^64.
std::uint64_t sum_cubes(std::span<const std::uint32_t> degrees);

// Sum over `pairs` of (left_deg[u] + alpha) * (right_deg[v] + beta).
double adjacent_mass(std::span<const Edge> pairs,
                     std::span<const std::uint32_t> left_deg,
                     std::span<const std::uint32_t> right_deg, double alpha,
                     double beta);

// Sum of |p[i] - q[i]|. Spans must have equal length.
double l1_distance(std::span<const double> p, std::span<const double> q);

// log(x (x+1) ... (x+m-1)) for x > 0; 0 for m <= 0. The scalar reference
// sums logs term by term. The AVX2 variant multiplies four lanes at a time and
// strips the binary exponent every few factors so the running products never
// overflow.
double log_rising(double x, std::int64_t m);

namespace scalar {
std::uint64_t sum_cubes(std::span<const std::uint32_t> degrees);
double adjacent_mass(std::span<const Edge> pairs,
                     std::span<const std::uint32_t> left_deg,
                     std::span<const std::uint32_t> right_deg, double alpha,
                     double beta);
double l1_distance(std::span<const double> p, std::span<const double> q);
double log_rising(double x, std::int64_t m);
}  // namespace scalar

#if defined(__x86_64__) || defined(_M_X64)
#define BIDEG_HAVE_AVX2_KERNELS 1
namespace avx2 {
std::uint64_t sum_cubes(std::span<const std::uint32_t> degrees);
double adjacent_mass(std::span<const Edge> pairs,
                     std::span<const std::uint32_t> left_deg,
                     std::span<const std::uint32_t> right_deg, double alpha,
                     double beta);
double l1_distance(std::span<const double> p, std::span<const double> q);
double log_rising(double x, std::int64_t m);
}  // namespace avx2
#endif

}  // namespace bideg::kernels
