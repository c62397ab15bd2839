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

#include <cstdlib>
#include <string_view>

#include "bideg/kernels.hpp"

namespace bideg::kernels {

namespace {

struct Table {
  Backend backend;
  std::uint64_t (*sum_cubes)(std::span<const std::uint32_t>);
  double (*adjacent_mass)(std::span<const Edge>, std::span<const std::uint32_t>,
                          std::span<const std::uint32_t>, double, double);
  double (*l1_distance)(std::span<const double>, std::span<const double>);
  double (*log_rising)(double, std::int64_t);
};

Table select_table() {
  const char* forced = std::getenv("BIDEG_KERNELS");
  const bool force_scalar =
      forced != nullptr && std::string_view(forced) == "scalar";
#ifdef BIDEG_HAVE_AVX2_KERNELS
  if (!force_scalar && avx2_supported()) {
    return {Backend::kAvx2, &avx2::sum_cubes, &avx2::adjacent_mass,
            &avx2::l1_distance, &avx2::log_rising};
  }
#else
  (void)force_scalar;
#endif
  return {Backend::kScalar, &scalar::sum_cubes, &scalar::adjacent_mass,
          &scalar::l1_distance, &scalar::log_rising};
}

const Table& table() {
  static const Table t = select_table();
  return t;
}

}  // namespace

std::string_view backend_name(Backend backend) {
  return backend == Backend::kAvx2 ? "avx2" : "scalar";
}

bool avx2_supported() {
#ifdef BIDEG_HAVE_AVX2_KERNELS
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

Backend active_backend() { return table().backend; }

std::uint64_t sum_cubes(std::span<const std::uint32_t> degrees) {
  return table().sum_cubes(degrees);
}

double adjacent_mass(std::span<const Edge> pairs,
                     std::span<const std::uint32_t> left_deg,
                     std::span<const std::uint32_t> right_deg, double alpha,
                     double beta) {
  return table().adjacent_mass(pairs, left_deg, right_deg, alpha, beta);
}

double l1_distance(std::span<const double> p, std::span<const double> q) {
  return table().l1_distance(p, q);
}

double log_rising(double x, std::int64_t m) { return table().log_rising(x, m); }

}  // namespace bideg::kernels
