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

#include <cmath>
#include <cstddef>

#include "bideg/kernels.hpp"

namespace bideg::kernels::scalar {

std::uint64_t sum_cubes(std::span<const std::uint32_t> degrees) {
  std::uint64_t total = 0;
  for (std::uint32_t d : degrees) {
    const std::uint64_t x = d;
    total += x * x * x;
  }
  return total;
}

double adjacent_mass(std::span<const Edge> pairs,
                     std::span<const std::uint32_t> left_deg,
                     std::span<const std::uint32_t> right_deg, double alpha,
                     double beta) {
  double total = 0.0;
  for (const Edge& e : pairs) {
    total += (static_cast<double>(left_deg[e.u]) + alpha) *
             (static_cast<double>(right_deg[e.v]) + beta);
  }
  return total;
}

double l1_distance(std::span<const double> p, std::span<const double> q) {
  double total = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) total += std::fabs(p[i] - q[i]);
  return total;
}

double log_rising(double x, std::int64_t m) {
  double total = 0.0;
  for (std::int64_t j = 0; j < m; ++j) total += std::log(x + static_cast<double>(j));
  return total;
}

}  // namespace bideg::kernels::scalar
