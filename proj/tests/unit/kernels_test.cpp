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

#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>
#include <random>
#include <vector>

#include "bideg/kernels.hpp"

namespace bideg::kernels {
namespace {

// Lengths around the vector widths and unroll factors.
const std::vector<std::size_t> kLengths = {0, 1, 2, 3, 4, 5, 7, 8, 9, 15, 16, 17, 31, 64, 1000, 4097};

std::vector<std::uint32_t> random_degrees(std::size_t n, std::uint32_t max, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::uniform_int_distribution<std::uint32_t> d(0, max);
  std::vector<std::uint32_t> out(n);
  for (auto& x : out) x = d(gen);
  return out;
}

double naive_log_rising(double x, std::int64_t m, double* abs_sum = nullptr) {
  long double s = 0.0L, a = 0.0L;
  for (std::int64_t j = 0; j < m; ++j) {
    const long double term = std::log(static_cast<long double>(x) + j);
    s += term;
    a += std::fabs(term);
  }
  if (abs_sum != nullptr) *abs_sum = static_cast<double>(a);
  return static_cast<double>(s);
}

TEST(ScalarKernels, SumCubes) {
  const std::vector<std::uint32_t> d{0, 1, 2, 3};
  EXPECT_EQ(scalar::sum_cubes(d), 36U);
  // Wraps modulo 2^64 like unsigned arithmetic.
  const std::vector<std::uint32_t> big{0xFFFFFFFFU};
  const std::uint64_t b = 0xFFFFFFFFULL;
  EXPECT_EQ(scalar::sum_cubes(big), b * b * b);
}

TEST(ScalarKernels, AdjacentMass) {
  const std::vector<Edge> pairs{{0, 1}, {1, 0}};
  const std::vector<std::uint32_t> l{2, 0};
  const std::vector<std::uint32_t> r{1, 3};
  // (2 + 0.5)(3 + 2) + (0 + 0.5)(1 + 2)
  EXPECT_DOUBLE_EQ(scalar::adjacent_mass(pairs, l, r, 0.5, 2.0), 12.5 + 1.5);
}

TEST(ScalarKernels, L1Distance) {
  const std::vector<double> p{0.5, 0.25, 0.25};
  const std::vector<double> q{0.25, 0.25, 0.5};
  EXPECT_DOUBLE_EQ(scalar::l1_distance(p, q), 0.5);
}

TEST(ScalarKernels, LogRising) {
  EXPECT_EQ(scalar::log_rising(3.0, 0), 0.0);
  EXPECT_NEAR(scalar::log_rising(1.0, 5), std::log(120.0), 1e-14);
  EXPECT_NEAR(scalar::log_rising(0.5, 3), std::log(1.875), 1e-14);
}

TEST(Dispatch, ReportsBackend) {
  const Backend b = active_backend();
  EXPECT_TRUE(b == Backend::kScalar || b == Backend::kAvx2);
  if (b == Backend::kAvx2) {
    EXPECT_TRUE(avx2_supported());
  }
  EXPECT_EQ(backend_name(Backend::kScalar), "scalar");
  EXPECT_EQ(backend_name(Backend::kAvx2), "avx2");
}

TEST(Dispatch, AgreesWithScalar) {
  const auto d = random_degrees(1000, 50, 1);
  EXPECT_EQ(sum_cubes(d), scalar::sum_cubes(d));
  EXPECT_NEAR(log_rising(2.5, 300), scalar::log_rising(2.5, 300), 1e-9);
}

#ifdef BIDEG_HAVE_AVX2_KERNELS

class Avx2Equivalence : public ::testing::Test {
 protected:
  void SetUp() override {
    if (!avx2_supported()) GTEST_SKIP() << "CPU lacks AVX2/FMA";
  }
};

TEST_F(Avx2Equivalence, SumCubesBitIdentical) {
  for (std::size_t n : kLengths) {
    for (std::uint32_t max : {1U, 1000U, 0xFFFFFFFFU}) {
      const auto d = random_degrees(n, max, n * 7 + max);
      EXPECT_EQ(avx2::sum_cubes(d), scalar::sum_cubes(d)) << "n=" << n << " max=" << max;
    }
  }
}

TEST_F(Avx2Equivalence, AdjacentMass) {
  std::mt19937_64 gen(5);
  for (std::size_t n : kLengths) {
    const std::size_t left = 37, right = 23;
    const auto l = random_degrees(left, 200, n + 1);
    const auto r = random_degrees(right, 200, n + 2);
    std::vector<Edge> pairs(n);
    for (auto& e : pairs) {
      e = {static_cast<Vertex>(gen() % left), static_cast<Vertex>(gen() % right)};
    }
    const double s = scalar::adjacent_mass(pairs, l, r, 0.75, 1.5);
    const double v = avx2::adjacent_mass(pairs, l, r, 0.75, 1.5);
    EXPECT_NEAR(v, s, 1e-13 * std::max(1.0, std::fabs(s))) << "n=" << n;
  }
}

TEST_F(Avx2Equivalence, L1Distance) {
  std::mt19937_64 gen(9);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (std::size_t n : kLengths) {
    std::vector<double> p(n), q(n);
    for (std::size_t i = 0; i < n; ++i) {
      p[i] = u(gen);
      q[i] = u(gen);
    }
    const double s = scalar::l1_distance(p, q);
    EXPECT_NEAR(avx2::l1_distance(p, q), s, 1e-13 * std::max(1.0, s)) << "n=" << n;
  }
}

TEST_F(Avx2Equivalence, LogRising) {
  for (double x : {1e-40, 1e-3, 0.5, 1.0, 7.3, 123.25, 1e5, 1e29, 1e31}) {
    for (std::int64_t m : {0, 1, 3, 15, 16, 17, 33, 100, 1000, 5000, 20000}) {
      double abs_sum = 0.0;
      const double ref = naive_log_rising(x, m, &abs_sum);
      const double s = scalar::log_rising(x, m);
      const double v = avx2::log_rising(x, m);
      // Recursive summation bound: (m + 2) u sum |terms|, plus a floor.
      const double tol = (static_cast<double>(m) + 2.0) * 1.1e-16 * abs_sum + 1e-14;
      EXPECT_NEAR(s, ref, tol) << "scalar x=" << x << " m=" << m;
      EXPECT_NEAR(v, ref, tol) << "avx2 x=" << x << " m=" << m;
    }
  }
}

#endif

}  // namespace
}  // namespace bideg::kernels
