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

#include <compare>
#include <cstdint>
#include <string_view>

namespace bideg {

using Vertex = std::uint32_t;

// An edge between left vertex `u` and right vertex `v`. Left and right
// vertices live in separate dense index ranges.
struct Edge {
  Vertex u = 0;
  Vertex v = 0;

  friend constexpr auto operator<=>(const Edge&, const Edge&) = default;
};

enum class Side { kLeft, kRight };

std::string_view to_string(Side side);
// Accepts "left"/"L" and "right"/"R" (case-insensitive). Throws InputError.
Side parse_side(std::string_view text);

// Simple graph dynamics (no repeated pairs) or the multigraph variant.
enum class Variant { kSimple, kMulti };

std::string_view to_string(Variant variant);
// Accepts "simple" and "multi" (case-insensitive). Throws InputError.
Variant parse_variant(std::string_view text);

// Model parameters of the bipartite process: attachment offsets alpha (left)
// and beta (right), and the part sizes.
class Params {
 public:
  // Throws InputError unless alpha, beta > 0 and both counts >= 1.
  Params(double alpha, double beta, std::int64_t left_count,
         std::int64_t right_count);

  double alpha() const { return alpha_; }
  double beta() const { return beta_; }
  std::int64_t left_count() const { return left_count_; }
  std::int64_t right_count() const { return right_count_; }
  std::int64_t total_count() const { return left_count_ + right_count_; }

  // R / L.
  double gamma() const {
    return static_cast<double>(right_count_) / static_cast<double>(left_count_);
  }

  // Offset attached to a side: alpha on the left, beta on the right.
  double rho(Side side) const { return side == Side::kLeft ? alpha_ : beta_; }

  // 1 + gamma on the left, 1 + 1/gamma on the right, i.e. (L+R)/|side|.
  double zeta(Side side) const {
    return side == Side::kLeft ? 1.0 + gamma() : 1.0 + 1.0 / gamma();
  }

  std::int64_t count(Side side) const {
    return side == Side::kLeft ? left_count_ : right_count_;
  }

  friend bool operator==(const Params&, const Params&) = default;

 private:
  double alpha_;
  double beta_;
  std::int64_t left_count_;
  std::int64_t right_count_;
};

}  // namespace bideg
