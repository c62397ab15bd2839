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

#include "bideg/params.hpp"

#include <cctype>
#include <cmath>
#include <string>

#include "bideg/errors.hpp"

namespace bideg {

std::string_view to_string(Side side) {
  return side == Side::kLeft ? "left" : "right";
}

Side parse_side(std::string_view text) {
  std::string lower(text);
  for (char& c : lower) c = static_cast<char>(std::tolower(c));
  if (lower == "left" || lower == "l") return Side::kLeft;
  if (lower == "right" || lower == "r") return Side::kRight;
  throw InputError("unknown side '" + std::string(text) +
                   "' (expected left or right)");
}

std::string_view to_string(Variant variant) {
  return variant == Variant::kSimple ? "simple" : "multi";
}

Variant parse_variant(std::string_view text) {
  std::string lower(text);
  for (char& c : lower) c = static_cast<char>(std::tolower(c));
  if (lower == "simple") return Variant::kSimple;
  if (lower == "multi") return Variant::kMulti;
  throw InputError("unknown variant '" + std::string(text) +
                   "' (expected simple or multi)");
}

Params::Params(double alpha, double beta, std::int64_t left_count,
               std::int64_t right_count)
    : alpha_(alpha),
      beta_(beta),
      left_count_(left_count),
      right_count_(right_count) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw InputError("alpha must be a positive finite real");
  }
  if (!(beta > 0.0) || !std::isfinite(beta)) {
    throw InputError("beta must be a positive finite real");
  }
  if (left_count < 1) throw InputError("left_count (L) must be >= 1");
  if (right_count < 1) throw InputError("right_count (R) must be >= 1");
  // Vertex indices must fit a signed 32-bit gather index.
  constexpr std::int64_t kMaxPart = (std::int64_t{1} << 31) - 1;
  if (left_count > kMaxPart || right_count > kMaxPart) {
    throw InputError("part sizes must be below 2^31");
  }
}

}  // namespace bideg
