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

#include <cstdint>
#include <span>
#include <unordered_map>
#include <vector>

#include "bideg/params.hpp"

namespace bideg {

struct EdgeMultiplicity {
  Vertex u = 0;
  Vertex v = 0;
  std::uint32_t count = 0;

  friend bool operator==(const EdgeMultiplicity&,
                         const EdgeMultiplicity&) = default;
};

// Bipartite multigraph on dense vertex ranges [0, L) and [0, R). Edges can
// only be added. Degrees count multiplicity.
class BipartiteMultigraph {
 public:
  explicit BipartiteMultigraph(Params params);

  // Throws InputError on an out-of-range endpoint.
  void add_edge(Vertex u, Vertex v);

  std::uint32_t multiplicity(Vertex u, Vertex v) const;
  const Params& params() const { return params_; }
  std::span<const std::uint32_t> left_degrees() const { return left_degrees_; }
  std::span<const std::uint32_t> right_degrees() const { return right_degrees_; }
  std::int64_t edge_count() const { return edge_count_; }
  std::size_t distinct_pair_count() const { return multiplicity_.size(); }

  // Distinct adjacent pairs with their multiplicities, sorted by (u, v).
  std::vector<EdgeMultiplicity> edges() const;
  // Distinct adjacent pairs, sorted by (u, v).
  std::vector<Edge> support() const;

 private:
  std::uint64_t key(Vertex u, Vertex v) const {
    return static_cast<std::uint64_t>(u) *
               static_cast<std::uint64_t>(params_.right_count()) + v;
  }

  Params params_;
  std::unordered_map<std::uint64_t, std::uint32_t> multiplicity_;
  std::vector<std::uint32_t> left_degrees_;
  std::vector<std::uint32_t> right_degrees_;
  std::int64_t edge_count_ = 0;
};

// Connected components of the simple support. Isolated vertices count as
// components of size one.
struct ComponentSummary {
  std::vector<std::int64_t> sizes;  // descending
  std::int64_t isolated_left = 0;
  std::int64_t isolated_right = 0;
  bool is_connected = false;

  std::int64_t largest() const { return sizes.empty() ? 0 : sizes[0]; }
  std::int64_t second_largest() const { return sizes.size() < 2 ? 0 : sizes[1]; }
  // Every component other than the largest is a single vertex.
  bool rest_are_isolated() const { return sizes.size() < 2 || sizes[1] == 1; }
};

ComponentSummary component_summary(const BipartiteMultigraph& g);
// Same query straight from an edge list; repeated edges are harmless.
ComponentSummary component_summary(std::int64_t left_count,
                                   std::int64_t right_count,
                                   std::span<const Edge> edges);

// Sum of cubed degrees over both sides.
std::uint64_t q_statistic(const BipartiteMultigraph& g);

}  // namespace bideg
