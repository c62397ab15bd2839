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

#include "bideg/graph.hpp"

#include <algorithm>
#include <functional>
#include <string>

#include "bideg/errors.hpp"
#include "bideg/kernels.hpp"
#include "union_find.hpp"

namespace bideg {

BipartiteMultigraph::BipartiteMultigraph(Params params)
    : params_(params),
      left_degrees_(static_cast<std::size_t>(params.left_count()), 0),
      right_degrees_(static_cast<std::size_t>(params.right_count()), 0) {}

void BipartiteMultigraph::add_edge(Vertex u, Vertex v) {
  if (u >= left_degrees_.size()) {
    throw InputError("left vertex " + std::to_string(u) + " out of range [0, " +
                     std::to_string(left_degrees_.size()) + ")");
  }
  if (v >= right_degrees_.size()) {
    throw InputError("right vertex " + std::to_string(v) + " out of range [0, " +
                     std::to_string(right_degrees_.size()) + ")");
  }
  ++multiplicity_[key(u, v)];
  ++left_degrees_[u];
  ++right_degrees_[v];
  ++edge_count_;
}

std::uint32_t BipartiteMultigraph::multiplicity(Vertex u, Vertex v) const {
  if (u >= left_degrees_.size() || v >= right_degrees_.size()) return 0;
  const auto it = multiplicity_.find(key(u, v));
  return it == multiplicity_.end() ? 0 : it->second;
}

std::vector<EdgeMultiplicity> BipartiteMultigraph::edges() const {
  const auto right = static_cast<std::uint64_t>(params_.right_count());
  std::vector<EdgeMultiplicity> out;
  out.reserve(multiplicity_.size());
  for (const auto& [k, count] : multiplicity_) {
    out.push_back({static_cast<Vertex>(k / right), static_cast<Vertex>(k % right),
                   count});
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return a.u != b.u ? a.u < b.u : a.v < b.v;
  });
  return out;
}

std::vector<Edge> BipartiteMultigraph::support() const {
  std::vector<Edge> out;
  out.reserve(multiplicity_.size());
  for (const auto& e : edges()) out.push_back({e.u, e.v});
  return out;
}

ComponentSummary component_summary(std::int64_t left_count,
                                   std::int64_t right_count,
                                   std::span<const Edge> edges) {
  const auto left = static_cast<std::uint32_t>(left_count);
  internal::UnionFind uf(static_cast<std::size_t>(left_count + right_count));
  for (const Edge& e : edges) {
    if (e.u >= left_count || e.v >= right_count) {
      throw InputError("edge endpoint out of range");
    }
    uf.unite(e.u, left + e.v);
  }

  ComponentSummary summary;
  for (std::uint32_t x = 0; x < uf.element_count(); ++x) {
    if (!uf.is_root(x)) continue;
    const std::int64_t size = uf.size_of_root(x);
    summary.sizes.push_back(size);
    if (size == 1) {
      if (x < left) {
        ++summary.isolated_left;
      } else {
        ++summary.isolated_right;
      }
    }
  }
  std::sort(summary.sizes.begin(), summary.sizes.end(), std::greater<>());
  summary.is_connected = summary.sizes.size() == 1;
  return summary;
}

ComponentSummary component_summary(const BipartiteMultigraph& g) {
  const std::vector<Edge> pairs = g.support();
  return component_summary(g.params().left_count(), g.params().right_count(),
                           pairs);
}

std::uint64_t q_statistic(const BipartiteMultigraph& g) {
  return kernels::sum_cubes(g.left_degrees()) +
         kernels::sum_cubes(g.right_degrees());
}

}  // namespace bideg
