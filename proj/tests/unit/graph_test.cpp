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

#include <numeric>

#include "bideg/errors.hpp"
#include "bideg/graph.hpp"
#include "bideg/params.hpp"
#include "bideg/samplers.hpp"
#include "bideg/trace.hpp"

namespace bideg {
namespace {

TEST(Params, RejectsInvalidValues) {
  EXPECT_THROW(Params(0.0, 1.0, 1, 1), InputError);
  EXPECT_THROW(Params(1.0, -1.0, 1, 1), InputError);
  EXPECT_THROW(Params(1.0, 1.0, 0, 1), InputError);
  EXPECT_THROW(Params(1.0, 1.0, 1, 0), InputError);
  EXPECT_THROW(Params(std::nan(""), 1.0, 1, 1), InputError);
}

TEST(Params, SideMaps) {
  const Params p(2.0, 3.0, 100, 50);
  EXPECT_DOUBLE_EQ(p.gamma(), 0.5);
  EXPECT_DOUBLE_EQ(p.rho(Side::kLeft), 2.0);
  EXPECT_DOUBLE_EQ(p.rho(Side::kRight), 3.0);
  EXPECT_DOUBLE_EQ(p.zeta(Side::kLeft), 1.5);
  EXPECT_DOUBLE_EQ(p.zeta(Side::kRight), 3.0);
  EXPECT_EQ(p.count(Side::kRight), 50);
  EXPECT_EQ(p.total_count(), 150);
}

TEST(Params, ParsesNames) {
  EXPECT_EQ(parse_side("Left"), Side::kLeft);
  EXPECT_EQ(parse_side("r"), Side::kRight);
  EXPECT_THROW(parse_side("up"), InputError);
  EXPECT_EQ(parse_variant("MULTI"), Variant::kMulti);
  EXPECT_EQ(parse_variant("simple"), Variant::kSimple);
  EXPECT_THROW(parse_variant("both"), InputError);
}

TEST(Graph, SingleInsertion) {
  BipartiteMultigraph g(Params(1, 1, 2, 2));
  g.add_edge(0, 0);
  EXPECT_EQ(g.left_degrees()[0], 1U);
  EXPECT_EQ(g.right_degrees()[0], 1U);
  EXPECT_EQ(g.edge_count(), 1);
}

TEST(Graph, RepeatedPairIsMultiEdge) {
  BipartiteMultigraph g(Params(1, 1, 2, 2));
  g.add_edge(0, 0);
  g.add_edge(0, 0);
  EXPECT_EQ(g.multiplicity(0, 0), 2U);
  EXPECT_EQ(g.multiplicity(1, 0), 0U);
  EXPECT_EQ(g.edge_count(), 2);
  EXPECT_EQ(g.distinct_pair_count(), 1U);
  ASSERT_EQ(g.edges().size(), 1U);
  EXPECT_EQ(g.edges()[0], (EdgeMultiplicity{0, 0, 2}));
}

TEST(Graph, OutOfRangeEndpointThrows) {
  BipartiteMultigraph g(Params(1, 1, 2, 3));
  EXPECT_THROW(g.add_edge(2, 0), InputError);
  EXPECT_THROW(g.add_edge(0, 3), InputError);
  EXPECT_EQ(g.edge_count(), 0);
}

TEST(Graph, ReplayConservesDegrees) {
  const Params p(0.7, 1.3, 5, 4);
  const Trace tr = sample_multigraph_process(p, 40, 11);
  const BipartiteMultigraph g = replay(tr);
  EXPECT_EQ(g.edge_count(), 40);
  const auto l = g.left_degrees();
  const auto r = g.right_degrees();
  EXPECT_EQ(std::accumulate(l.begin(), l.end(), 0), 40);
  EXPECT_EQ(std::accumulate(r.begin(), r.end(), 0), 40);
  std::uint32_t total = 0;
  for (const auto& e : g.edges()) {
    EXPECT_GE(e.count, 1U);
    total += e.count;
  }
  EXPECT_EQ(total, 40U);
}

TEST(Components, EmptyGraph) {
  const ComponentSummary s = component_summary(BipartiteMultigraph(Params(1, 1, 2, 2)));
  EXPECT_EQ(s.sizes, (std::vector<std::int64_t>{1, 1, 1, 1}));
  EXPECT_EQ(s.isolated_left, 2);
  EXPECT_EQ(s.isolated_right, 2);
  EXPECT_FALSE(s.is_connected);
}

TEST(Components, Path) {
  BipartiteMultigraph g(Params(1, 1, 2, 2));
  g.add_edge(0, 0);
  g.add_edge(1, 0);
  const ComponentSummary s = component_summary(g);
  EXPECT_EQ(s.sizes, (std::vector<std::int64_t>{3, 1}));
  EXPECT_FALSE(s.is_connected);
  EXPECT_EQ(s.isolated_left, 0);
  EXPECT_EQ(s.isolated_right, 1);
  EXPECT_TRUE(s.rest_are_isolated());
}

TEST(Components, CompleteBipartite) {
  BipartiteMultigraph g(Params(1, 1, 2, 2));
  for (Vertex u = 0; u < 2; ++u) {
    for (Vertex v = 0; v < 2; ++v) g.add_edge(u, v);
  }
  const ComponentSummary s = component_summary(g);
  EXPECT_EQ(s.sizes, (std::vector<std::int64_t>{4}));
  EXPECT_TRUE(s.is_connected);
}

TEST(Components, IgnoresMultiplicity) {
  const Params p(1, 1, 6, 5);
  const Trace tr = sample_multigraph_process(p, 12, 5);
  BipartiteMultigraph once(p);
  for (const Edge& e : replay(tr).support()) once.add_edge(e.u, e.v);
  const ComponentSummary a = component_summary(replay(tr));
  const ComponentSummary b = component_summary(once);
  EXPECT_EQ(a.sizes, b.sizes);
  EXPECT_EQ(a.isolated_left, b.isolated_left);
}

TEST(Components, InvariantsOnRandomGraphs) {
  const Params p(1, 1, 30, 20);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const ComponentSummary s = component_summary(replay(sample_multigraph_process(p, 25, seed)));
    EXPECT_EQ(std::accumulate(s.sizes.begin(), s.sizes.end(), std::int64_t{0}), 50);
    EXPECT_TRUE(std::is_sorted(s.sizes.rbegin(), s.sizes.rend()));
    EXPECT_EQ(s.is_connected, s.sizes.size() == 1);
    EXPECT_EQ(s.isolated_left + s.isolated_right, std::count(s.sizes.begin(), s.sizes.end(), 1));
  }
}

TEST(QStatistic, SmallCases) {
  BipartiteMultigraph g(Params(1, 1, 2, 2));
  EXPECT_EQ(q_statistic(g), 0U);
  g.add_edge(0, 0);
  EXPECT_EQ(q_statistic(g), 2U);
  g.add_edge(0, 0);
  EXPECT_EQ(q_statistic(g), 16U);
}

TEST(QStatistic, NonDecreasingUnderInsertion) {
  const Params p(1, 1, 10, 10);
  const Trace tr = sample_multigraph_process(p, 60, 3);
  BipartiteMultigraph g(p);
  std::uint64_t last = 0;
  for (const Edge& e : tr.edges) {
    g.add_edge(e.u, e.v);
    const std::uint64_t q = q_statistic(g);
    EXPECT_GT(q, last);
    last = q;
  }
}

TEST(TraceFormat, ExactBytes) {
  const Trace tr{Params(1.0, 0.5, 2, 3), {{0, 2}, {1, 0}}, true};
  EXPECT_EQ(format_trace(tr), "bipartite-trace 2 3 2 1 0.5 1\n0 2\n1 0\n");
}

TEST(TraceFormat, RoundTrip) {
  const Trace tr = sample_multigraph_process(Params(0.3, 2.25, 7, 9), 50, 99);
  const Trace back = parse_trace(format_trace(tr));
  EXPECT_EQ(back.params, tr.params);
  EXPECT_EQ(back.edges, tr.edges);
  EXPECT_EQ(back.simple, tr.simple);
  EXPECT_EQ(format_trace(back), format_trace(tr));
}

TEST(TraceFormat, RejectsMalformedInput) {
  EXPECT_THROW(parse_trace(""), InputError);
  EXPECT_THROW(parse_trace("graph 2 2 0 1 1 0\n"), InputError);
  EXPECT_THROW(parse_trace("bipartite-trace 2 2 2 1 1 0\n0 0\n"), InputError);
  EXPECT_THROW(parse_trace("bipartite-trace 2 2 1 1 1 0\n2 0\n"), InputError);
  EXPECT_THROW(parse_trace("bipartite-trace 2 2 1 1 1 7\n0 0\n"), InputError);
  EXPECT_THROW(parse_trace("bipartite-trace 2 2 1 1 1 0\n0 x\n"), InputError);
  EXPECT_THROW(parse_trace("bipartite-trace 2 2 2 1 1 1\n0 0\n0 0\n"), InputError);
  EXPECT_NO_THROW(parse_trace("bipartite-trace 2 2 2 1 1 0\n0 0\n0 0\n"));
}

TEST(TraceFormat, FormatRealRoundTrips) {
  for (double v : {0.1, 1.0 / 3.0, 2.0, 1e-300, 12345.678}) {
    EXPECT_EQ(std::stod(format_real(v)), v);
  }
  EXPECT_EQ(format_real(2.0), "2");
}

}  // namespace
}  // namespace bideg
