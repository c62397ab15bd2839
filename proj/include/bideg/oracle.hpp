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

// Brute-force ground truth for tiny instances. Every trajectory of the
// process is enumerated depth-first, multiplying the step probabilities
// (d_u + alpha)(d_v + beta) / Z exactly as the dynamics define them, with the
// normalizer Z summed explicitly at each step. Nothing here reuses the
// samplers or the closed forms in theory.hpp; the certificates at the bottom
// compare the two.

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "bideg/graph.hpp"
#include "bideg/params.hpp"
#include "bideg/samplers.hpp"
#include "bideg/theory.hpp"

namespace bideg::oracle {

// Enumeration refuses instances with (L R)^t above this.
constexpr std::int64_t kBranchBudget = 1'000'000;
// bcm_exact_distribution enumerates m! pairings; m is capped here.
constexpr std::int64_t kMaxPairingEdges = 6;

// Canonical encoding: "u:v:m" triples sorted by (u, v), joined by ';'.
// The empty graph encodes as "".
std::string encode_graph(const BipartiteMultigraph& g);
// Inverse of encode_graph. Throws InputError on malformed text.
BipartiteMultigraph decode_graph(const Params& params, std::string_view encoding);

struct ExactDistribution {
  std::int64_t left_count = 0;
  std::int64_t right_count = 0;
  // Sorted by encoding; encodings are unique.
  std::vector<std::pair<std::string, double>> entries;
  double total = 0.0;

  // 0 for encodings outside the support.
  double probability(std::string_view encoding) const;
};

struct TraceProbability {
  std::vector<Edge> edges;
  double probability = 0.0;
};

// All positive-probability edge sequences of length t, in lexicographic
// order. Throws CapacityError when (L R)^t > kBranchBudget.
std::vector<TraceProbability> enumerate_traces(const Params& params,
                                               std::int64_t t, Variant variant);

// Law of the graph after t steps, aggregated over traces.
ExactDistribution enumerate_process(const Params& params, std::int64_t t,
                                    Variant variant);

// Restriction to graphs with the given bi-degree sequence, renormalized.
// Throws ConditioningError when that set has zero mass.
ExactDistribution conditional_given_bidegree(const ExactDistribution& dist,
                                             const BiDegreeSequence& deg);

// Law of the configuration model: all m! orderings of the right half-edges
// against the left half-edges in vertex order, each with weight 1/m!.
// Throws CapacityError for m > kMaxPairingEdges, InputError for unequal
// sums or an empty side.
ExactDistribution bcm_exact_distribution(const BiDegreeSequence& deg);

// Mass of graphs where every neighbour of A lies in B, A carries t1 edge
// ends and B carries t1 + y. `a` and `b` list distinct vertices; ev.a_size
// and ev.b_size must match their lengths (InputError otherwise).
double event_mass(const ExactDistribution& dist, const PartitionEvent& ev,
                  std::span<const Vertex> a, std::span<const Vertex> b);

struct Certificate {
  std::string name;
  bool passed = false;
  std::int64_t checks = 0;
  double max_error = 0.0;
  double tolerance = 0.0;
  double seconds = 0.0;
  std::string detail;
};

constexpr double kTermTolerance = 1e-12;
constexpr double kMassTolerance = 1e-10;

// Instances (L, R, t) and offsets the certificates sweep.
struct GridPoint {
  std::int64_t left = 0;
  std::int64_t right = 0;
  std::int64_t t = 0;
};
std::vector<GridPoint> certificate_grid();
std::vector<double> certificate_offsets();

// exp(exact_multigraph_logprob) against enumeration, plus total mass.
Certificate certify_graph_law();
// Process law conditioned on each reachable bi-degree sequence against the
// configuration-model law.
Certificate certify_bcm_coupling();
// event_mass against exp(edge_partition_logprob) for every A, B, t1, y.
Certificate certify_edge_partition();
// P_simple = exact_ratio P_multi on every simple trace; exact_ratio <= q_bound.
Certificate certify_measure_change();

std::vector<Certificate> run_certificates();

}  // namespace bideg::oracle
