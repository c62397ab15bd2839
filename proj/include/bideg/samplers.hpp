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

// Exact, seed-deterministic samplers for the multigraph process, the simple
// process, the bipartite configuration model and the pure-birth embedding.
//
// Both processes draw endpoints with the Polya-urn copy trick. After i edges,
// a left endpoint is a copy of a uniformly chosen earlier left endpoint with
// probability i / (i + alpha L), and a uniform left vertex otherwise, which
// gives vertex u probability (d_u + alpha) / (i + alpha L). One uniform real
// per side per draw realizes both branches: r ~ U[0, i + alpha L); r < i picks
// history entry floor(r), otherwise vertex floor((r - i) / alpha).

#include <cstdint>
#include <span>
#include <unordered_set>
#include <vector>

#include "bideg/graph.hpp"
#include "bideg/params.hpp"
#include "bideg/rng.hpp"
#include "bideg/trace.hpp"

namespace bideg {

// Histories X_1..X_i and Y_1..Y_i of sampled left and right endpoints.
class UrnState {
 public:
  explicit UrnState(Params params) : params_(params) {}

  const Params& params() const { return params_; }
  std::int64_t step() const { return static_cast<std::int64_t>(left_history_.size()); }
  std::span<const Vertex> left_history() const { return left_history_; }
  std::span<const Vertex> right_history() const { return right_history_; }

  void append(Edge e) {
    left_history_.push_back(e.u);
    right_history_.push_back(e.v);
  }

 private:
  Params params_;
  std::vector<Vertex> left_history_;
  std::vector<Vertex> right_history_;
};

// Branch probabilities of one copy-trick draw on `side` after `step` draws.
struct UrnBranchLaw {
  double copy = 0.0;        // copy some earlier entry (each with copy / step)
  double fresh_each = 0.0;  // pick this particular vertex uniformly
};
UrnBranchLaw urn_branch_law(const Params& params, Side side, std::int64_t step);

// Draws the next (left, right) pair, appends it to the histories and returns
// it. Left is drawn before right; each consumes exactly one uniform.
Edge multigraph_step(UrnState& state, Rng& rng);

// Incremental multigraph process. The RNG consumption per step is fixed, so
// the first t edges for a given seed do not depend on how far the process is
// advanced afterwards.
class MultigraphProcess {
 public:
  MultigraphProcess(Params params, std::uint64_t seed);

  void advance_to(std::int64_t t);

  const Params& params() const { return params_; }
  std::int64_t step() const { return static_cast<std::int64_t>(edges_.size()); }
  std::span<const Edge> edges() const { return edges_; }
  std::span<const std::uint32_t> left_degrees() const { return left_degrees_; }
  std::span<const std::uint32_t> right_degrees() const { return right_degrees_; }
  Trace trace() const { return {params_, edges_, false}; }

 private:
  Params params_;
  Rng rng_;
  std::vector<Edge> edges_;
  std::vector<std::uint32_t> left_degrees_;
  std::vector<std::uint32_t> right_degrees_;
};

// Set of adjacent (u, v) pairs; a bitmap for small L*R, hashed otherwise.
class PairSet {
 public:
  PairSet(std::int64_t left_count, std::int64_t right_count);
  bool contains(Edge e) const;
  void insert(Edge e);

 private:
  std::uint64_t key(Edge e) const {
    return static_cast<std::uint64_t>(e.u) * right_ + e.v;
  }
  std::uint64_t right_;
  bool dense_;
  std::vector<std::uint64_t> bits_;
  std::unordered_set<std::uint64_t> hashed_;
};

// Incremental simple process. Each step draws from the unrestricted product
// law and redraws while the pair is already adjacent. If a step exhausts its
// rejection budget, the acceptance probability
// 1 - sum_{adjacent} (d_u+alpha)(d_v+beta) / ((i+alpha L)(i+beta R)) is
// evaluated; below kEnumerationThreshold the process switches for good to
// direct sampling over the explicit list of non-adjacent pairs.
class SimpleProcess {
 public:
  static constexpr int kRejectionBudget = 1024;
  static constexpr double kEnumerationThreshold = 1e-3;

  struct Tuning {
    int rejection_budget = kRejectionBudget;  // >= 1
    double enumeration_threshold = kEnumerationThreshold;
  };

  SimpleProcess(Params params, std::uint64_t seed);
  // Throws InputError if tuning.rejection_budget < 1.
  SimpleProcess(Params params, std::uint64_t seed, Tuning tuning);

  // Throws CapacityError if t > L * R.
  void advance_to(std::int64_t t);

  const Params& params() const { return params_; }
  std::int64_t step() const { return static_cast<std::int64_t>(edges_.size()); }
  std::span<const Edge> edges() const { return edges_; }
  std::span<const std::uint32_t> left_degrees() const { return left_degrees_; }
  std::span<const std::uint32_t> right_degrees() const { return right_degrees_; }
  bool enumerating() const { return enumerating_; }
  Trace trace() const { return {params_, edges_, true}; }

 private:
  Edge draw_by_rejection_or_enumeration();
  Edge draw_by_enumeration();
  void accept(Edge e);

  Params params_;
  Tuning tuning_;
  Rng rng_;
  PairSet adjacent_;
  std::vector<Edge> edges_;
  std::vector<std::uint32_t> left_degrees_;
  std::vector<std::uint32_t> right_degrees_;
  bool enumerating_ = false;
};

Trace sample_multigraph_process(const Params& params, std::int64_t t,
                                std::uint64_t seed);
// Throws CapacityError if t > L * R.
Trace sample_simple_process(const Params& params, std::int64_t t,
                            std::uint64_t seed);

struct BiDegreeSequence {
  std::vector<std::uint32_t> left;
  std::vector<std::uint32_t> right;

  std::int64_t left_total() const;
  std::int64_t right_total() const;
  friend bool operator==(const BiDegreeSequence&, const BiDegreeSequence&) = default;
};

BiDegreeSequence bidegree_of(const BipartiteMultigraph& g);

// Uniform pairing of half-edges: the left half-edge sequence in vertex order
// against a uniformly shuffled right half-edge sequence. The returned graph
// carries alpha = beta = 1 as placeholders; the model has no offsets.
// Throws InputError when the two sides have different totals or a side is
// empty.
BipartiteMultigraph sample_bcm(const BiDegreeSequence& deg, std::uint64_t seed);

// Superposition of |side| independent pure-birth processes, vertex u giving
// its next birth at rate (births of u) + rho(side).
struct BirthSample {
  std::vector<std::uint32_t> counts;
  double clock = 0.0;  // time of the last recorded birth
  std::int64_t births = 0;
};

// Runs until the t-th birth (t >= 1) and returns its time tau_{side,t}.
BirthSample sample_birth_embedding(const Params& params, Side side,
                                   std::int64_t t, std::uint64_t seed);
// Runs up to the fixed time `horizon` and returns the counts at that time.
BirthSample sample_births_until(const Params& params, Side side, double horizon,
                                std::uint64_t seed);

struct StoppingBounds {
  double lower = 0.0;
  double upper = 0.0;
  double slack = 0.0;
  double failure_bound = 0.0;
};

// lower/upper = log(1 + (t -/+ s) / (rho |side|)) and
// failure_bound = (4 / s^2) (t^2 / (rho |side|) + t). Requires 0 < s <= t.
StoppingBounds stopping_time_bounds(const Params& params, Side side,
                                    std::int64_t t, double s);

// Harness default slack s = t (L + R)^(-1/4).
double default_slack(const Params& params, std::int64_t t);

}  // namespace bideg
