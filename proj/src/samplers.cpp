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

#include "bideg/samplers.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "bideg/errors.hpp"
#include "bideg/kernels.hpp"

namespace bideg {

namespace {

// One copy-trick draw. `history(j)` returns the j-th earlier entry.
template <typename History>
Vertex urn_draw(Rng& rng, std::int64_t step, double rho, std::int64_t count,
                History&& history) {
  const double i = static_cast<double>(step);
  const double r = rng.uniform01() * (i + rho * static_cast<double>(count));
  if (r < i) {
    const auto j = std::min<std::int64_t>(static_cast<std::int64_t>(r), step - 1);
    return history(j);
  }
  const auto v = std::min<std::int64_t>(static_cast<std::int64_t>((r - i) / rho),
                                        count - 1);
  return static_cast<Vertex>(v);
}

void check_capacity(const Params& params, std::int64_t t) {
  if (t < 0) throw InputError("number of steps must be non-negative");
  const auto cap = static_cast<__int128>(params.left_count()) * params.right_count();
  if (static_cast<__int128>(t) > cap) {
    throw CapacityError("simple process cannot exceed L*R = " +
                        std::to_string(static_cast<long long>(cap)) + " edges");
  }
}

}  // namespace

UrnBranchLaw urn_branch_law(const Params& params, Side side, std::int64_t step) {
  const double i = static_cast<double>(step);
  const double weight = params.rho(side) * static_cast<double>(params.count(side));
  return {i / (i + weight), params.rho(side) / (i + weight)};
}

Edge multigraph_step(UrnState& state, Rng& rng) {
  const Params& p = state.params();
  const std::int64_t i = state.step();
  const auto left = state.left_history();
  const auto right = state.right_history();
  const Vertex u = urn_draw(rng, i, p.alpha(), p.left_count(),
                            [&](std::int64_t j) { return left[j]; });
  const Vertex v = urn_draw(rng, i, p.beta(), p.right_count(),
                            [&](std::int64_t j) { return right[j]; });
  state.append({u, v});
  return {u, v};
}

MultigraphProcess::MultigraphProcess(Params params, std::uint64_t seed)
    : params_(params),
      rng_(seed),
      left_degrees_(static_cast<std::size_t>(params.left_count()), 0),
      right_degrees_(static_cast<std::size_t>(params.right_count()), 0) {}

void MultigraphProcess::advance_to(std::int64_t t) {
  if (t < 0) throw InputError("number of steps must be non-negative");
  edges_.reserve(static_cast<std::size_t>(std::max<std::int64_t>(t, step())));
  const double alpha = params_.alpha();
  const double beta = params_.beta();
  const std::int64_t left = params_.left_count();
  const std::int64_t right = params_.right_count();
  while (step() < t) {
    const std::int64_t i = step();
    const Vertex u = urn_draw(rng_, i, alpha, left,
                              [&](std::int64_t j) { return edges_[j].u; });
    const Vertex v = urn_draw(rng_, i, beta, right,
                              [&](std::int64_t j) { return edges_[j].v; });
    edges_.push_back({u, v});
    ++left_degrees_[u];
    ++right_degrees_[v];
  }
}

PairSet::PairSet(std::int64_t left_count, std::int64_t right_count)
    : right_(static_cast<std::uint64_t>(right_count)) {
  const auto cells = static_cast<__int128>(left_count) * right_count;
  dense_ = cells <= (__int128{1} << 26);
  if (dense_) bits_.assign(static_cast<std::size_t>((cells + 63) / 64), 0);
}

bool PairSet::contains(Edge e) const {
  const std::uint64_t k = key(e);
  if (dense_) return (bits_[k >> 6] >> (k & 63)) & 1U;
  return hashed_.contains(k);
}

void PairSet::insert(Edge e) {
  const std::uint64_t k = key(e);
  if (dense_) {
    bits_[k >> 6] |= std::uint64_t{1} << (k & 63);
  } else {
    hashed_.insert(k);
  }
}

SimpleProcess::SimpleProcess(Params params, std::uint64_t seed)
    : SimpleProcess(params, seed, Tuning{}) {}

SimpleProcess::SimpleProcess(Params params, std::uint64_t seed, Tuning tuning)
    : params_(params),
      tuning_(tuning),
      rng_(seed),
      adjacent_(params.left_count(), params.right_count()),
      left_degrees_(static_cast<std::size_t>(params.left_count()), 0),
      right_degrees_(static_cast<std::size_t>(params.right_count()), 0) {
  if (tuning.rejection_budget < 1) throw InputError("rejection budget must be >= 1");
}

void SimpleProcess::advance_to(std::int64_t t) {
  check_capacity(params_, t);
  edges_.reserve(static_cast<std::size_t>(std::max<std::int64_t>(t, step())));
  while (step() < t) accept(draw_by_rejection_or_enumeration());
}

void SimpleProcess::accept(Edge e) {
  adjacent_.insert(e);
  edges_.push_back(e);
  ++left_degrees_[e.u];
  ++right_degrees_[e.v];
}

Edge SimpleProcess::draw_by_rejection_or_enumeration() {
  const std::int64_t i = step();
  const double alpha = params_.alpha();
  const double beta = params_.beta();
  for (;;) {
    if (enumerating_) return draw_by_enumeration();
    for (int attempt = 0; attempt < tuning_.rejection_budget; ++attempt) {
      const Vertex u = urn_draw(rng_, i, alpha, params_.left_count(),
                                [&](std::int64_t j) { return edges_[j].u; });
      const Vertex v = urn_draw(rng_, i, beta, params_.right_count(),
                                [&](std::int64_t j) { return edges_[j].v; });
      if (!adjacent_.contains({u, v})) return {u, v};
    }
    // The accepted value of a rejection sampler is independent of how many
    // proposals it took, so switching samplers here keeps the law exact.
    const double blocked =
        kernels::adjacent_mass(edges_, left_degrees_, right_degrees_, alpha, beta);
    const double total = (static_cast<double>(i) + alpha * params_.left_count()) *
                         (static_cast<double>(i) + beta * params_.right_count());
    if (1.0 - blocked / total < tuning_.enumeration_threshold) enumerating_ = true;
  }
}

Edge SimpleProcess::draw_by_enumeration() {
  const auto left = static_cast<Vertex>(params_.left_count());
  const auto right = static_cast<Vertex>(params_.right_count());
  const double alpha = params_.alpha();
  const double beta = params_.beta();
  double total = 0.0;
  for (Vertex u = 0; u < left; ++u) {
    for (Vertex v = 0; v < right; ++v) {
      if (adjacent_.contains({u, v})) continue;
      total += (left_degrees_[u] + alpha) * (right_degrees_[v] + beta);
    }
  }
  const double target = rng_.uniform01() * total;
  double running = 0.0;
  Edge last{};
  for (Vertex u = 0; u < left; ++u) {
    for (Vertex v = 0; v < right; ++v) {
      if (adjacent_.contains({u, v})) continue;
      running += (left_degrees_[u] + alpha) * (right_degrees_[v] + beta);
      last = {u, v};
      if (target < running) return last;
    }
  }
  return last;  // rounding left target at the very top of the range
}

Trace sample_multigraph_process(const Params& params, std::int64_t t,
                                std::uint64_t seed) {
  MultigraphProcess process(params, seed);
  process.advance_to(t);
  return process.trace();
}

Trace sample_simple_process(const Params& params, std::int64_t t,
                            std::uint64_t seed) {
  check_capacity(params, t);
  SimpleProcess process(params, seed);
  process.advance_to(t);
  return process.trace();
}

std::int64_t BiDegreeSequence::left_total() const {
  std::int64_t total = 0;
  for (auto d : left) total += d;
  return total;
}

std::int64_t BiDegreeSequence::right_total() const {
  std::int64_t total = 0;
  for (auto d : right) total += d;
  return total;
}

BiDegreeSequence bidegree_of(const BipartiteMultigraph& g) {
  return {{g.left_degrees().begin(), g.left_degrees().end()},
          {g.right_degrees().begin(), g.right_degrees().end()}};
}

BipartiteMultigraph sample_bcm(const BiDegreeSequence& deg, std::uint64_t seed) {
  if (deg.left.empty() || deg.right.empty()) {
    throw InputError("bi-degree sequence needs at least one vertex per side");
  }
  if (deg.left_total() != deg.right_total()) {
    throw InputError("bi-degree sequence sides must have equal sums (" +
                     std::to_string(deg.left_total()) + " vs " +
                     std::to_string(deg.right_total()) + ")");
  }
  std::vector<Vertex> left_half, right_half;
  left_half.reserve(static_cast<std::size_t>(deg.left_total()));
  right_half.reserve(left_half.capacity());
  for (Vertex u = 0; u < deg.left.size(); ++u) left_half.insert(left_half.end(), deg.left[u], u);
  for (Vertex v = 0; v < deg.right.size(); ++v) right_half.insert(right_half.end(), deg.right[v], v);

  Rng rng(seed);
  for (std::size_t i = right_half.size(); i > 1; --i) {
    std::swap(right_half[i - 1], right_half[rng.below(i)]);
  }
  BipartiteMultigraph g(Params(1.0, 1.0, static_cast<std::int64_t>(deg.left.size()),
                               static_cast<std::int64_t>(deg.right.size())));
  for (std::size_t i = 0; i < left_half.size(); ++i) g.add_edge(left_half[i], right_half[i]);
  return g;
}

namespace {

// Advances the birth superposition. Each event draws the waiting time first,
// then the vertex; `stop(next_clock)` is checked before an event is recorded.
template <typename Stop>
BirthSample run_births(const Params& params, Side side, std::uint64_t seed,
                       Stop&& stop) {
  const double rho = params.rho(side);
  const std::int64_t count = params.count(side);
  BirthSample sample;
  sample.counts.assign(static_cast<std::size_t>(count), 0);
  std::vector<Vertex> history;
  Rng rng(seed);
  for (;;) {
    const std::int64_t i = sample.births;
    const double rate = static_cast<double>(i) + rho * static_cast<double>(count);
    const double next_clock = sample.clock + rng.exponential(rate);
    if (stop(i, next_clock)) break;
    const Vertex u = urn_draw(rng, i, rho, count,
                              [&](std::int64_t j) { return history[j]; });
    history.push_back(u);
    ++sample.counts[u];
    sample.clock = next_clock;
    ++sample.births;
  }
  return sample;
}

}  // namespace

BirthSample sample_birth_embedding(const Params& params, Side side,
                                   std::int64_t t, std::uint64_t seed) {
  if (t < 1) throw InputError("birth embedding needs t >= 1");
  return run_births(params, side, seed,
                    [t](std::int64_t births, double) { return births >= t; });
}

BirthSample sample_births_until(const Params& params, Side side, double horizon,
                                std::uint64_t seed) {
  if (!(horizon >= 0.0)) throw InputError("horizon must be non-negative");
  BirthSample sample = run_births(
      params, side, seed, [horizon](std::int64_t, double next) { return next > horizon; });
  sample.clock = horizon;
  return sample;
}

StoppingBounds stopping_time_bounds(const Params& params, Side side,
                                    std::int64_t t, double s) {
  if (!(s > 0.0) || s > static_cast<double>(t)) {
    throw InputError("slack s must satisfy 0 < s <= t");
  }
  const double scale = params.rho(side) * static_cast<double>(params.count(side));
  const double td = static_cast<double>(t);
  StoppingBounds b;
  b.lower = std::log1p((td - s) / scale);
  b.upper = std::log1p((td + s) / scale);
  b.slack = s;
  b.failure_bound = 4.0 / (s * s) * (td * td / scale + td);
  return b;
}

double default_slack(const Params& params, std::int64_t t) {
  return static_cast<double>(t) *
         std::pow(static_cast<double>(params.total_count()), -0.25);
}

}  // namespace bideg
