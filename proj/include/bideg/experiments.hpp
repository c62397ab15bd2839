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

// Seeded Monte Carlo campaigns checked against the closed forms in theory.hpp.
//
// Replica r of a campaign uses seed replica_seed(master_seed, r). Replicas run
// on a thread pool; results are stored by replica index, so a report depends
// only on its configuration, never on scheduling or thread count.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bideg/params.hpp"

namespace bideg::experiments {

// Isolated-vertex regimes: t = x (L+R)^(1+1/rho) at the Poisson scale,
// divided by log(L+R) below it, multiplied by log(L+R) above it.
enum class IsolatedRegime { kPoint, kBelow, kAbove };
std::string_view to_string(IsolatedRegime regime);
IsolatedRegime parse_regime(std::string_view text);

struct ExperimentConfig {
  Params params{1.0, 1.0, 1000, 1000};
  double epsilon = 0.5;  // giant; negative selects t_c (1 - |epsilon|)
  double x = 1.0;        // isolated, connectivity
  double delta = 0.1;    // sg-disconnect
  std::optional<std::int64_t> t;  // degrees; defaults to L + R
  Side side = Side::kLeft;        // isolated
  IsolatedRegime regime = IsolatedRegime::kPoint;
  std::int64_t replicas = 20;
  std::uint64_t master_seed = 1;
  // Each experiment has its own default; connectivity accepts only multi and
  // sg-disconnect only simple.
  std::optional<Variant> variant;
  unsigned threads = 0;  // 0: one per hardware thread
};

struct ReplicaRecord {
  std::int64_t index = 0;
  std::uint64_t seed = 0;
  std::vector<double> values;  // aligned with ExperimentReport::columns
};

// A pass/fail check `observed <comparison> threshold`, comparison one of
// "<", "<=", ">=", "==".
struct Gate {
  std::string name;
  double observed = 0.0;
  std::string comparison;
  double threshold = 0.0;
  bool passed = false;
};

struct ExperimentReport {
  std::string experiment;
  std::vector<std::pair<std::string, std::string>> settings;
  std::vector<std::string> columns;
  std::vector<ReplicaRecord> records;
  std::vector<std::pair<std::string, double>> aggregates;
  double theory_value = 0.0;  // NaN when no claim applies
  std::vector<Gate> gates;
  std::vector<std::string> warnings;
  // False when the configuration lies outside the claim's hypothesis.
  bool asserted = true;

  bool passed() const;
  // "pass", "fail" or "not-asserted".
  std::string verdict() const;
  double aggregate(const std::string& name) const;  // throws if absent
};

// Per-replica table: replica_index,seed,<columns>. Reals use their shortest
// round-trip form.
std::string records_csv(const ExperimentReport& report);
// Settings, aggregates, theory_value, gates, warnings and verdict.
std::string summary_json(const ExperimentReport& report);

// Largest and second-largest component fractions at
// t = round(t_c (1 + epsilon) (L + R)). Default variant: simple.
// Supercritical gates: |mean C1 - giant_fraction| / giant_fraction < 0.03 and
// mean C2 < 0.01; subcritical: mean C1 < 0.02.
ExperimentReport run_giant(const ExperimentConfig& config);

// Pooled left and right degree histograms against degree_model. Default
// variant: multi. Gates: TV < 0.02 per side, third factorial moment within
// 5% of the negative binomial value.
ExperimentReport run_degrees(const ExperimentConfig& config);

// Isolated vertices on config.side. Default variant: multi. Point regime
// gates: |mean - lambda| < 3 sqrt(lambda / replicas), TV over
// {0, 1, 2, 3, >=4} against Poisson(lambda) < 0.05. Below: frequency of at
// least one isolated vertex >= 0.95; above: <= 0.05.
ExperimentReport run_isolated(const ExperimentConfig& config);

// Connectivity of the multigraph at t = round(x tau) and, on the same
// trajectory, at 2t. Gates: |frequency - connectivity_limit| <= 0.10, no
// replica connected at t but not at 2t, and for x >= 1 the non-largest
// components are single vertices in >= 95% of replicas.
ExperimentReport run_connectivity(const ExperimentConfig& config);

// run_connectivity at each total size in `totals` (split in the ratio
// gamma), plus a trend gate per consecutive pair:
// dev_{k+1} <= dev_k + 2 sqrt(se_k^2 + se_{k+1}^2), dev = |frequency - limit|.
struct ConnectivityTrend {
  std::vector<ExperimentReport> reports;
  std::vector<Gate> gates;
  bool passed() const;
};
ConnectivityTrend run_connectivity_trend(const ExperimentConfig& config,
                                         const std::vector<std::int64_t>& totals);

// Disconnection of the simple graph at t = round((L+R)^(1+delta)), and on
// the same trajectory at delta k/4 for k = 0..3. Gates (delta < Z only):
// frequency >= 0.9 and per-replica indicators non-increasing in delta.
ExperimentReport run_sg_disconnect(const ExperimentConfig& config);

// (1/2) sum |p_k - q_k| with the mass missing from each vector, 1 - sum,
// compared as one more bucket. Throws InputError on length mismatch.
double tv_distance(const std::vector<double>& p, const std::vector<double>& q);

struct Interval {
  double low = 0.0;
  double high = 1.0;
};
// Wilson score interval at 95% confidence.
Interval wilson_interval(std::int64_t successes, std::int64_t trials);

double poisson_pmf(double lambda, std::int64_t k);

}  // namespace bideg::experiments
