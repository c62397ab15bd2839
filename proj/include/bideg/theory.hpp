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

// Closed-form quantities of the bipartite (alpha, beta) process: negative
// binomial degree laws, the giant-component threshold and its fixed-point
// limit, connectivity limits, isolated-vertex Poisson means, and exact log
// probabilities of multigraphs and edge-partition events.
//
// Probabilities are computed in natural-log space; the normalizers
// (alpha L)_t overflow a double after a handful of steps.

#include <cstdint>
#include <optional>

#include "bideg/graph.hpp"
#include "bideg/params.hpp"
#include "bideg/trace.hpp"

namespace bideg {

// NB(shape, p): P(k) = (shape)_k / k! (1-p)^shape p^k.
struct NegBin {
  double shape = 1.0;
  double p = 0.0;

  double mean() const { return shape * p / (1.0 - p); }
};

// Throws InputError unless shape > 0 and 0 <= p < 1.
void validate(const NegBin& nb);

double nb_log_pmf(const NegBin& nb, std::int64_t k);
double nb_pmf(const NegBin& nb, std::int64_t k);
// ((1-p) / (1-p z))^shape for z in [0, 1].
double nb_pgf(const NegBin& nb, double z);
// E<Y>_k = (shape)_k (p / (1-p))^k, the k-th falling-factorial moment.
double nb_factorial_moment(const NegBin& nb, int k);
// Law of Y' with P(Y' = k) = (k+1) P(Y = k+1) / E[Y]; for NB it is
// NB(shape + 1, p). Throws DegenerateError when p = 0.
NegBin nb_shifted_size_bias(const NegBin& nb);

// Degree law of a uniform vertex of `side` after t steps:
// NB(rho, t / (t + rho |side|)).
NegBin degree_model(const Params& params, std::int64_t t, Side side);

// Critical edge density per vertex, sqrt(gamma) / ((gamma+1)
// sqrt((1+1/alpha)(1+1/beta))). Giants appear past t_c (L + R) edges.
double giant_threshold(const Params& params);

struct SuccessProbs {
  double p_left = 0.0;
  double p_right = 0.0;
};

// Success probabilities of the limiting degree laws at
// t = t_c (1 + epsilon) (L + R):
//   p_L = s_L / (s_L + alpha / (1+epsilon)),  s_L = sqrt(gamma / K),
//   p_R = s_R / (s_R + beta / (1+epsilon)),   s_R = sqrt(1 / (gamma K)),
// with K = (1+1/alpha)(1+1/beta). These coincide with degree_model at that t.
// Requires epsilon > -1.
SuccessProbs supercritical_probs(const Params& params, double epsilon);

struct EtaSolution {
  double eta_left = 1.0;
  double eta_right = 1.0;
  std::int64_t iterations = 0;
};

constexpr double kDefaultTolerance = 1e-12;
constexpr std::int64_t kMaxFixedPointIterations = 100000;

// Smallest fixed point of eta = G_R(G_L(eta)), G_L the pgf of
// NB(alpha+1, p_L) and G_R of NB(beta+1, p_R), by monotone iteration from 0.
// eta_right = G_L(eta_left). Throws NumericalError after
// kMaxFixedPointIterations without two iterates closer than tol.
EtaSolution solve_eta(const Params& params, double epsilon,
                      double tol = kDefaultTolerance);

// Residuals of two closed-form rewrites of the fixed-point equation at a
// given eta_L:
//   pgf form:     p_R ((1-p_L)/(1-eta p_L))^(alpha+1) - 1 + (1-p_R) eta^(-1/(beta+1))
//   printed form: same with (1 - eta)^(-1/(beta+1)) in place of eta^(...)
// The pgf form vanishes at the solution of solve_eta.
struct EtaResiduals {
  double pgf_form = 0.0;
  double printed_form = 0.0;
};
EtaResiduals eta_equation_residuals(const Params& params, double epsilon,
                                    double eta_left);

struct GiantPrediction {
  double t_c = 0.0;
  double epsilon = 0.0;
  double p_left = 0.0;
  double p_right = 0.0;
  double eta_left = 1.0;
  double eta_right = 1.0;
  double xi_left = 0.0;
  double xi_right = 0.0;
  double fraction = 0.0;  // (xi_L + gamma xi_R) / (1 + gamma)
};

// Requires epsilon > 0 (InputError otherwise).
GiantPrediction giant_fraction(const Params& params, double epsilon,
                               double tol = kDefaultTolerance);

// E[D_L'] E[D_R'] - 1 for the size-biased degree laws after t steps;
// positive exactly when t > t_c (L + R).
double supercriticality_margin(const Params& params, std::int64_t t);

// (L + R)^(1 + 1/min(alpha, beta)).
double connectivity_threshold(const Params& params);

// Limit of P(connected) when t / connectivity_threshold -> x. Throws
// InputError for x <= 0. x = +infinity gives 1.
double connectivity_limit(const Params& params, double x);

// Poisson mean (rho/x)^rho zeta^(-1-rho) of isolated vertices on `side` when
// t / (L+R)^(1 + 1/rho(side)) -> x. Requires x > 0.
double isolated_mean(const Params& params, Side side, double x);

struct ConnectivityPrediction {
  double tau = 0.0;
  double x = 0.0;
  double limit_prob = 0.0;
  // Isolated-vertex means with each side's own scale at t = x tau.
  double lambda_left = 0.0;
  double lambda_right = 0.0;
};
ConnectivityPrediction connectivity_prediction(const Params& params, double x);

// Exponent Z(alpha, beta): the simple graph stays disconnected up to
// (L+R)^(1+delta) edges for every delta < Z.
double sg_disconnect_exponent(const Params& params);

// log of x (x+1) ... (x+m-1); 0 when m = 0. Requires x > 0.
double log_rising_factorial(double x, std::int64_t m);
double log_factorial(std::int64_t n);
double log_binomial(std::int64_t n, std::int64_t k);

// log P(B*_t = g) for the multigraph process. Throws InputError unless
// g.edge_count() == t.
double exact_multigraph_logprob(const BipartiteMultigraph& g, std::int64_t t);

// Event that the left set A (|A| = a_size) sends all its t1 edge ends into
// the right set B (|B| = b_size), and B receives t1 + y edge ends in total.
struct PartitionEvent {
  std::int64_t a_size = 0;
  std::int64_t b_size = 0;
  std::int64_t t1 = 0;
  std::int64_t y = 0;
  std::int64_t t = 0;
};

// log P(B*_t in the event). May be -infinity. Throws InputError when
// t1 + y > t or a set size exceeds its side.
double edge_partition_logprob(const Params& params, const PartitionEvent& ev);

// Ratio P_simple(path) / P_multi(path) along an edge sequence H_0 = empty,
// H_{i+1} = H_i + edge i, and the cubic-degree bound
//   prod_i (1 - 4 (Q(H_i) + eta i) / ((i + alpha L)(i + beta R)))^(-1),
// eta = alpha^2 + beta^2. `q_bound` is empty when a bound factor is <= 0.
struct MeasureChange {
  double exact_ratio = 1.0;
  double log_exact_ratio = 0.0;
  std::optional<double> q_bound;
};
MeasureChange measure_change_ratio(const Trace& path);

}  // namespace bideg
