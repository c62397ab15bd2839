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

#include "bideg/theory.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <string>
#include <vector>

#include "bideg/errors.hpp"
#include "bideg/kernels.hpp"

namespace bideg {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// (x)_m in log space with the convention (0)_0 = 1, (0)_m = 0 for m > 0.
double log_rising_allow_zero(double x, std::int64_t m) {
  if (m == 0) return 0.0;
  if (x == 0.0) return kNegInf;
  return log_rising_factorial(x, m);
}

}  // namespace

void validate(const NegBin& nb) {
  if (!(nb.shape > 0.0)) throw InputError("negative binomial shape must be > 0");
  if (!(nb.p >= 0.0 && nb.p < 1.0)) throw InputError("negative binomial p must lie in [0, 1)");
}

double nb_log_pmf(const NegBin& nb, std::int64_t k) {
  validate(nb);
  if (k < 0) return kNegInf;
  if (nb.p == 0.0) return k == 0 ? 0.0 : kNegInf;
  return log_rising_factorial(nb.shape, k) - log_factorial(k) +
         nb.shape * std::log1p(-nb.p) + static_cast<double>(k) * std::log(nb.p);
}

double nb_pmf(const NegBin& nb, std::int64_t k) { return std::exp(nb_log_pmf(nb, k)); }

double nb_pgf(const NegBin& nb, double z) {
  validate(nb);
  if (!(z >= 0.0 && z <= 1.0)) throw InputError("pgf argument must lie in [0, 1]");
  return std::exp(nb.shape * (std::log1p(-nb.p) - std::log1p(-nb.p * z)));
}

double nb_factorial_moment(const NegBin& nb, int k) {
  validate(nb);
  if (k < 0) throw InputError("moment order must be non-negative");
  if (k == 0) return 1.0;
  if (nb.p == 0.0) return 0.0;
  return std::exp(log_rising_factorial(nb.shape, k) +
                  k * (std::log(nb.p) - std::log1p(-nb.p)));
}

NegBin nb_shifted_size_bias(const NegBin& nb) {
  validate(nb);
  if (nb.p == 0.0) {
    throw DegenerateError("size-biasing NB with p = 0 (mean zero) is undefined");
  }
  return {nb.shape + 1.0, nb.p};
}

NegBin degree_model(const Params& params, std::int64_t t, Side side) {
  if (t < 0) throw InputError("number of steps must be non-negative");
  const double td = static_cast<double>(t);
  const double rho = params.rho(side);
  return {rho, td / (td + rho * static_cast<double>(params.count(side)))};
}

double giant_threshold(const Params& params) {
  const double g = params.gamma();
  return std::sqrt(g) / ((g + 1.0) * std::sqrt((1.0 + 1.0 / params.alpha()) *
                                                (1.0 + 1.0 / params.beta())));
}

SuccessProbs supercritical_probs(const Params& params, double epsilon) {
  if (!(epsilon > -1.0)) throw InputError("epsilon must exceed -1");
  const double g = params.gamma();
  const double k = (1.0 + 1.0 / params.alpha()) * (1.0 + 1.0 / params.beta());
  const double s_left = std::sqrt(g / k);
  const double s_right = std::sqrt(1.0 / (g * k));
  return {s_left / (s_left + params.alpha() / (1.0 + epsilon)),
          s_right / (s_right + params.beta() / (1.0 + epsilon))};
}

EtaSolution solve_eta(const Params& params, double epsilon, double tol) {
  if (!(tol > 0.0)) throw InputError("tolerance must be positive");
  const SuccessProbs probs = supercritical_probs(params, epsilon);
  const NegBin left_biased{params.alpha() + 1.0, probs.p_left};
  const NegBin right_biased{params.beta() + 1.0, probs.p_right};
  double eta = 0.0;
  for (std::int64_t it = 1; it <= kMaxFixedPointIterations; ++it) {
    const double next = nb_pgf(right_biased, nb_pgf(left_biased, eta));
    if (std::fabs(next - eta) < tol) {
      return {next, nb_pgf(left_biased, next), it};
    }
    eta = next;
  }
  throw NumericalError("fixed-point iteration for eta_L did not converge within " +
                       std::to_string(kMaxFixedPointIterations) + " iterations");
}

EtaResiduals eta_equation_residuals(const Params& params, double epsilon,
                                    double eta_left) {
  const SuccessProbs probs = supercritical_probs(params, epsilon);
  const double pl = probs.p_left;
  const double pr = probs.p_right;
  const double lhs = pr * std::pow((1.0 - pl) / (1.0 - eta_left * pl), params.alpha() + 1.0);
  const double exponent = -1.0 / (params.beta() + 1.0);
  return {lhs - (1.0 - (1.0 - pr) * std::pow(eta_left, exponent)),
          lhs - (1.0 - (1.0 - pr) * std::pow(1.0 - eta_left, exponent))};
}

GiantPrediction giant_fraction(const Params& params, double epsilon, double tol) {
  if (!(epsilon > 0.0)) throw InputError("giant_fraction requires epsilon > 0");
  const SuccessProbs probs = supercritical_probs(params, epsilon);
  const EtaSolution eta = solve_eta(params, epsilon, tol);
  GiantPrediction out;
  out.t_c = giant_threshold(params);
  out.epsilon = epsilon;
  out.p_left = probs.p_left;
  out.p_right = probs.p_right;
  out.eta_left = eta.eta_left;
  out.eta_right = eta.eta_right;
  out.xi_left = 1.0 - nb_pgf({params.alpha(), probs.p_left}, eta.eta_left);
  out.xi_right = 1.0 - nb_pgf({params.beta(), probs.p_right}, eta.eta_right);
  const double g = params.gamma();
  out.fraction = (out.xi_left + g * out.xi_right) / (1.0 + g);
  return out;
}

double supercriticality_margin(const Params& params, std::int64_t t) {
  // Size-biased NB(rho+1, p) has mean (rho+1) p / (1-p); at p = 0 it is 0.
  const auto biased_mean = [&](Side side) {
    const NegBin nb = degree_model(params, t, side);
    return (nb.shape + 1.0) * nb.p / (1.0 - nb.p);
  };
  return biased_mean(Side::kLeft) * biased_mean(Side::kRight) - 1.0;
}

double connectivity_threshold(const Params& params) {
  const double m = std::min(params.alpha(), params.beta());
  return std::pow(static_cast<double>(params.total_count()), 1.0 + 1.0 / m);
}

double connectivity_limit(const Params& params, double x) {
  if (!(x > 0.0)) throw InputError("x must be positive");
  const double a = params.alpha();
  const double b = params.beta();
  const double g = params.gamma();
  if (a != b) {
    const double m = std::min(a, b);
    const Side bottleneck = a < b ? Side::kLeft : Side::kRight;
    return std::exp(-std::pow(m / x, m) * std::pow(params.zeta(bottleneck), -1.0 - m));
  }
  return std::exp(-std::pow(a / x, a) *
                  (std::pow(1.0 + g, -1.0 - a) + std::pow(1.0 + 1.0 / g, -1.0 - a)));
}

double isolated_mean(const Params& params, Side side, double x) {
  if (!(x > 0.0)) throw InputError("x must be positive");
  const double rho = params.rho(side);
  return std::pow(rho / x, rho) * std::pow(params.zeta(side), -1.0 - rho);
}

ConnectivityPrediction connectivity_prediction(const Params& params, double x) {
  ConnectivityPrediction out;
  out.tau = connectivity_threshold(params);
  out.x = x;
  out.limit_prob = connectivity_limit(params, x);
  const double n = static_cast<double>(params.total_count());
  const double t = x * out.tau;
  const auto side_x = [&](Side side) {
    return t / std::pow(n, 1.0 + 1.0 / params.rho(side));
  };
  out.lambda_left = isolated_mean(params, Side::kLeft, side_x(Side::kLeft));
  out.lambda_right = isolated_mean(params, Side::kRight, side_x(Side::kRight));
  return out;
}

double sg_disconnect_exponent(const Params& params) {
  const double a = params.alpha();
  const double b = params.beta();
  const double first = std::min(1.0 / (2.0 * (1.0 + a)), 1.0 / (2.0 * (1.0 + b)));
  const double second = std::max(std::min(1.0 / (4.0 + a), 1.0 / b),
                                 std::min(1.0 / (4.0 + b), 1.0 / a));
  return std::min(first, second);
}

double log_rising_factorial(double x, std::int64_t m) {
  if (!(x > 0.0)) throw InputError("rising factorial base must be positive");
  if (m < 0) throw InputError("rising factorial length must be non-negative");
  if (m == 0) return 0.0;
  // lgamma differences lose about log10((x+m)/m) digits to cancellation.
  const double md = static_cast<double>(m);
  if (m > 1000 && x < 1000.0 * md) return std::lgamma(x + md) - std::lgamma(x);
  return kernels::log_rising(x, m);
}

double log_factorial(std::int64_t n) {
  if (n < 0) throw InputError("factorial of a negative integer");
  return std::lgamma(static_cast<double>(n) + 1.0);
}

double log_binomial(std::int64_t n, std::int64_t k) {
  if (k < 0 || k > n) return kNegInf;
  return log_factorial(n) - log_factorial(k) - log_factorial(n - k);
}

double exact_multigraph_logprob(const BipartiteMultigraph& g, std::int64_t t) {
  if (g.edge_count() != t) {
    throw InputError("graph has " + std::to_string(g.edge_count()) +
                     " edges, expected t = " + std::to_string(t));
  }
  const Params& p = g.params();
  double total = 0.0;
  for (auto d : g.left_degrees()) total += log_rising_factorial(p.alpha(), d);
  for (auto d : g.right_degrees()) total += log_rising_factorial(p.beta(), d);
  total -= log_rising_factorial(p.alpha() * static_cast<double>(p.left_count()), t);
  total -= log_rising_factorial(p.beta() * static_cast<double>(p.right_count()), t);
  total += log_factorial(t);
  for (const auto& e : g.edges()) total -= log_factorial(e.count);
  return total;
}

double edge_partition_logprob(const Params& params, const PartitionEvent& ev) {
  if (ev.t < 0 || ev.t1 < 0 || ev.y < 0 || ev.t1 + ev.y > ev.t) {
    throw InputError("partition event needs 0 <= t1, 0 <= y, t1 + y <= t");
  }
  if (ev.a_size < 0 || ev.a_size > params.left_count() || ev.b_size < 0 ||
      ev.b_size > params.right_count()) {
    throw InputError("partition event set sizes out of range");
  }
  const double a = params.alpha();
  const double b = params.beta();
  const auto l = static_cast<double>(params.left_count());
  const auto r = static_cast<double>(params.right_count());
  const auto as = static_cast<double>(ev.a_size);
  const auto bs = static_cast<double>(ev.b_size);
  return log_binomial(ev.t, ev.t1) + log_binomial(ev.t - ev.t1, ev.y) +
         log_rising_allow_zero(as * a, ev.t1) +
         log_rising_allow_zero((l - as) * a, ev.t - ev.t1) -
         log_rising_factorial(a * l, ev.t) +
         log_rising_allow_zero(bs * b, ev.t1 + ev.y) +
         log_rising_allow_zero((r - bs) * b, ev.t - ev.t1 - ev.y) -
         log_rising_factorial(b * r, ev.t);
}

MeasureChange measure_change_ratio(const Trace& path) {
  const Params& p = path.params;
  const double a = p.alpha();
  const double b = p.beta();
  const double eta = a * a + b * b;
  std::vector<std::uint32_t> left_deg(static_cast<std::size_t>(p.left_count()), 0);
  std::vector<std::uint32_t> right_deg(static_cast<std::size_t>(p.right_count()), 0);
  std::vector<Edge> pairs;
  std::set<Edge> seen;
  std::uint64_t q = 0;

  MeasureChange out;
  double log_bound = 0.0;
  bool bound_valid = true;
  for (std::size_t i = 0; i < path.edges.size(); ++i) {
    const double id = static_cast<double>(i);
    const double total = (id + a * static_cast<double>(p.left_count())) *
                         (id + b * static_cast<double>(p.right_count()));
    const double blocked = kernels::adjacent_mass(pairs, left_deg, right_deg, a, b);
    out.log_exact_ratio -= std::log1p(-blocked / total);
    const double bound_factor = 1.0 - 4.0 * (static_cast<double>(q) + eta * id) / total;
    if (bound_factor <= 0.0) {
      bound_valid = false;
    } else {
      log_bound -= std::log(bound_factor);
    }

    const Edge e = path.edges[i];
    if (e.u >= left_deg.size() || e.v >= right_deg.size()) {
      throw InputError("path edge out of range");
    }
    // Q grows by (d+1)^3 - d^3 = 3d^2 + 3d + 1 at each endpoint.
    for (const std::uint64_t d : {std::uint64_t{left_deg[e.u]}, std::uint64_t{right_deg[e.v]}}) {
      q += 3 * d * d + 3 * d + 1;
    }
    ++left_deg[e.u];
    ++right_deg[e.v];
    if (seen.insert(e).second) pairs.push_back(e);
  }
  out.exact_ratio = std::exp(out.log_exact_ratio);
  if (bound_valid) out.q_bound = std::exp(log_bound);
  return out;
}

}  // namespace bideg
