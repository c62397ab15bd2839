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

#include "bideg/oracle.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <map>
#include <numeric>
#include <string>

#include "bideg/errors.hpp"

namespace bideg::oracle {

namespace {

// Neumaier's compensated sum.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::fabs(sum_) >= std::fabs(x)) {
      carry_ += (sum_ - t) + x;
    } else {
      carry_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + carry_; }

 private:
  double sum_ = 0.0;
  double carry_ = 0.0;
};

void check_budget(const Params& params, std::int64_t t) {
  if (t < 0) throw InputError("number of steps must be non-negative");
  const std::int64_t branch = params.left_count() * params.right_count();
  std::int64_t leaves = 1;
  for (std::int64_t i = 0; i < t; ++i) {
    if (leaves > kBranchBudget / branch) {
      throw CapacityError("enumeration needs (L*R)^t <= " +
                          std::to_string(kBranchBudget));
    }
    leaves *= branch;
  }
}

// Depth-first walk over edge sequences.
class TraceWalker {
 public:
  TraceWalker(const Params& params, std::int64_t t, Variant variant)
      : params_(params),
        t_(t),
        simple_(variant == Variant::kSimple),
        left_(static_cast<std::size_t>(params.left_count()), 0),
        right_(static_cast<std::size_t>(params.right_count()), 0),
        mult_(static_cast<std::size_t>(params.left_count() * params.right_count()), 0) {}

  std::vector<TraceProbability> run() {
    walk(1.0);
    return std::move(out_);
  }

 private:
  std::size_t cell(Vertex u, Vertex v) const {
    return static_cast<std::size_t>(u) * static_cast<std::size_t>(params_.right_count()) + v;
  }

  bool allowed(Vertex u, Vertex v) const { return !simple_ || mult_[cell(u, v)] == 0; }

  double weight(Vertex u, Vertex v) const {
    return (left_[u] + params_.alpha()) * (right_[v] + params_.beta());
  }

  void walk(double prob) {
    if (static_cast<std::int64_t>(path_.size()) == t_) {
      out_.push_back({path_, prob});
      return;
    }
    const auto l = static_cast<Vertex>(params_.left_count());
    const auto r = static_cast<Vertex>(params_.right_count());
    CompensatedSum z;
    for (Vertex u = 0; u < l; ++u) {
      for (Vertex v = 0; v < r; ++v) {
        if (allowed(u, v)) z.add(weight(u, v));
      }
    }
    const double norm = z.value();
    for (Vertex u = 0; u < l; ++u) {
      for (Vertex v = 0; v < r; ++v) {
        if (!allowed(u, v)) continue;
        const double step = weight(u, v) / norm;
        ++left_[u];
        ++right_[v];
        ++mult_[cell(u, v)];
        path_.push_back({u, v});
        walk(prob * step);
        path_.pop_back();
        --mult_[cell(u, v)];
        --right_[v];
        --left_[u];
      }
    }
  }

  const Params& params_;
  std::int64_t t_;
  bool simple_;
  std::vector<std::uint32_t> left_;
  std::vector<std::uint32_t> right_;
  std::vector<std::uint32_t> mult_;
  std::vector<Edge> path_;
  std::vector<TraceProbability> out_;
};

ExactDistribution finish(std::int64_t l, std::int64_t r,
                         const std::map<std::string, CompensatedSum>& sums) {
  ExactDistribution dist{l, r, {}, 0.0};
  CompensatedSum total;
  dist.entries.reserve(sums.size());
  for (const auto& [key, sum] : sums) {
    dist.entries.emplace_back(key, sum.value());
    total.add(sum.value());
  }
  dist.total = total.value();
  return dist;
}

Params placeholder_params(std::int64_t l, std::int64_t r) { return Params(1.0, 1.0, l, r); }

std::uint32_t parse_index(std::string_view text) {
  std::uint32_t value = 0;
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || end != text.data() + text.size() || text.empty()) {
    throw InputError("malformed graph encoding field '" + std::string(text) + "'");
  }
  return value;
}

double elapsed_seconds(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

// Records one comparison in a certificate.
void record(Certificate& c, double error, const std::string& where) {
  ++c.checks;
  if (error > c.max_error || std::isnan(error)) {
    c.max_error = std::isnan(error) ? INFINITY : error;
    if (c.max_error > c.tolerance) c.detail = where;
  }
}

std::string describe(const Params& p, std::int64_t t) {
  return "L=" + std::to_string(p.left_count()) + " R=" + std::to_string(p.right_count()) +
         " t=" + std::to_string(t) + " alpha=" + format_real(p.alpha()) +
         " beta=" + format_real(p.beta());
}

template <typename Body>
Certificate run_certificate(std::string name, double tolerance, Body&& body) {
  Certificate c;
  c.name = std::move(name);
  c.tolerance = tolerance;
  const auto start = std::chrono::steady_clock::now();
  try {
    body(c);
    c.passed = c.max_error <= c.tolerance;
  } catch (const std::exception& e) {
    c.passed = false;
    c.detail = std::string("exception: ") + e.what();
  }
  c.seconds = elapsed_seconds(start);
  return c;
}

template <typename Visit>
void for_each_grid_instance(Visit&& visit) {
  for (const GridPoint& g : certificate_grid()) {
    for (double a : certificate_offsets()) {
      for (double b : certificate_offsets()) visit(Params(a, b, g.left, g.right), g.t);
    }
  }
}

// All subsets of {0, ..., n-1} as index lists.
std::vector<std::vector<Vertex>> subsets(std::int64_t n) {
  std::vector<std::vector<Vertex>> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    std::vector<Vertex> s;
    for (Vertex i = 0; i < n; ++i) {
      if ((mask >> i) & 1U) s.push_back(i);
    }
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace

std::string encode_graph(const BipartiteMultigraph& g) {
  std::string out;
  for (const auto& e : g.edges()) {
    if (!out.empty()) out += ';';
    out += std::to_string(e.u) + ':' + std::to_string(e.v) + ':' + std::to_string(e.count);
  }
  return out;
}

BipartiteMultigraph decode_graph(const Params& params, std::string_view encoding) {
  BipartiteMultigraph g(params);
  while (!encoding.empty()) {
    const auto stop = encoding.find(';');
    const std::string_view item = encoding.substr(0, stop);
    encoding = stop == std::string_view::npos ? std::string_view{} : encoding.substr(stop + 1);
    const auto c1 = item.find(':');
    const auto c2 = c1 == std::string_view::npos ? c1 : item.find(':', c1 + 1);
    if (c2 == std::string_view::npos) {
      throw InputError("malformed graph encoding item '" + std::string(item) + "'");
    }
    const Vertex u = parse_index(item.substr(0, c1));
    const Vertex v = parse_index(item.substr(c1 + 1, c2 - c1 - 1));
    const std::uint32_t m = parse_index(item.substr(c2 + 1));
    if (m == 0) throw InputError("graph encoding multiplicity must be positive");
    for (std::uint32_t k = 0; k < m; ++k) g.add_edge(u, v);
  }
  return g;
}

double ExactDistribution::probability(std::string_view encoding) const {
  const auto it = std::lower_bound(
      entries.begin(), entries.end(), encoding,
      [](const auto& entry, std::string_view key) { return entry.first < key; });
  return it != entries.end() && it->first == encoding ? it->second : 0.0;
}

std::vector<TraceProbability> enumerate_traces(const Params& params,
                                               std::int64_t t, Variant variant) {
  check_budget(params, t);
  return TraceWalker(params, t, variant).run();
}

ExactDistribution enumerate_process(const Params& params, std::int64_t t,
                                    Variant variant) {
  std::map<std::string, CompensatedSum> sums;
  for (const auto& trace : enumerate_traces(params, t, variant)) {
    BipartiteMultigraph g(params);
    for (const Edge& e : trace.edges) g.add_edge(e.u, e.v);
    sums[encode_graph(g)].add(trace.probability);
  }
  return finish(params.left_count(), params.right_count(), sums);
}

ExactDistribution conditional_given_bidegree(const ExactDistribution& dist,
                                             const BiDegreeSequence& deg) {
  const Params params = placeholder_params(dist.left_count, dist.right_count);
  std::map<std::string, CompensatedSum> sums;
  CompensatedSum mass;
  for (const auto& [key, prob] : dist.entries) {
    if (bidegree_of(decode_graph(params, key)) == deg) {
      sums[key].add(prob);
      mass.add(prob);
    }
  }
  const double z = mass.value();
  if (!(z > 0.0)) throw ConditioningError("bi-degree sequence has zero mass");
  for (auto& [key, sum] : sums) {
    const double p = sum.value() / z;
    sum = CompensatedSum();
    sum.add(p);
  }
  return finish(dist.left_count, dist.right_count, sums);
}

ExactDistribution bcm_exact_distribution(const BiDegreeSequence& deg) {
  if (deg.left.empty() || deg.right.empty()) {
    throw InputError("bi-degree sequence needs at least one vertex per side");
  }
  if (deg.left_total() != deg.right_total()) {
    throw InputError("bi-degree sequence sides must have equal sums");
  }
  const std::int64_t m = deg.left_total();
  if (m > kMaxPairingEdges) {
    throw CapacityError("pairing enumeration limited to m <= " +
                        std::to_string(kMaxPairingEdges) + " edges");
  }
  std::vector<Vertex> left_half, right_half;
  for (Vertex u = 0; u < deg.left.size(); ++u) left_half.insert(left_half.end(), deg.left[u], u);
  for (Vertex v = 0; v < deg.right.size(); ++v) right_half.insert(right_half.end(), deg.right[v], v);

  // Permute positions, not labels, so repeated labels still give m! orderings.
  std::vector<std::size_t> order(right_half.size());
  std::iota(order.begin(), order.end(), 0);
  double orderings = 1.0;
  for (std::int64_t k = 2; k <= m; ++k) orderings *= static_cast<double>(k);

  const auto l = static_cast<std::int64_t>(deg.left.size());
  const auto r = static_cast<std::int64_t>(deg.right.size());
  const Params params = placeholder_params(l, r);
  std::map<std::string, CompensatedSum> sums;
  do {
    BipartiteMultigraph g(params);
    for (std::size_t i = 0; i < left_half.size(); ++i) g.add_edge(left_half[i], right_half[order[i]]);
    sums[encode_graph(g)].add(1.0 / orderings);
  } while (std::next_permutation(order.begin(), order.end()));
  return finish(l, r, sums);
}

double event_mass(const ExactDistribution& dist, const PartitionEvent& ev,
                  std::span<const Vertex> a, std::span<const Vertex> b) {
  if (static_cast<std::int64_t>(a.size()) != ev.a_size ||
      static_cast<std::int64_t>(b.size()) != ev.b_size) {
    throw InputError("event set sizes do not match the listed vertices");
  }
  std::vector<bool> in_a(static_cast<std::size_t>(dist.left_count), false);
  std::vector<bool> in_b(static_cast<std::size_t>(dist.right_count), false);
  for (Vertex u : a) {
    if (u >= in_a.size() || in_a[u]) throw InputError("A must list distinct left vertices");
    in_a[u] = true;
  }
  for (Vertex v : b) {
    if (v >= in_b.size() || in_b[v]) throw InputError("B must list distinct right vertices");
    in_b[v] = true;
  }
  const Params params = placeholder_params(dist.left_count, dist.right_count);
  CompensatedSum mass;
  for (const auto& [key, prob] : dist.entries) {
    const BipartiteMultigraph g = decode_graph(params, key);
    bool closed = true;
    std::int64_t a_ends = 0;
    std::int64_t b_ends = 0;
    for (const auto& e : g.edges()) {
      if (in_a[e.u]) {
        a_ends += e.count;
        if (!in_b[e.v]) closed = false;
      }
      if (in_b[e.v]) b_ends += e.count;
    }
    if (closed && a_ends == ev.t1 && b_ends == ev.t1 + ev.y) mass.add(prob);
  }
  return mass.value();
}

std::vector<GridPoint> certificate_grid() { return {{2, 2, 2}, {2, 2, 3}, {2, 1, 3}}; }

std::vector<double> certificate_offsets() { return {0.5, 1.0, 2.0}; }

Certificate certify_graph_law() {
  return run_certificate("graph-law", kTermTolerance, [](Certificate& c) {
    for_each_grid_instance([&](const Params& p, std::int64_t t) {
      const ExactDistribution dist = enumerate_process(p, t, Variant::kMulti);
      for (const auto& [key, prob] : dist.entries) {
        const double formula = std::exp(exact_multigraph_logprob(decode_graph(p, key), t));
        record(c, std::fabs(formula - prob), describe(p, t) + " graph " + key);
      }
      // Total mass has its own, looser gate; scale it onto the term gate.
      record(c, std::fabs(dist.total - 1.0) * (kTermTolerance / kMassTolerance),
             describe(p, t) + " total mass");
    });
  });
}

Certificate certify_bcm_coupling() {
  return run_certificate("bcm-coupling", kTermTolerance, [](Certificate& c) {
    for_each_grid_instance([&](const Params& p, std::int64_t t) {
      const ExactDistribution dist = enumerate_process(p, t, Variant::kMulti);
      std::map<std::string, BiDegreeSequence> sequences;
      for (const auto& entry : dist.entries) {
        const BiDegreeSequence deg = bidegree_of(decode_graph(p, entry.first));
        std::string key;
        for (auto d : deg.left) key += std::to_string(d) + ',';
        key += '|';
        for (auto d : deg.right) key += std::to_string(d) + ',';
        sequences.emplace(key, deg);
      }
      for (const auto& [label, deg] : sequences) {
        const ExactDistribution cond = conditional_given_bidegree(dist, deg);
        const ExactDistribution bcm = bcm_exact_distribution(deg);
        std::vector<std::string> keys;
        for (const auto& e : cond.entries) keys.push_back(e.first);
        for (const auto& e : bcm.entries) keys.push_back(e.first);
        for (const auto& key : keys) {
          record(c, std::fabs(cond.probability(key) - bcm.probability(key)),
                 describe(p, t) + " degrees " + label + " graph " + key);
        }
      }
    });
  });
}

Certificate certify_edge_partition() {
  return run_certificate("edge-partition", kTermTolerance, [](Certificate& c) {
    for_each_grid_instance([&](const Params& p, std::int64_t t) {
      const ExactDistribution dist = enumerate_process(p, t, Variant::kMulti);
      for (const auto& a : subsets(p.left_count())) {
        for (const auto& b : subsets(p.right_count())) {
          for (std::int64_t t1 = 0; t1 <= t; ++t1) {
            for (std::int64_t y = 0; t1 + y <= t; ++y) {
              const PartitionEvent ev{static_cast<std::int64_t>(a.size()),
                                      static_cast<std::int64_t>(b.size()), t1, y, t};
              const double formula = std::exp(edge_partition_logprob(p, ev));
              record(c, std::fabs(formula - event_mass(dist, ev, a, b)),
                     describe(p, t) + " |A|=" + std::to_string(a.size()) +
                         " |B|=" + std::to_string(b.size()) + " t1=" + std::to_string(t1) +
                         " y=" + std::to_string(y));
            }
          }
        }
      }
    });
  });
}

Certificate certify_measure_change() {
  return run_certificate("measure-change", kTermTolerance, [](Certificate& c) {
    for_each_grid_instance([&](const Params& p, std::int64_t t) {
      if (t > p.left_count() * p.right_count()) return;  // no simple traces
      std::map<std::vector<Edge>, double> multi;
      for (auto& tr : enumerate_traces(p, t, Variant::kMulti)) multi[tr.edges] = tr.probability;
      for (const auto& tr : enumerate_traces(p, t, Variant::kSimple)) {
        const MeasureChange mc = measure_change_ratio(Trace{p, tr.edges, true});
        const std::string where = describe(p, t) + " trace " +
                                  encode_graph(replay(Trace{p, tr.edges, true}));
        record(c, std::fabs(tr.probability - mc.exact_ratio * multi.at(tr.edges)), where);
        if (mc.q_bound) {
          // Zero error when the bound holds; otherwise the excess.
          record(c, std::max(0.0, mc.exact_ratio - *mc.q_bound * (1.0 + 1e-15)),
                 where + " exceeds q_bound");
        }
      }
    });
  });
}

std::vector<Certificate> run_certificates() {
  return {certify_graph_law(), certify_bcm_coupling(), certify_edge_partition(),
          certify_measure_change()};
}

}  // namespace bideg::oracle
