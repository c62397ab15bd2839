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

#include "bideg/cli.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>
#include <json.hpp>

#include "bideg/errors.hpp"
#include "bideg/experiments.hpp"
#include "bideg/oracle.hpp"
#include "bideg/samplers.hpp"
#include "bideg/theory.hpp"
#include "bideg/trace.hpp"

namespace bideg::cli {

namespace {

using Json = nlohmann::ordered_json;
namespace fs = std::filesystem;

struct Options {
  double alpha = 1.0;
  double beta = 1.0;
  std::int64_t left = 1000;
  std::int64_t right = 1000;
  std::int64_t t = 0;
  double epsilon = 0.5;
  double x = 1.0;
  double delta = 0.1;
  std::int64_t replicas = 20;
  std::uint64_t seed = 1;
  std::string output;
  std::string format;  // empty: json for experiments, a table for verify
  std::string variant;
  std::string side = "left";
  std::string regime = "point";
  std::string what = "all";
  unsigned threads = 0;
  std::vector<std::int64_t> sizes;

  bool t_given = false;
  bool variant_given = false;
};

Params make_params(const Options& o) { return Params(o.alpha, o.beta, o.left, o.right); }

std::optional<fs::path> output_dir(const Options& o) {
  if (!o.output.empty()) return fs::path(o.output);
  if (const char* env = std::getenv(kOutputDirEnv); env != nullptr && *env != '\0') {
    return fs::path(env);
  }
  return std::nullopt;
}

void write_file(const fs::path& path, const std::string& content) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream file(path, std::ios::binary);
  if (!file) throw InputError("cannot open " + path.string() + " for writing");
  file << content;
  if (!file) throw InputError("failed writing " + path.string());
}

int run_simulate(const Options& o, std::ostream& out) {
  const Params p = make_params(o);
  const Variant variant = o.variant_given ? parse_variant(o.variant) : Variant::kMulti;
  const std::int64_t t = o.t_given ? o.t : p.total_count();
  const Trace trace = variant == Variant::kMulti ? sample_multigraph_process(p, t, o.seed)
                                                 : sample_simple_process(p, t, o.seed);
  const std::string text = format_trace(trace);
  if (!o.output.empty()) {
    write_file(o.output, text);
    out << "wrote " << o.output << "\n";
  } else if (const auto dir = output_dir(o)) {
    const fs::path path = *dir / ("trace-" + std::string(to_string(variant)) + "-" +
                                  std::to_string(o.seed) + ".txt");
    write_file(path, text);
    out << "wrote " << path.string() << "\n";
  } else {
    out << text;
  }
  return kOk;
}

Json theory_threshold(const Params& p) {
  return {{"t_c", giant_threshold(p)},
          {"tau", connectivity_threshold(p)},
          {"Z", sg_disconnect_exponent(p)}};
}

Json theory_giant(const Params& p, double epsilon) {
  Json j{{"t_c", giant_threshold(p)}, {"epsilon", epsilon}};
  const SuccessProbs probs = supercritical_probs(p, epsilon);
  j["p_L"] = probs.p_left;
  j["p_R"] = probs.p_right;
  if (epsilon > 0.0) {
    const GiantPrediction g = giant_fraction(p, epsilon);
    const EtaResiduals res = eta_equation_residuals(p, epsilon, g.eta_left);
    j["eta_L"] = g.eta_left;
    j["eta_R"] = g.eta_right;
    j["xi_L"] = g.xi_left;
    j["xi_R"] = g.xi_right;
    j["fraction"] = g.fraction;
    j["eta_residual_pgf_form"] = res.pgf_form;
    j["eta_residual_printed_form"] = res.printed_form;
    j["printed_form_agrees"] = std::fabs(res.printed_form) < 1e-9;
  } else {
    j["fraction"] = 0.0;
  }
  return j;
}

Json theory_connectivity(const Params& p, double x) {
  const ConnectivityPrediction c = connectivity_prediction(p, x);
  return {{"tau", c.tau},
          {"x", c.x},
          {"limit", c.limit_prob},
          {"lambda_L", c.lambda_left},
          {"lambda_R", c.lambda_right}};
}

Json theory_isolated(const Params& p, Side side, double x) {
  return {{"side", std::string(to_string(side))}, {"x", x}, {"lambda", isolated_mean(p, side, x)}};
}

Json theory_sg(const Params& p, double delta) {
  const double z = sg_disconnect_exponent(p);
  return {{"Z", z}, {"delta", delta}, {"delta_below_Z", delta < z}};
}

Json theory_degree(const Params& p, std::int64_t t) {
  Json j{{"t", t}};
  for (Side side : {Side::kLeft, Side::kRight}) {
    const NegBin nb = degree_model(p, t, side);
    j[std::string(to_string(side))] = {{"shape", nb.shape}, {"p", nb.p}, {"mean", nb.mean()}};
  }
  return j;
}

int run_theory(const Options& o, std::ostream& out) {
  const Params p = make_params(o);
  const Side side = parse_side(o.side);
  const std::int64_t t = o.t_given ? o.t : p.total_count();
  Json j;
  if (o.what == "threshold") j = theory_threshold(p);
  else if (o.what == "giant") j = theory_giant(p, o.epsilon);
  else if (o.what == "connectivity") j = theory_connectivity(p, o.x);
  else if (o.what == "isolated") j = theory_isolated(p, side, o.x);
  else if (o.what == "sg") j = theory_sg(p, o.delta);
  else if (o.what == "degree") j = theory_degree(p, t);
  else {
    j["params"] = {{"alpha", p.alpha()}, {"beta", p.beta()}, {"L", p.left_count()},
                   {"R", p.right_count()}, {"gamma", p.gamma()}};
    j["threshold"] = theory_threshold(p);
    j["giant"] = theory_giant(p, o.epsilon);
    j["connectivity"] = theory_connectivity(p, o.x);
    j["isolated"] = theory_isolated(p, side, o.x);
    j["sg"] = theory_sg(p, o.delta);
    j["degree"] = theory_degree(p, t);
  }
  const std::string text = j.dump(2) + "\n";
  if (!o.output.empty()) {
    write_file(o.output, text);
    out << "wrote " << o.output << "\n";
  } else {
    out << text;
  }
  return kOk;
}

experiments::ExperimentConfig make_config(const Options& o) {
  experiments::ExperimentConfig c;
  c.params = make_params(o);
  c.epsilon = o.epsilon;
  c.x = o.x;
  c.delta = o.delta;
  if (o.t_given) c.t = o.t;
  c.side = parse_side(o.side);
  c.regime = experiments::parse_regime(o.regime);
  c.replicas = o.replicas;
  c.master_seed = o.seed;
  if (o.variant_given) c.variant = parse_variant(o.variant);
  c.threads = o.threads;
  return c;
}

void emit_report(const Options& o, const experiments::ExperimentReport& r,
                 const std::string& stem, std::ostream& out) {
  if (const auto dir = output_dir(o)) {
    write_file(*dir / (stem + ".csv"), experiments::records_csv(r));
    write_file(*dir / (stem + ".json"), experiments::summary_json(r));
  }
  out << (o.format == "csv" ? experiments::records_csv(r) : experiments::summary_json(r));
}

int run_experiment(const std::string& name, const Options& o, std::ostream& out) {
  const experiments::ExperimentConfig c = make_config(o);
  if (name == "connectivity" && !o.sizes.empty()) {
    const auto trend = experiments::run_connectivity_trend(c, o.sizes);
    Json j{{"experiment", "connectivity-trend"}};
    Json reports = Json::array();
    for (std::size_t k = 0; k < trend.reports.size(); ++k) {
      const std::string stem = name + "-" + std::to_string(o.sizes[k]);
      if (const auto dir = output_dir(o)) {
        write_file(*dir / (stem + ".csv"), experiments::records_csv(trend.reports[k]));
        write_file(*dir / (stem + ".json"), experiments::summary_json(trend.reports[k]));
      }
      reports.push_back(Json::parse(experiments::summary_json(trend.reports[k])));
    }
    j["reports"] = reports;
    Json gates = Json::array();
    for (const auto& g : trend.gates) {
      gates.push_back({{"name", g.name},
                       {"observed", g.observed},
                       {"comparison", g.comparison},
                       {"threshold", g.threshold},
                       {"passed", g.passed}});
    }
    j["trend_gates"] = gates;
    j["verdict"] = trend.passed() ? "pass" : "fail";
    const std::string text = j.dump(2) + "\n";
    if (const auto dir = output_dir(o)) write_file(*dir / (name + "-trend.json"), text);
    out << text;
    return trend.passed() ? kOk : kGateFailed;
  }
  experiments::ExperimentReport r;
  if (name == "giant") r = experiments::run_giant(c);
  else if (name == "degrees") r = experiments::run_degrees(c);
  else if (name == "isolated") r = experiments::run_isolated(c);
  else if (name == "connectivity") r = experiments::run_connectivity(c);
  else r = experiments::run_sg_disconnect(c);
  emit_report(o, r, name, out);
  return r.passed() ? kOk : kGateFailed;
}

int run_verify(const Options& o, std::ostream& out) {
  const auto certs = oracle::run_certificates();
  bool ok = true;
  for (const auto& c : certs) ok = ok && c.passed;
  if (o.format == "json") {
    Json arr = Json::array();
    for (const auto& c : certs) {
      arr.push_back({{"certificate", c.name},
                     {"checks", c.checks},
                     {"max_error", c.max_error},
                     {"tolerance", c.tolerance},
                     {"seconds", c.seconds},
                     {"passed", c.passed},
                     {"detail", c.detail}});
    }
    out << arr.dump(2) << "\n";
  } else {
    char line[160];
    std::snprintf(line, sizeof line, "%-16s %8s %12s %10s %9s  %s\n", "certificate", "checks",
                  "max_error", "tolerance", "seconds", "status");
    out << line;
    for (const auto& c : certs) {
      std::snprintf(line, sizeof line, "%-16s %8lld %12.3e %10.0e %9.3f  %s\n", c.name.c_str(),
                    static_cast<long long>(c.checks), c.max_error, c.tolerance, c.seconds,
                    c.passed ? "PASS" : "FAIL");
      out << line;
      if (!c.passed && !c.detail.empty()) out << "  worst case: " << c.detail << "\n";
    }
  }
  if (!o.output.empty()) {
    Json arr = Json::array();
    for (const auto& c : certs) {
      arr.push_back({{"certificate", c.name}, {"checks", c.checks},
                     {"max_error", c.max_error}, {"passed", c.passed}});
    }
    write_file(o.output, arr.dump(2) + "\n");
  }
  return ok ? kOk : kGateFailed;
}

}  // namespace

int parse_and_dispatch(const std::vector<std::string>& args, std::ostream& out,
                       std::ostream& err) {
  Options o;
  CLI::App app{"Simulation and verification toolkit for the bipartite (alpha, beta) degree process",
               "bideg"};
  app.fallthrough();
  app.require_subcommand(1);
  app.set_config("--config", "",
                 "Read flags from a file of 'key = value' lines (TOML/INI); "
                 "flags on the command line take precedence");

  app.add_option("--alpha", o.alpha, "Left offset alpha > 0")->capture_default_str();
  app.add_option("--beta", o.beta, "Right offset beta > 0")->capture_default_str();
  app.add_option("--L", o.left, "Number of left vertices")->capture_default_str();
  app.add_option("--R", o.right, "Number of right vertices")->capture_default_str();
  auto* t_opt = app.add_option("--t", o.t, "Number of steps (default L + R)");
  app.add_option("--epsilon", o.epsilon, "Giant regime: t = t_c (1 + epsilon)(L + R)")
      ->capture_default_str();
  app.add_option("--x", o.x, "Scale factor for isolated-vertex and connectivity regimes")
      ->capture_default_str();
  app.add_option("--delta", o.delta, "Simple-graph regime: t = (L + R)^(1 + delta)")
      ->capture_default_str();
  app.add_option("--replicas", o.replicas, "Monte Carlo replicas")->capture_default_str();
  app.add_option("--seed", o.seed, "Master seed")->capture_default_str();
  app.add_option("--output", o.output,
                 "simulate/theory/verify: output file; experiment: output directory "
                 "(default $" + std::string(kOutputDirEnv) + ")");
  app.add_option("--format", o.format,
                 "stdout format: experiment csv|json (default json), verify table|json "
                 "(default table)")
      ->check(CLI::IsMember({"csv", "json", "table"}));
  auto* variant_opt = app.add_option("--variant", o.variant, "simple or multi")
                          ->check(CLI::IsMember({"simple", "multi"}));
  app.add_option("--side", o.side, "Vertex side for isolated vertices")
      ->check(CLI::IsMember({"left", "right"}))
      ->capture_default_str();
  app.add_option("--regime", o.regime, "Isolated-vertex regime")
      ->check(CLI::IsMember({"point", "below", "above"}))
      ->capture_default_str();
  app.add_option("--what", o.what, "theory: which prediction")
      ->check(CLI::IsMember({"giant", "connectivity", "isolated", "sg", "degree", "threshold", "all"}))
      ->capture_default_str();
  app.add_option("--threads", o.threads, "Worker threads for replicas (0: all cores)")
      ->capture_default_str();
  app.add_option("--sizes", o.sizes,
                 "experiment connectivity: run at each total size L + R and check the trend")
      ->delimiter(',');

  auto* simulate = app.add_subcommand("simulate", "Sample one trace and print or write it");
  auto* theory = app.add_subcommand("theory", "Print closed-form predictions as JSON");
  auto* experiment = app.add_subcommand("experiment", "Run a seeded Monte Carlo campaign");
  experiment->require_subcommand(1);
  const std::vector<std::string> names{"giant", "degrees", "isolated", "connectivity",
                                       "sg-disconnect"};
  for (const auto& name : names) experiment->add_subcommand(name, "Experiment " + name);
  auto* verify = app.add_subcommand("verify", "Run the exhaustive-enumeration certificates");

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kUsageError;
  }
  o.t_given = t_opt->count() > 0;
  o.variant_given = variant_opt->count() > 0;

  try {
    if (simulate->parsed()) return run_simulate(o, out);
    if (theory->parsed()) return run_theory(o, out);
    if (verify->parsed()) return run_verify(o, out);
    for (const auto& name : names) {
      if (experiment->get_subcommand(name)->parsed()) return run_experiment(name, o, out);
    }
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kUsageError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  }
  err << app.help();
  return kUsageError;
}

int parse_and_dispatch(int argc, const char* const* argv) {
  std::vector<std::string> args(argv, argv + argc);
  return parse_and_dispatch(args, std::cout, std::cerr);
}

}  // namespace bideg::cli
