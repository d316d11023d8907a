// Copyright 2026 The UQF Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Command-line front end. `run` takes the argument list without the program
// name so tests can drive it in-process.

#include <cmath>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "uqf/io/json.hpp"
#include "uqf/uqf.hpp"

namespace uqf::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDomain = 2;
inline constexpr int kExitParse = 3;

namespace detail {

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline std::string read_source(const std::string& path, std::istream& in) {
  if (path == "-") {
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }
  std::ifstream f(path);
  if (!f) throw IoError("cannot open " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

inline json parse_json(const std::string& text, const std::string& what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::kParse, what + ": " + e.what());
  }
}

inline void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path);
  if (!f) throw IoError("cannot write " + path);
  f << text;
  if (!f) throw IoError("write failed for " + path);
}

inline json branches_json(const std::array<BranchOutcome, 2>& br) {
  json out = json::array();
  for (const BranchOutcome& b : br) {
    json j = {{"outcome", b.outcome}, {"probability", b.probability}};
    if (b.post_state) {
      j["post_state"] = *b.post_state;
      if (b.post_state->labels().count() == 2) {
        const SchmidtForm sf = schmidt_decompose(*b.post_state, Label::A);
        j["schmidt_coefficients"] = sf.coefficients;
        j["product_residual"] = is_product(*b.post_state, 0.0).residual;
      }
    } else {
      j["post_state"] = nullptr;
    }
    out.push_back(std::move(j));
  }
  return out;
}

inline json kraus_json(const std::array<ComplexMatrix, 2>& k) { return {{"k0", k[0]}, {"k1", k[1]}}; }

}  // namespace detail

struct Options {
  bool degrees = false;
  std::string out = "-";
  std::uint64_t seed = 0;
};

inline json header(const char* command, const Options& o) {
  return {{"version", kVersion}, {"command", command}, {"seed", o.seed}};
}

inline double to_radians(double v, const Options& o) {
  return o.degrees ? v * std::numbers::pi / 180.0 : v;
}

inline json cmd_filter(const Options& o, double alpha_in, const std::optional<std::string>& state_path,
                       std::istream& in) {
  const double alpha = to_radians(alpha_in, o);
  const AncillaCircuit c = synthesize_filter({alpha});
  const auto k = effective_kraus(c);
  const TwoOutcomePovm target = make_filter({alpha});
  json j = header("filter", o);
  j["config"] = {{"alpha", alpha_in}, {"degrees", o.degrees}, {"state", state_path ? *state_path : ""}};
  j["alpha"] = alpha;
  j["theta"] = c.theta;
  j["circuit"] = c;
  j["effective_kraus"] = detail::kraus_json(k);
  j["target"] = target;
  j["fidelity"] = {operator_fidelity(k[0], target.m0), operator_fidelity(k[1], target.m1)};
  j["completeness_residual"] = check_completeness({k[0], k[1]});
  if (state_path) {
    const json sj = detail::parse_json(detail::read_source(*state_path, in), "state");
    const StateVector s = sj.get<StateVector>();
    j["branches"] = detail::branches_json(run_circuit(c, s));
  }
  return j;
}

// Angles typed to four decimals (0.7854) land just past π/4; read them as π/4.
inline double snap_quarter_pi(double v) {
  constexpr double q = std::numbers::pi / 4;
  return std::abs(v - q) < 1e-4 ? q : v;
}

inline json cmd_convert(const Options& o, double x_in, double y_in, std::uint64_t trials) {
  const double x = snap_quarter_pi(to_radians(x_in, o)), y = snap_quarter_pi(to_radians(y_in, o));
  const ConversionPlan plan = synthesize_conversion(x, y);
  const auto br = run_circuit(plan.circuit, PureState2x2::from_angle(x).to_state());
  json j = header("convert", o);
  j["config"] = {{"x", x_in}, {"y", y_in}, {"degrees", o.degrees}, {"trials", trials}};
  j["circuit"] = plan.circuit;
  j["theta"] = plan.circuit.theta;
  j["filter_alpha"] = plan.filter_alpha;
  j["predicted_probability"] = plan.predicted_probability;
  j["exact"] = {{"branches", detail::branches_json(br)},
                {"success_probability", br[0].probability},
                {"abs_error", std::abs(br[0].probability - plan.predicted_probability)}};
  if (trials > 0) {
    std::mt19937_64 rng(o.seed);
    std::bernoulli_distribution success(std::clamp(br[0].probability, 0.0, 1.0));
    std::uint64_t hits = 0;
    for (std::uint64_t t = 0; t < trials; ++t) hits += success(rng);
    j["monte_carlo"] = {{"generator", "mt19937_64"},
                        {"seed", o.seed},
                        {"trials", trials},
                        {"successes", hits},
                        {"frequency", static_cast<double>(hits) / static_cast<double>(trials)}};
  }
  return j;
}

inline json cmd_dilute(const Options& o, double a0, double b0) {
  auto pair = [](double v, const char* name) {
    if (!(v >= 0.0 && v <= 1.0)) {
      throw Error(ErrorCode::kRange, std::string(name) + " must lie in [0, 1]");
    }
    return PureState2x2{v, std::sqrt(std::max(0.0, 1.0 - v * v))};
  };
  const PureState2x2 src = pair(a0, "a0"), tgt = pair(b0, "b0");
  const DilutionPlan plan = synthesize_dilution(src, tgt);
  const auto br = run_circuit(plan.circuit, src.to_state());
  bool deterministic = std::abs(br[0].probability + br[1].probability - 1.0) < 1e-12;
  for (const BranchOutcome& b : br) {
    if (!b.post_state) continue;
    const SchmidtForm sf = schmidt_decompose(*b.post_state, Label::A);
    deterministic = deterministic && std::abs(sf.coefficients[0] - tgt.alpha0) < 1e-9 &&
                    std::abs(sf.coefficients[1] - tgt.alpha1) < 1e-9;
  }
  json j = header("dilute", o);
  j["config"] = {{"a0", a0}, {"b0", b0}};
  j["source"] = {src.alpha0, src.alpha1};
  j["target"] = {tgt.alpha0, tgt.alpha1};
  j["gamma"] = plan.gamma;
  j["delta"] = plan.delta;
  j["theta"] = plan.theta;
  j["circuit"] = plan.circuit;
  j["bob_frame"] = plan.bob_frame;
  j["bob_corrections"] = plan.bob_corrections;
  j["branches"] = detail::branches_json(br);
  j["deterministic"] = deterministic;
  return j;
}

inline json cmd_povm(const Options& o, const std::string& path, std::istream& in) {
  const json pj = detail::parse_json(detail::read_source(path, in), "povm");
  const TwoOutcomePovm p = pj.get<TwoOutcomePovm>();
  const double residual = check_completeness(p);
  const CanonicalPovm cp = canonical_form(p);
  const AncillaCircuit c = synthesize_general_povm(cp);
  const auto k = effective_kraus(c);
  const TwoOutcomePovm r = cp.reconstruct();
  json j = header("povm", o);
  j["config"] = {{"input", path}};
  j["completeness_residual"] = residual;
  j["canonical"] = cp;
  j["reconstruction_error"] = std::max(max_abs_diff(r.m0, p.m0), max_abs_diff(r.m1, p.m1));
  j["circuit"] = c;
  j["effective_kraus"] = detail::kraus_json(k);
  j["fidelity"] = {operator_fidelity(k[0], p.m0), operator_fidelity(k[1], p.m1)};
  return j;
}

struct ScanArgs {
  ScanConfig scan;
  EntanglementConfig ent;
  std::optional<std::string> csv;
};

inline json cmd_scan(const Options& o, const std::vector<double>& params_in, ScanArgs a) {
  a.scan.seed = o.seed;
  const CanonicalGateParams p{to_radians(params_in[0], o), to_radians(params_in[1], o),
                              to_radians(params_in[2], o)};
  const ScanReport rep = scan_a0_range(p, a.scan);
  const double ent = max_output_entanglement(p, a.ent);
  if (a.csv) detail::write_file(*a.csv, scan_csv(rep));
  json j = header("scan", o);
  j["config"] = {{"params", params_in},
                 {"degrees", o.degrees},
                 {"scan", a.scan},
                 {"entanglement", {{"grid_points", a.ent.grid_points},
                                   {"refine_top", a.ent.refine_top},
                                   {"refine_evals", a.ent.refine_evals}}},
                 {"csv", a.csv ? *a.csv : ""}};
  j["in_weyl_chamber"] = p.in_weyl_chamber();
  j["report"] = rep;
  j["max_output_entanglement"] = ent;
  return j;
}

inline json cmd_sweep(const Options& o, int n, ScanArgs a) {
  a.scan.seed = o.seed;
  const auto rows = conjecture_sweep(weyl_chamber_grid(n), a.scan, a.ent);
  if (a.csv) {
    std::string text = "a1,a2,a3,max_entanglement,coverage_gap,is_candidate\n";
    char buf[160];
    for (const SweepRow& r : rows) {
      std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g,%d\n", r.params.a1, r.params.a2,
                    r.params.a3, r.max_entanglement, r.coverage_gap, r.is_candidate ? 1 : 0);
      text += buf;
    }
    detail::write_file(*a.csv, text);
  }
  json j = header("sweep", o);
  j["config"] = {{"n", n}, {"scan", a.scan}, {"csv", a.csv ? *a.csv : ""}};
  json table = json::array();
  for (const SweepRow& r : rows) {
    table.push_back({{"params", r.params},
                     {"max_entanglement", r.max_entanglement},
                     {"coverage_gap", r.coverage_gap},
                     {"is_candidate", r.is_candidate}});
  }
  j["rows"] = std::move(table);
  return j;
}

inline int run(std::vector<std::string> args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Unitary quantum filter synthesis and search"};
  app.require_subcommand(1);
  // Global options may follow the subcommand name too.
  app.fallthrough();
  Options o;
  app.add_flag("--degrees", o.degrees, "Interpret angle arguments as degrees");
  app.add_option("--out", o.out, "Output path for the JSON report ('-' for stdout)");
  app.add_option("--seed", o.seed, "Seed echoed in reports and used by sampling");
  app.set_version_flag("--version", std::string(kVersion));

  auto* filter = app.add_subcommand("filter", "Synthesize the CNOT filter circuit F(alpha)");
  double alpha = 0.0;
  std::optional<std::string> state_path;
  filter->add_option("--alpha", alpha, "Filter angle in [0, pi/2]")->required();
  filter->add_option("--state,--json", state_path, "Input state JSON path ('-' for stdin)");

  auto* convert = app.add_subcommand("convert", "Optimal conversion cos x|00>+sin x|11> -> cos y, sin y");
  double x = 0.0, y = 0.0;
  std::uint64_t trials = 0;
  convert->add_option("--x", x, "Source angle")->required();
  convert->add_option("--y", y, "Target angle")->required();
  convert->add_option("--trials", trials, "Monte Carlo trials (0 = none)");

  auto* dilute = app.add_subcommand("dilute", "Deterministic dilution (a0, a1) -> (b0, b1)");
  double a0 = 0.0, b0 = 0.0;
  dilute->add_option("--a0", a0, "Larger source Schmidt coefficient")->required();
  dilute->add_option("--b0", b0, "Larger target Schmidt coefficient")->required();

  auto* povm = app.add_subcommand("povm", "Canonical form and circuit for a two-outcome POVM");
  std::string povm_path;
  auto* povm_pos = povm->add_option("input", povm_path, "POVM JSON path ('-' for stdin)");
  auto* povm_json = povm->add_option("--json", povm_path, "POVM JSON path ('-' for stdin)");
  povm_pos->excludes(povm_json);
  povm->callback([&] {
    if (povm_path.empty()) throw CLI::RequiredError("povm input (path or --json -)");
  });

  ScanArgs scan_args;
  auto add_scan_options = [&](CLI::App* sub) {
    sub->add_option("--grid", scan_args.scan.grid_points, "Grid points per local angle");
    sub->add_flag("--two-angle", scan_args.scan.two_angle, "Use two angles per local unitary");
    sub->add_option("--refine", scan_args.scan.refine_count, "Coarse points refined by simplex search");
    sub->add_option("--refine-evals", scan_args.scan.refine_evals, "Simplex budget per refined point");
    sub->add_option("--c1-tol", scan_args.scan.c1_tol, "Product-state acceptance tolerance");
    sub->add_option("--gap", scan_args.scan.gap_threshold, "Maximum coverage gap for a candidate");
    sub->add_option("--endpoint-tol", scan_args.scan.endpoint_tol, "Endpoint tolerance for a candidate");
    sub->add_option("--threads", scan_args.scan.threads, "Worker threads (0 = all cores)");
    sub->add_option("--ent-grid", scan_args.ent.grid_points, "Entanglement search grid per parameter");
    sub->add_option("--csv", scan_args.csv, "Write the sample table as CSV");
  };

  auto* scan = app.add_subcommand("scan", "Scan the reachable a0 range of U_d(a1, a2, a3)");
  std::vector<double> params;
  scan->add_option("--params", params, "a1 a2 a3")->required()->expected(3);
  add_scan_options(scan);

  auto* sweep = app.add_subcommand("sweep", "Capacity vs eligibility table over the Weyl chamber");
  int sweep_n = 5;
  sweep->add_option("--n", sweep_n, "Samples per chamber axis")->check(CLI::Range(1, 50));
  add_scan_options(sweep);

  std::vector<const char*> argv{"uqf"};
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << kVersion << "\n";
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitParse;
  }
  scan_args.ent.threads = scan_args.scan.threads;

  try {
    json report;
    if (*filter) report = cmd_filter(o, alpha, state_path, in);
    else if (*convert) report = cmd_convert(o, x, y, trials);
    else if (*dilute) report = cmd_dilute(o, a0, b0);
    else if (*povm) report = cmd_povm(o, povm_path, in);
    else if (*scan) report = cmd_scan(o, params, scan_args);
    else report = cmd_sweep(o, sweep_n, scan_args);

    const std::string text = report.dump(2) + "\n";
    if (o.out == "-") out << text;
    else detail::write_file(o.out, text);
    return kExitOk;
  } catch (const Error& e) {
    err << "error [" << to_string(e.code()) << "]: " << e.what() << "\n";
    return e.code() == ErrorCode::kParse ? kExitParse : kExitDomain;
  } catch (const detail::IoError& e) {
    err << "error [io]: " << e.what() << "\n";
    return kExitParse;
  } catch (const json::exception& e) {
    err << "error [parse]: " << e.what() << "\n";
    return kExitParse;
  }
}

}  // namespace uqf::cli
