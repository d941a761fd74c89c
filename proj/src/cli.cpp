// SPDX-License-Identifier: Apache-2.0
#include "spinclone/cli.hpp"

#include "spinclone/cloning.hpp"
#include "spinclone/dynamics.hpp"
#include "spinclone/errors.hpp"
#include "spinclone/optimizer.hpp"
#include "spinclone/verify.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace spinclone::cli {

using json = nlohmann::ordered_json;

namespace {

/// Raised for inconsistent option combinations detected after parsing.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::string scalar_to_string(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  return v.dump();
}

} // namespace

std::map<std::string, std::string> parse_config(const std::string& text) {
  std::map<std::string, std::string> out;
  const std::string body = trim(text);
  if (!body.empty() && body.front() == '{') {
    const json j = json::parse(body);
    for (const auto& [key, v] : j.items()) {
      if (v.is_object() || v.is_null()) continue;
      if (v.is_array()) {
        std::string joined;
        bool scalar = true;
        for (const auto& e : v) {
          if (e.is_structured()) { scalar = false; break; }
          if (!joined.empty()) joined += ',';
          joined += scalar_to_string(e);
        }
        if (scalar) out[key] = joined;
        continue;
      }
      out[key] = scalar_to_string(v);
    }
    return out;
  }

  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::runtime_error("config line " + std::to_string(lineno) + ": expected key = value");
    out[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  return out;
}

namespace {

enum class Format { human, json, csv };

/// Parsed command line of one subcommand invocation.
struct RunConfig {
  int M = 2;
  int k = 0;
  std::optional<double> lambda;
  double B = 0.0;
  double t = 0.0;
  std::string model = "xxz";
  std::string method = "analytic";
  double theta = M_PI / 2;
  double phi = 0.0;
  std::string format = "human";
  std::string output;
  std::string config;
  std::uint64_t seed = 20240611;
  int trials = 0;
  std::string suite;

  // optimize
  std::vector<int> k_list;
  std::vector<double> B_range{0.01, 1.0};
  std::vector<double> t_range{0.0, 300.0};
  std::vector<double> lambda_range;
  int n_B = 201;
  int n_t = 30001;
  int n_lambda = 1;
  int refine_iters = 4000;
  double refine_tol = 1e-8;
  bool no_refine = false;

  // scan
  std::vector<std::string> sweeps;

  std::optional<int> table_M;

  Format fmt() const {
    if (format == "json") return Format::json;
    if (format == "csv") return Format::csv;
    return Format::human;
  }

  /// Model shorthand fixes lambda; an explicit conflicting value is rejected.
  double resolved_lambda() const {
    if (model == "xx") {
      if (lambda && *lambda != 0.0) throw UsageError("--model xx fixes lambda = 0");
      return 0.0;
    }
    if (model == "heisenberg") {
      if (lambda && *lambda != 1.0) throw UsageError("--model heisenberg fixes lambda = 1");
      return 1.0;
    }
    return lambda.value_or(0.0);
  }

  Method resolved_method() const {
    auto m = method_from_string(method);
    if (!m) throw UsageError("unknown method: " + method);
    if (*m == Method::brute) check_dense_capacity(M);
    return *m;
  }
};

void add_model_options(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--m", cfg.M, "Number of outer spins")->check(CLI::PositiveNumber);
  sub->add_option("--lambda", cfg.lambda, "z anisotropy");
  sub->add_option("--model", cfg.model, "Model shorthand")
      ->check(CLI::IsMember({"xx", "heisenberg", "xxz"}));
}

void add_io_options(CLI::App* sub, RunConfig& cfg, std::vector<std::string> formats) {
  sub->add_option("--format", cfg.format, "Output format")->check(CLI::IsMember(formats));
  sub->add_option("--output,-o", cfg.output, "Write output to this file");
  sub->add_option("--config", cfg.config, "key=value or JSON file of option values");
}

void apply_config(CLI::App* sub, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open config file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  std::map<std::string, std::string> entries;
  try {
    entries = parse_config(buf.str());
  } catch (const std::exception& e) {
    throw UsageError("config " + path + ": " + e.what());
  }
  for (const auto& [key, value] : entries) {
    std::string flag = key;
    for (char& c : flag)
      if (c == '_') c = '-';
    CLI::Option* opt = sub->get_option_no_throw("--" + flag);
    if (!opt || opt->count() > 0 || flag == "config") continue;  // flags win
    opt->add_result(value);
    opt->run_callback();
  }
}

json amp_json(cplx z) { return json::array({z.real(), z.imag()}); }

std::string fmt12(double x) {
  std::ostringstream s;
  s << std::setprecision(12) << x;
  return s.str();
}

const char* kCsvHeader = "M,k,lambda,B,t,fidelity,method";

std::string csv_row(int M, int k, double lambda, double B, double t, double F,
                    std::string_view method) {
  return std::to_string(M) + "," + std::to_string(k) + "," + fmt12(lambda) + "," + fmt12(B) +
         "," + fmt12(t) + "," + fmt12(F) + "," + std::string(method);
}

// ---------------------------------------------------------------------------

int cmd_fidelity(const RunConfig& cfg, std::ostream& out) {
  const double lambda = cfg.resolved_lambda();
  const Method method = cfg.resolved_method();
  const ModelParams p{cfg.M, lambda, cfg.B};
  const CloneReport r = clone_report(p, cfg.k, cfg.t, cfg.theta, cfg.phi, method);

  switch (cfg.fmt()) {
  case Format::json: {
    json j;
    j["command"] = "fidelity";
    j["m"] = cfg.M;
    j["k"] = cfg.k;
    j["model"] = cfg.model;
    j["lambda"] = lambda;
    j["b"] = cfg.B;
    j["t"] = cfg.t;
    j["theta"] = cfg.theta;
    j["phi"] = cfg.phi;
    j["method"] = std::string(to_string(method));
    j["fidelity"] = r.fidelity;
    j["equatorial_fidelity"] = r.equatorial_fidelity;
    j["qubit_fidelities"] = r.qubit_fidelities;
    j["state_bound"] = state_bound(cfg.M, cfg.k);
    if (r.amplitudes) {
      j["amplitudes"] = {{"f1", amp_json(r.amplitudes->f1)},
                         {"f2", amp_json(r.amplitudes->f2)},
                         {"g1", amp_json(r.amplitudes->g1)},
                         {"g2", amp_json(r.amplitudes->g2)}};
    }
    out << j.dump(2) << "\n";
    break;
  }
  case Format::csv:
    out << kCsvHeader << "\n"
        << csv_row(cfg.M, cfg.k, lambda, cfg.B, cfg.t, r.fidelity, to_string(method)) << "\n";
    break;
  case Format::human: {
    out << "M=" << cfg.M << " k=" << cfg.k << " lambda=" << fmt12(lambda)
        << " B=" << fmt12(cfg.B) << " t=" << fmt12(cfg.t) << " method=" << to_string(method)
        << "\n";
    out << "input theta=" << fmt12(cfg.theta) << " phi=" << fmt12(cfg.phi) << "\n";
    out << "F                = " << fmt12(r.fidelity) << "\n";
    out << "F (equatorial)   = " << fmt12(r.equatorial_fidelity) << "\n";
    out << "state bound      = " << fmt12(state_bound(cfg.M, cfg.k)) << "\n";
    out << "per-qubit F      =";
    for (double f : r.qubit_fidelities) out << " " << fmt12(f);
    out << "\n";
    if (r.amplitudes) {
      const auto& a = *r.amplitudes;
      out << "f1=" << a.f1 << " f2=" << a.f2 << " g1=" << a.g1 << " g2=" << a.g2 << "\n";
    }
    break;
  }
  }
  return kExitOk;
}

json candidate_json(const Candidate& c) {
  return {{"k", c.k}, {"lambda", c.lambda}, {"b", c.B}, {"t", c.t}, {"fidelity", c.F}};
}

int cmd_optimize(const RunConfig& cfg, std::ostream& out, unsigned workers) {
  SearchBox box;
  if (cfg.B_range.size() != 2 || cfg.t_range.size() != 2)
    throw UsageError("--b-range and --t-range take two values");
  box.B = {cfg.B_range[0], cfg.B_range[1]};
  box.t = {cfg.t_range[0], cfg.t_range[1]};
  if (!cfg.lambda_range.empty()) {
    if (cfg.model != "xxz") throw UsageError("--lambda-range requires --model xxz");
    if (cfg.lambda_range.size() != 2) throw UsageError("--lambda-range takes two values");
    box.lambda = {cfg.lambda_range[0], cfg.lambda_range[1]};
    box.n_lambda = cfg.n_lambda;
  } else {
    const double lam = cfg.resolved_lambda();
    box.lambda = {lam, lam};
    box.n_lambda = 1;
  }
  box.n_B = cfg.n_B;
  box.n_t = cfg.n_t;
  box.refine_iters = cfg.refine_iters;
  box.refine_tol = cfg.refine_tol;
  box.k_candidates = cfg.k_list;
  if (box.k_candidates.empty())
    for (int k = 0; k <= cfg.M; ++k) box.k_candidates.push_back(k);
  for (int k : box.k_candidates)
    if (k < 0 || k > cfg.M) throw UsageError("k candidate out of range: " + std::to_string(k));
  box.validate();

  const int M = cfg.M;
  const bool xx = box.lambda.lo == 0.0 && box.lambda.hi == 0.0;
  Objective objective;
  if (xx) {
    objective = [M](int k, double, double B, double t) { return xx_fidelity(M, k, B, t); };
  } else {
    objective = [M](int k, double lam, double B, double t) {
      return pcc_fidelity(evolve_analytic({M, lam, B}, k, t));
    };
  }
  const OptResult res =
      cfg.no_refine ? grid_scan(objective, box, workers) : optimize(objective, box, workers);

  switch (cfg.fmt()) {
  case Format::json: {
    json j;
    j["command"] = "optimize";
    j["m"] = M;
    j["model"] = cfg.model;
    if (cfg.lambda_range.empty()) j["lambda"] = box.lambda.lo;
    else j["lambda_range"] = cfg.lambda_range;
    j["n_lambda"] = box.n_lambda;
    j["b_range"] = cfg.B_range;
    j["t_range"] = cfg.t_range;
    j["n_b"] = box.n_B;
    j["n_t"] = box.n_t;
    j["k_list"] = box.k_candidates;
    j["refine_iters"] = box.refine_iters;
    j["refine_tol"] = box.refine_tol;
    j["no_refine"] = cfg.no_refine;
    j["best"] = candidate_json(res.best);
    j["state_bound"] = state_bound(M, res.best.k);
    j["optimal_bound"] = optimal_pcc_bound(M);
    j["evaluations"] = res.evaluations;
    j["refined"] = res.refined;
    j["runner_up_gap"] = res.runner_up_gap;
    json per = json::array();
    for (const auto& c : res.per_k) per.push_back(candidate_json(c));
    j["per_k"] = per;
    out << j.dump(2) << "\n";
    break;
  }
  case Format::csv:
    out << kCsvHeader << "\n";
    for (const auto& c : res.per_k)
      out << csv_row(M, c.k, c.lambda, c.B, c.t, c.F, xx ? "xx" : "analytic") << "\n";
    break;
  case Format::human:
    out << "M=" << M << " best F=" << fmt12(res.best.F) << " at k=" << res.best.k
        << " lambda=" << fmt12(res.best.lambda) << " B=" << fmt12(res.best.B)
        << " t=" << fmt12(res.best.t) << "\n";
    out << "state bound=" << fmt12(state_bound(M, res.best.k))
        << " optimal bound=" << fmt12(optimal_pcc_bound(M)) << "\n";
    out << "evaluations=" << res.evaluations << " refined=" << (res.refined ? "yes" : "no")
        << " runner-up gap=" << fmt12(res.runner_up_gap) << "\n";
    for (const auto& c : res.per_k)
      out << "  k=" << c.k << " F=" << fmt12(c.F) << " B=" << fmt12(c.B) << " t=" << fmt12(c.t)
          << "\n";
    break;
  }
  return kExitOk;
}

int cmd_table1(const RunConfig& cfg, std::ostream& out, unsigned workers) {
  std::vector<Table1Row> rows;
  if (cfg.table_M) rows.push_back(reproduce_table1_row(*cfg.table_M, workers));
  else rows = reproduce_table1(workers);

  switch (cfg.fmt()) {
  case Format::json: {
    json arr = json::array();
    for (const auto& r : rows) {
      arr.push_back({{"m", r.M},
                     {"f_optimal", r.F_optimal},
                     {"f_max", r.found.F},
                     {"t", r.found.t},
                     {"b", r.found.B},
                     {"k", r.found.k},
                     {"reference_f_max", r.reference.F_max},
                     {"reference_t", r.reference.t},
                     {"reference_b", r.reference.B},
                     {"reference_k", r.reference.k},
                     {"reference_f_eval", r.reference_F_eval},
                     {"deviation", r.deviation},
                     {"flagged", r.flagged},
                     {"evaluations", r.evaluations}});
    }
    out << json{{"command", "table1"}, {"rows", arr}}.dump(2) << "\n";
    break;
  }
  case Format::csv:
    out << "M,F_optimal,F_max,t,B,k,reference_F_max,deviation,flagged\n";
    for (const auto& r : rows)
      out << r.M << "," << fmt12(r.F_optimal) << "," << fmt12(r.found.F) << ","
          << fmt12(r.found.t) << "," << fmt12(r.found.B) << "," << r.found.k << ","
          << fmt12(r.reference.F_max) << "," << fmt12(r.deviation) << ","
          << (r.flagged ? 1 : 0) << "\n";
    break;
  case Format::human:
    out << " M  F_optimal  F_max      t          B          k  | reference F_max  status\n";
    for (const auto& r : rows) {
      out << std::setw(2) << r.M << "  " << std::fixed << std::setprecision(6) << r.F_optimal
          << "   " << r.found.F << "   " << std::setw(9) << std::setprecision(4) << r.found.t
          << "  " << std::setprecision(7) << r.found.B << "  " << r.found.k << "  |  "
          << std::setprecision(6) << r.reference.F_max << "        "
          << (r.flagged ? "FLAG" : "ok") << "\n";
      out.unsetf(std::ios::floatfield);
    }
    break;
  }
  return kExitOk;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out) {
  const auto suite = suite_from_string(cfg.suite);
  if (!suite) throw UsageError("unknown suite: " + cfg.suite);
  const SuiteReport rep = run_suite(*suite, {cfg.seed, cfg.trials});

  if (cfg.fmt() == Format::json) {
    json checks = json::array();
    for (const auto& c : rep.checks)
      checks.push_back({{"name", c.name},
                        {"residual", c.residual},
                        {"tolerance", c.tolerance},
                        {"passed", c.passed}});
    out << json{{"command", "verify"},
                {"suite", rep.suite},
                {"seed", cfg.seed},
                {"trials", cfg.trials},
                {"passed", rep.passed()},
                {"checks", checks}}
               .dump(2)
        << "\n";
  } else {
    out << "suite " << rep.suite << " (seed " << cfg.seed << ")\n";
    for (const auto& c : rep.checks)
      out << (c.passed ? "  PASS  " : "  FAIL  ") << c.name << ": residual "
          << std::setprecision(3) << std::scientific << c.residual << " (tol " << c.tolerance
          << ")\n"
          << std::defaultfloat;
    out << (rep.passed() ? "all checks passed" : "verification FAILED") << "\n";
  }
  return rep.passed() ? kExitOk : kExitCheckFailed;
}

struct Sweep {
  std::string axis;
  double lo = 0.0, hi = 0.0;
  int n = 1;
};

Sweep parse_sweep(const std::string& text) {
  // axis=lo:hi:n
  const auto eq = text.find('=');
  if (eq == std::string::npos) throw UsageError("sweep must look like axis=lo:hi:n: " + text);
  Sweep s;
  s.axis = text.substr(0, eq);
  if (s.axis == "B") s.axis = "b";
  if (s.axis != "t" && s.axis != "b" && s.axis != "lambda")
    throw UsageError("sweep axis must be t, b or lambda: " + s.axis);
  std::string rest = text.substr(eq + 1);
  std::replace(rest.begin(), rest.end(), ':', ' ');
  std::istringstream in(rest);
  if (!(in >> s.lo >> s.hi >> s.n) || s.n < 1 || s.lo > s.hi)
    throw UsageError("bad sweep range: " + text);
  return s;
}

int cmd_scan(const RunConfig& cfg, std::ostream& out) {
  if (cfg.sweeps.empty() || cfg.sweeps.size() > 2)
    throw UsageError("scan takes one or two --sweep axes");
  std::vector<Sweep> sweeps;
  for (const auto& s : cfg.sweeps) sweeps.push_back(parse_sweep(s));
  if (sweeps.size() == 2 && sweeps[0].axis == sweeps[1].axis)
    throw UsageError("sweep axes must differ");
  const bool sweeps_lambda =
      std::any_of(sweeps.begin(), sweeps.end(), [](const Sweep& s) { return s.axis == "lambda"; });
  if (sweeps_lambda && cfg.model != "xxz") throw UsageError("lambda sweep requires --model xxz");

  const Method method = cfg.resolved_method();
  const double base_lambda = cfg.resolved_lambda();
  PropagatorCache cache;

  auto point = [](const Sweep& s, int i) { return Range{s.lo, s.hi}.point(i, s.n); };
  const Sweep outer = sweeps[0];
  const Sweep inner = sweeps.size() == 2 ? sweeps[1] : Sweep{"", 0.0, 0.0, 1};

  json rows = json::array();
  if (cfg.fmt() != Format::json) out << kCsvHeader << "\n";
  for (int i = 0; i < outer.n; ++i) {
    for (int j = 0; j < inner.n; ++j) {
      double lambda = base_lambda, B = cfg.B, t = cfg.t;
      auto assign = [&](const Sweep& s, double v) {
        if (s.axis == "t") t = v;
        else if (s.axis == "b") B = v;
        else if (s.axis == "lambda") lambda = v;
      };
      assign(outer, point(outer, i));
      if (!inner.axis.empty()) assign(inner, point(inner, j));

      const CloneReport r =
          clone_report({cfg.M, lambda, B}, cfg.k, t, M_PI / 2, cfg.phi, method, &cache);
      if (cfg.fmt() == Format::json)
        rows.push_back({{"m", cfg.M}, {"k", cfg.k}, {"lambda", lambda}, {"b", B}, {"t", t},
                        {"fidelity", r.equatorial_fidelity},
                        {"method", std::string(to_string(method))}});
      else
        out << csv_row(cfg.M, cfg.k, lambda, B, t, r.equatorial_fidelity, to_string(method))
            << "\n";
    }
  }
  if (cfg.fmt() == Format::json) out << json{{"command", "scan"}, {"rows", rows}}.dump(2) << "\n";
  return kExitOk;
}

json preset_json(const PresetSpec& s) {
  return {{"name", std::string(to_string(s.name))}, {"m", s.M},       {"k", s.k},
          {"lambda", s.lambda},                     {"b", s.B},       {"t", s.t},
          {"claimed_fidelity", s.claimed_fidelity}};
}

int cmd_presets(const RunConfig& cfg, std::ostream& out) {
  std::vector<PresetSpec> presets;
  if (cfg.M >= 2) presets.push_back(preset_optimal(cfg.M));
  if (cfg.M >= 2 && cfg.M % 2 == 0) presets.push_back(preset_ancilla_free(cfg.M));
  presets.push_back(preset_kM_xx(cfg.M));
  presets.push_back(universal_preset());

  if (cfg.fmt() == Format::json) {
    json arr = json::array();
    for (const auto& s : presets) arr.push_back(preset_json(s));
    out << json{{"command", "presets"}, {"m", cfg.M}, {"presets", arr}}.dump(2) << "\n";
    return kExitOk;
  }
  for (const auto& s : presets)
    out << std::left << std::setw(15) << to_string(s.name) << std::right << " M=" << s.M
        << " k=" << s.k << " lambda=" << fmt12(s.lambda) << " B=" << fmt12(s.B)
        << " t=" << fmt12(s.t) << " F=" << fmt12(s.claimed_fidelity) << "\n";
  return kExitOk;
}

} // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Cloning by free evolution of XXZ spin-star networks"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto* fid = app.add_subcommand("fidelity", "Clone fidelity for one parameter set");
  add_model_options(fid, cfg);
  fid->add_option("--k", cfg.k, "Outer register initialised to S(M, k)");
  fid->add_option("--b", cfg.B, "Magnetic field");
  fid->add_option("--t", cfg.t, "Evolution time")->check(CLI::NonNegativeNumber);
  fid->add_option("--method", cfg.method, "analytic | closed-form | brute");
  fid->add_option("--theta", cfg.theta, "Input polar angle");
  fid->add_option("--phi", cfg.phi, "Input phase");
  add_io_options(fid, cfg, {"human", "json", "csv"});

  auto* opt = app.add_subcommand("optimize", "Maximise equatorial fidelity over a box");
  add_model_options(opt, cfg);
  opt->add_option("--k", cfg.k_list, "k candidates (default 0..M)")->delimiter(',');
  opt->add_option("--b-range", cfg.B_range, "B interval lo,hi")->expected(2)->delimiter(',');
  opt->add_option("--t-range", cfg.t_range, "t interval lo,hi")->expected(2)->delimiter(',');
  opt->add_option("--lambda-range", cfg.lambda_range, "lambda interval lo,hi")
      ->expected(2)
      ->delimiter(',');
  opt->add_option("--n-b", cfg.n_B, "B grid points");
  opt->add_option("--n-t", cfg.n_t, "t grid points");
  opt->add_option("--n-lambda", cfg.n_lambda, "lambda grid points");
  opt->add_option("--refine-iters", cfg.refine_iters, "Local refinement iteration cap");
  opt->add_option("--refine-tol", cfg.refine_tol, "Local refinement parameter tolerance");
  opt->add_flag("--no-refine", cfg.no_refine, "Report the raw grid maximum");
  add_io_options(opt, cfg, {"human", "json", "csv"});

  auto* tab = app.add_subcommand("table1", "Reproduce the XX-model maximum-fidelity table");
  tab->add_option("--m", cfg.table_M, "Only this M");
  add_io_options(tab, cfg, {"human", "json", "csv"});

  auto* ver = app.add_subcommand("verify", "Run a verification suite");
  ver->add_option("--suite", cfg.suite, "optimal-pcc | universal | ancilla-free | oracle | bounds")
      ->required();
  ver->add_option("--seed", cfg.seed, "Seed for randomised samples");
  ver->add_option("--trials", cfg.trials, "Sample count (0 = suite default)");
  add_io_options(ver, cfg, {"human", "json"});

  auto* scan = app.add_subcommand("scan", "Fidelity over one or two swept axes, as CSV");
  add_model_options(scan, cfg);
  scan->add_option("--k", cfg.k, "Outer register initialised to S(M, k)");
  scan->add_option("--b", cfg.B, "Magnetic field");
  scan->add_option("--t", cfg.t, "Evolution time");
  scan->add_option("--method", cfg.method, "analytic | closed-form | brute");
  scan->add_option("--phi", cfg.phi, "Input phase (brute route)");
  scan->add_option("--sweep", cfg.sweeps, "axis=lo:hi:n with axis in {t, b, lambda}");
  add_io_options(scan, cfg, {"csv", "json"});

  auto* pre = app.add_subcommand("presets", "Print the preset parameter sets for M");
  pre->add_option("--m", cfg.M, "Number of outer spins")->check(CLI::PositiveNumber);
  add_io_options(pre, cfg, {"human", "json"});

  std::vector<std::string> args;
  for (int i = argc - 1; i > 0; --i) args.emplace_back(argv[i]);

  try {
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    out << (app.get_subcommands().empty() ? app.help() : app.get_subcommands().front()->help());
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  CLI::App* sub = app.get_subcommands().front();
  std::ofstream file;
  try {
    if (!cfg.config.empty()) apply_config(sub, cfg.config);
    if (sub == scan && cfg.format == "human") cfg.format = "csv";
    if (!cfg.output.empty()) {
      file.open(cfg.output);
      if (!file) throw UsageError("cannot open output file: " + cfg.output);
    }
    std::ostream& dst = cfg.output.empty() ? out : file;
    const unsigned workers = default_workers();

    if (sub == fid) return cmd_fidelity(cfg, dst);
    if (sub == opt) return cmd_optimize(cfg, dst, workers);
    if (sub == tab) return cmd_table1(cfg, dst, workers);
    if (sub == ver) return cmd_verify(cfg, dst);
    if (sub == scan) return cmd_scan(cfg, dst);
    if (sub == pre) return cmd_presets(cfg, dst);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const CapacityError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const nlohmann::json::exception& e) {
    err << "error: config: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitCheckFailed;
  }
  return kExitUsage;
}

} // namespace spinclone::cli
