#include "cli.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"

#include "hafnian/counterexample.hpp"
#include "hafnian/estimator.hpp"
#include "hafnian/experiments.hpp"
#include "hafnian/hafnian_exact.hpp"
#include "hafnian/hypotheses.hpp"
#include "hafnian/parallel.hpp"
#include "hafnian/report_json.hpp"
#include "hafnian/scaling.hpp"
#include "report_schema.hpp"

namespace hafnian::cli {

const char* report_schema() { return kReportSchema; }

namespace {

struct Outcome {
  Json config;
  std::uint64_t seed = 0;
  Json report;
  int exit_code = kOk;
};

struct EstimateArgs {
  std::string matrix;
  std::size_t samples = 1000;
  std::uint64_t seed = 0;
  std::vector<double> quantiles = {0.05, 0.25, 0.5, 0.75, 0.95};
  bool exact = false;
};

struct ExactArgs {
  std::string graph;
  std::string matrix;
  std::size_t cap = kDefaultHafnianCap;
};

struct ScaleArgs {
  std::string matrix;
  double residual = 0.0;
  std::size_t max_iter = 100000;
  std::optional<double> theta;
  std::optional<double> nu;
  std::optional<double> gap_delta;
  std::string emit_b;
};

struct CheckArgs {
  std::string graph;
  double kappa = 0.0;
  std::size_t level = 0;
  std::string mode = "sampled";
  std::uint64_t budget = 100000;
  std::uint64_t seed = 0;
  bool weak = false;
  double delta = 0.1;
  bool strict = false;
};

struct HypothesesArgs {
  std::string matrix;
  double alpha = 0.0, kappa = 0.0, beta = 0.0, theta = 0.0;
  bool no_scale = false;
  std::string mode = "sampled";
  std::uint64_t budget = 20000;
  std::uint64_t seed = 0;
  bool strict = false;
};

struct CounterexampleArgs {
  double delta = 0.12;
  std::size_t n_center = 0;
  std::optional<std::size_t> m_pairs;
  std::size_t samples = 10000;
  std::uint64_t seed = 0;
  std::string emit_graph;
};

struct ExperimentArgs {
  std::string kind;
  std::string config;
};

Json quantile_levels(const std::vector<double>& q) {
  Json a = Json::array();
  for (double x : q) a.push_back(json_number(x));
  return a;
}

Outcome do_estimate(const EstimateArgs& a, unsigned threads) {
  const SymMatrix m = read_sym_matrix_file(a.matrix);
  EstimateOptions opt;
  opt.num_samples = a.samples;
  opt.seed = a.seed;
  opt.quantiles = a.quantiles;
  opt.threads = threads;
  if (a.exact) opt.exact_log_haf = hafnian_exact(m).log_value;
  const auto summary = estimate(m, opt);

  Outcome o;
  o.seed = a.seed;
  o.config = Json{{"matrix", a.matrix}, {"samples", a.samples}, {"seed", a.seed},
                  {"quantiles", quantile_levels(a.quantiles)}, {"exact", a.exact}};
  o.report = Json{{"n", m.size()}, {"seed", a.seed}};
  o.report.update(to_json(summary));
  return o;
}

Outcome do_exact(const ExactArgs& a) {
  if (a.graph.empty() == a.matrix.empty()) throw InputError("exact needs exactly one of --graph or --matrix");
  const HafnianValue h = a.graph.empty() ? hafnian_exact(read_sym_matrix_file(a.matrix), a.cap)
                                         : count_perfect_matchings(read_graph_file(a.graph), a.cap);
  Outcome o;
  o.config = Json{{"graph", a.graph.empty() ? Json(nullptr) : Json(a.graph)},
                  {"matrix", a.matrix.empty() ? Json(nullptr) : Json(a.matrix)},
                  {"cap", a.cap}};
  o.report = to_json(h);
  return o;
}

Outcome do_scale(const ScaleArgs& a) {
  const SymMatrix m = read_sym_matrix_file(a.matrix);
  const double target = a.residual > 0.0 ? a.residual : 1.0 / static_cast<double>(m.size());
  const auto res = scale_symmetric(m, target, a.max_iter);
  const double theta = a.theta.value_or(0.5);
  const double nu = a.nu.value_or(1.0);
  Outcome o;
  o.config = Json{{"matrix", a.matrix}, {"residual", json_number(target)}, {"max_iter", a.max_iter},
                  {"theta", json_number(theta)}, {"nu", json_number(nu)},
                  {"gap_delta", a.gap_delta ? Json(json_number(*a.gap_delta)) : Json(nullptr)},
                  {"emit_b", a.emit_b.empty() ? Json(nullptr) : Json(a.emit_b)}};
  o.report = to_json(res);
  const auto audit = audit_entry_bounds(res, theta, nu);
  o.report["observed_exponents"] = to_json(audit)["observed_exponents"];
  o.report["audit"] = to_json(audit);
  if (a.gap_delta && res.converged) o.report["spectral_gap"] = to_json(spectral_gap(res.b, *a.gap_delta));
  if (!a.emit_b.empty()) {
    std::ofstream f(a.emit_b);
    if (!f) throw InputError("cannot write " + a.emit_b);
    write_matrix(f, res.b);
  }
  o.exit_code = res.converged ? kOk : kNotConverged;
  return o;
}

Outcome do_check(const CheckArgs& a) {
  const auto g = read_graph_file(a.graph);
  const CheckMode mode = check_mode_from_string(a.mode);
  const auto rep = a.weak ? check_weak_expansion(g, a.kappa, a.delta, mode, a.budget, a.seed)
                          : check_strong_expansion(g, a.kappa, a.level, mode, a.budget, a.seed);
  Outcome o;
  o.seed = a.seed;
  o.config = Json{{"graph", a.graph}, {"kappa", json_number(a.kappa)}, {"level", a.weak ? g.n() / 2 : a.level},
                  {"mode", a.mode}, {"budget", a.budget}, {"seed", a.seed}, {"weak", a.weak},
                  {"delta", a.weak ? Json(json_number(a.delta)) : Json(nullptr)}, {"strict", a.strict}};
  o.report = to_json(rep);
  if (a.strict && !rep.holds) o.exit_code = kHypothesisFailed;
  return o;
}

Outcome do_hypotheses(const HypothesesArgs& a) {
  const SymMatrix m = read_sym_matrix_file(a.matrix);
  HypothesisParams p;
  p.alpha = a.alpha;
  p.kappa = a.kappa;
  p.beta = a.beta;
  p.theta = a.theta;
  p.scale_if_needed = !a.no_scale;
  p.mode = check_mode_from_string(a.mode);
  p.budget = a.budget;
  p.seed = a.seed;
  const auto rep = check_theorem_hypotheses(m, p);
  Outcome o;
  o.seed = a.seed;
  o.config = Json{{"matrix", a.matrix}, {"alpha", json_number(a.alpha)}, {"kappa", json_number(a.kappa)},
                  {"beta", json_number(a.beta)}, {"theta", json_number(a.theta)}, {"scale", !a.no_scale},
                  {"mode", a.mode}, {"budget", a.budget}, {"seed", a.seed}, {"strict", a.strict}};
  o.report = to_json(rep);
  if (a.strict && !rep.all_hold) o.exit_code = kHypothesisFailed;
  return o;
}

Outcome do_counterexample(const CounterexampleArgs& a, unsigned threads) {
  const auto spec = a.m_pairs ? CounterexampleSpec::with_pairs(a.delta, a.n_center, *a.m_pairs)
                              : CounterexampleSpec::from_delta(a.delta, a.n_center);
  if (!a.emit_graph.empty()) {
    std::ofstream f(a.emit_graph);
    if (!f) throw InputError("cannot write " + a.emit_graph);
    write_graph(f, build_counterexample(spec));
  }
  const auto bias = run_bias_experiment(spec, a.samples, a.seed, kDefaultBiasGrid, {0.05, 0.25, 0.5, 0.75, 0.95},
                                        threads);
  Outcome o;
  o.seed = a.seed;
  o.config = Json{{"delta", json_number(a.delta)}, {"n_center", a.n_center}, {"m_pairs", spec.m_pairs},
                  {"samples", a.samples}, {"seed", a.seed},
                  {"emit_graph", a.emit_graph.empty() ? Json(nullptr) : Json(a.emit_graph)}};
  o.report = to_json(bias);
  o.report["weak_expansion"] = to_json(check_weak_expansion_structural(spec, a.delta / 8.0, a.delta));
  return o;
}

Outcome do_experiment(const ExperimentArgs& a, unsigned threads) {
  std::ifstream f(a.config);
  if (!f) throw InputError("cannot open config file: " + a.config);
  Json raw;
  try {
    raw = Json::parse(f);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(std::string("config is not valid JSON: ") + e.what());
  }
  ExperimentConfig cfg = experiment_config_from_json(raw);
  cfg.threads = threads;
  Outcome o;
  o.seed = cfg.seed;
  o.config = Json{{"kind", a.kind}, {"config", to_json(cfg)}};
  if (a.kind == "sv-tail") {
    o.report = to_json(smallest_sv_tail(cfg));
  } else if (a.kind == "density") {
    o.report = to_json(eigenvalue_density(cfg));
  } else {
    o.report = to_json(concentration_error(cfg));
  }
  return o;
}

std::vector<double> parse_quantiles(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(tok, &used));
      if (used != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      throw InputError("bad quantile '" + tok + "'");
    }
  }
  if (out.empty()) throw InputError("--quantiles needs at least one value");
  return out;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Gaussian hafnian estimator, exact oracles, scaling and expansion checks"};
  app.fallthrough();
  app.set_version_flag("--version", kToolVersion);
  bool print_schema = false;
  unsigned threads = default_thread_count();
  app.add_flag("--schema", print_schema, "Print the JSON schema of all reports");
  app.add_option("--threads", threads, "Worker threads (default: HAFNIAN_THREADS or 1)")->check(CLI::PositiveNumber);

  EstimateArgs est;
  std::string quantiles_arg;
  auto* c_est = app.add_subcommand("estimate", "Monte Carlo det(W) estimator of the hafnian");
  c_est->add_option("--matrix", est.matrix, "Matrix file")->required();
  c_est->add_option("--samples", est.samples, "Number of samples")->required()->check(CLI::PositiveNumber);
  c_est->add_option("--seed", est.seed, "64-bit seed")->required();
  c_est->add_option("--quantiles", quantiles_arg, "Comma-separated quantile levels of log det");
  c_est->add_flag("--exact", est.exact, "Also compute the exact hafnian and error statistics");

  ExactArgs ex;
  auto* c_exact = app.add_subcommand("exact", "Exact hafnian or perfect matching count");
  c_exact->add_option("--graph", ex.graph, "Edge-list file");
  c_exact->add_option("--matrix", ex.matrix, "Matrix file");
  c_exact->add_option("--cap", ex.cap, "Largest dimension accepted")->capture_default_str();

  ScaleArgs sc;
  double theta_v = 0.0, nu_v = 0.0, gap_v = 0.0;
  auto* c_scale = app.add_subcommand("scale", "Symmetric doubly stochastic scaling with entry audit");
  c_scale->add_option("--matrix", sc.matrix, "Matrix file")->required();
  c_scale->add_option("--residual", sc.residual, "Residual target (default 1/n)");
  c_scale->add_option("--max-iter", sc.max_iter, "Iteration cap")->capture_default_str();
  auto* o_theta = c_scale->add_option("--theta", theta_v, "Max-entry exponent for the audit (default 0.5)");
  auto* o_nu = c_scale->add_option("--nu", nu_v, "Min-entry exponent for the audit (default 1)");
  auto* o_gap = c_scale->add_option("--gap-delta", gap_v, "Also test for a spectral gap of this width");
  c_scale->add_option("--emit-b", sc.emit_b, "Write the scaled matrix to this file");

  CheckArgs ck;
  auto* c_check = app.add_subcommand("check", "Strong (or weak) expansion check on a graph");
  c_check->add_option("--graph", ck.graph, "Edge-list file")->required();
  c_check->add_option("--kappa", ck.kappa, "Expansion parameter")->required();
  auto* o_level = c_check->add_option("--level", ck.level, "Largest set size checked");
  c_check->add_option("--mode", ck.mode, "exhaustive or sampled")->check(CLI::IsMember({"exhaustive", "sampled"}));
  c_check->add_option("--budget", ck.budget, "Set budget")->capture_default_str();
  c_check->add_option("--seed", ck.seed, "Sampling seed");
  c_check->add_flag("--weak", ck.weak, "Check the weak variant with component weight 1 - delta at level n/2");
  c_check->add_option("--delta", ck.delta, "Weak-variant delta")->capture_default_str();
  c_check->add_flag("--strict", ck.strict, "Exit 4 when the condition fails");

  HypothesesArgs hy;
  auto* c_hyp = app.add_subcommand("hypotheses", "Evaluate the concentration hypotheses on a matrix");
  c_hyp->add_option("--matrix", hy.matrix, "Matrix file")->required();
  c_hyp->add_option("--alpha", hy.alpha, "Minimum degree fraction")->required();
  c_hyp->add_option("--kappa", hy.kappa, "Expansion parameter")->required();
  c_hyp->add_option("--beta", hy.beta, "Large-entries exponent")->required();
  c_hyp->add_option("--theta", hy.theta, "Max-entry exponent")->required();
  c_hyp->add_flag("--no-scale", hy.no_scale, "Use the matrix as given even if it is not stochastic");
  c_hyp->add_option("--mode", hy.mode, "exhaustive or sampled")->check(CLI::IsMember({"exhaustive", "sampled"}));
  c_hyp->add_option("--budget", hy.budget, "Set budget")->capture_default_str();
  c_hyp->add_option("--seed", hy.seed, "Sampling seed");
  c_hyp->add_flag("--strict", hy.strict, "Exit 4 when a hypothesis fails");

  CounterexampleArgs ce;
  std::size_t m_pairs_v = 0;
  auto* c_ce = app.add_subcommand("counterexample", "Build the biased-estimator graph and measure the bias");
  c_ce->add_option("--delta", ce.delta, "delta in (0, 1/6)")->required();
  c_ce->add_option("--n-center", ce.n_center, "Center clique size")->required()->check(CLI::PositiveNumber);
  auto* o_pairs = c_ce->add_option("--m-pairs", m_pairs_v, "Override floor(delta n / 2)");
  c_ce->add_option("--samples", ce.samples, "Number of samples")->required()->check(CLI::PositiveNumber);
  c_ce->add_option("--seed", ce.seed, "64-bit seed")->required();
  c_ce->add_option("--emit-graph", ce.emit_graph, "Write the graph as an edge list");

  ExperimentArgs xa;
  auto* c_xp = app.add_subcommand("experiment", "Run a random-matrix experiment from a JSON config");
  c_xp->add_option("kind", xa.kind, "sv-tail, density or concentration")
      ->required()
      ->check(CLI::IsMember({"sv-tail", "density", "concentration"}));
  c_xp->add_option("--config", xa.config, "Config file")->required();

  std::vector<const char*> argv;
  for (const auto& s : args) argv.push_back(s.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kInputError;
  }

  if (print_schema) {
    out << report_schema();
    return kOk;
  }
  if (app.get_subcommands().empty()) {
    err << "error: a subcommand is required\n\n" << app.help();
    return kInputError;
  }

  const auto start = std::chrono::steady_clock::now();
  CLI::App* sub = app.get_subcommands().front();
  Outcome outcome;
  try {
    if (sub == c_est) {
      if (!quantiles_arg.empty()) est.quantiles = parse_quantiles(quantiles_arg);
      outcome = do_estimate(est, threads);
    } else if (sub == c_exact) {
      outcome = do_exact(ex);
    } else if (sub == c_scale) {
      if (o_theta->count()) sc.theta = theta_v;
      if (o_nu->count()) sc.nu = nu_v;
      if (o_gap->count()) sc.gap_delta = gap_v;
      outcome = do_scale(sc);
    } else if (sub == c_check) {
      if (!ck.weak && !o_level->count()) throw InputError("check needs --level (or --weak)");
      outcome = do_check(ck);
    } else if (sub == c_hyp) {
      outcome = do_hypotheses(hy);
    } else if (sub == c_ce) {
      if (o_pairs->count()) ce.m_pairs = m_pairs_v;
      outcome = do_counterexample(ce, threads);
    } else {
      outcome = do_experiment(xa, threads);
    }
  } catch (const InputError& e) {
    err << "input error: " << e.what() << '\n';
    return kInputError;
  } catch (const NumericalError& e) {
    err << "numerical error: " << e.what() << " (residual " << e.residual() << ")\n";
    return kNotConverged;
  }
  const auto elapsed =
      std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();

  Json doc;
  doc["manifest"] = Json{{"tool_version", kToolVersion},
                         {"subcommand", sub->get_name()},
                         {"full_config", outcome.config},
                         {"seed", outcome.seed},
                         {"timing_ms", elapsed}};
  for (auto it = outcome.report.begin(); it != outcome.report.end(); ++it) doc[it.key()] = it.value();
  out << dump_json(doc) << '\n';
  return outcome.exit_code;
}

}  // namespace hafnian::cli
