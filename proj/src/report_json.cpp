#include "hafnian/report_json.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <limits>
#include <set>

namespace hafnian {

Json json_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v < 0 ? "-inf" : "inf";
  return v;
}

double number_from_json(const Json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto& s = j.get_ref<const std::string&>();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  }
  throw InputError("expected a number, got " + j.dump());
}

std::string json_key(double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

namespace {

void write_value(std::string& out, const Json& j, int indent, int depth) {
  auto newline = [&](int d) {
    if (indent < 0) return;
    out += '\n';
    out.append(static_cast<std::size_t>(indent * d), ' ');
  };
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += '{';
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ',';
        first = false;
        newline(depth + 1);
        out += Json(it.key()).dump();
        out += indent < 0 ? ":" : ": ";
        write_value(out, it.value(), indent, depth + 1);
      }
      newline(depth);
      out += '}';
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      out += '[';
      bool first = true;
      for (const auto& el : j) {
        if (!first) out += ',';
        first = false;
        newline(depth + 1);
        write_value(out, el, indent, depth + 1);
      }
      newline(depth);
      out += ']';
      return;
    }
    case Json::value_t::number_float: {
      const double v = j.get<double>();
      if (!std::isfinite(v)) {
        out += Json(json_number(v)).dump();
        return;
      }
      char buf[40];
      std::snprintf(buf, sizeof buf, "%.17g", v);
      out += buf;
      return;
    }
    default:
      out += j.dump();
  }
}

Json quantile_map(const std::map<double, double>& m) {
  Json o = Json::object();
  for (auto [q, v] : m) o[json_key(q)] = json_number(v);
  return o;
}

Json number_array(const std::vector<double>& v) {
  Json a = Json::array();
  for (double x : v) a.push_back(json_number(x));
  return a;
}

Json line_fit(const std::optional<LineFit>& f) {
  if (!f) return nullptr;
  return Json{{"slope", json_number(f->slope)}, {"intercept", json_number(f->intercept)},
              {"r_squared", json_number(f->r_squared)}};
}

void reject_unknown(const Json& j, const std::set<std::string>& allowed, const std::string& where) {
  if (!j.is_object()) throw InputError(where + " must be a JSON object");
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (!allowed.count(it.key())) throw InputError("unknown key '" + it.key() + "' in " + where);
  }
}

template <typename T>
T get_or(const Json& j, const char* key, T fallback) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("bad value for '") + key + "': " + e.what());
  }
}

std::vector<double> positive_sorted(const Json& j, const char* key, std::vector<double> fallback) {
  if (!j.contains(key)) return fallback;
  std::vector<double> v;
  for (const auto& el : j.at(key)) v.push_back(number_from_json(el));
  if (v.empty()) throw InputError(std::string(key) + " must be nonempty");
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!(v[i] > 0.0)) throw InputError(std::string(key) + " entries must be positive");
    if (i && v[i] <= v[i - 1]) throw InputError(std::string(key) + " must be strictly increasing");
  }
  return v;
}

}  // namespace

std::string dump_json(const Json& j, int indent) {
  std::string out;
  write_value(out, j, indent, 0);
  return out;
}

Json to_json(const HafnianValue& h) {
  Json j;
  j["n"] = h.n;
  j["log_haf"] = json_number(h.log_value);
  j["value"] = h.value_if_small ? Json(json_number(*h.value_if_small)) : Json(nullptr);
  return j;
}

Json to_json(const EstimatorSummary& s) {
  Json j;
  j["num_samples"] = s.num_samples;
  j["mean_det_log"] = json_number(s.mean_det_log);
  j["relative_standard_error"] = json_number(s.relative_standard_error());
  j["logdet_mean"] = json_number(s.logdet_mean);
  j["logdet_std"] = json_number(s.logdet_std);
  j["logdet_quantiles"] = quantile_map(s.logdet_quantiles);
  j["zero_det_count"] = s.zero_det_count;
  if (s.exact_log_haf) j["exact_log_haf"] = json_number(*s.exact_log_haf);
  if (s.error_stats) {
    j["error_median"] = json_number(s.error_stats->median);
    j["error_max"] = json_number(s.error_stats->max);
  }
  return j;
}

Json to_json(const ScalingResult& r, bool include_d) {
  Json j;
  j["converged"] = r.converged;
  j["iterations"] = r.iterations;
  j["residual"] = json_number(r.residual);
  j["max_entry"] = json_number(r.max_entry);
  j["min_positive_entry"] = json_number(r.min_positive_entry);
  if (include_d) j["d"] = number_array(r.d);
  return j;
}

Json to_json(const EntryAudit& a) {
  return Json{{"max_ok", a.max_ok},
              {"min_ok", a.min_ok},
              {"observed_exponents", Json::array({json_number(a.max_exponent), json_number(a.min_exponent)})}};
}

Json to_json(const SpectralGapReport& r) {
  Json j;
  j["has_gap"] = r.has_gap;
  j["gap_witness"] = json_number(r.gap_witness);
  j["unit_eigenvalues"] = r.unit_eigenvalues;
  j["neg_unit_eigenvalues"] = r.neg_unit_eigenvalues;
  j["reducible"] = r.reducible;
  return j;
}

Json to_json(const ExpansionReport& r) {
  Json j;
  j["kappa"] = json_number(r.kappa);
  j["component_weight"] = json_number(r.component_weight);
  j["level"] = r.level;
  j["holds"] = r.holds;
  j["witness"] = r.witness ? Json(*r.witness) : Json(nullptr);
  j["checked_mode"] = to_string(r.checked_mode);
  j["sets_checked"] = r.sets_checked;
  return j;
}

Json to_json(const HypothesisReport& r) {
  Json j;
  j["n"] = r.n;
  j["scaled"] = r.scaled;
  j["scaling_converged"] = r.scaling_converged ? Json(*r.scaling_converged) : Json(nullptr);
  j["large_entry_threshold"] = json_number(r.large_entry_threshold);
  j["large_entry_edges"] = r.large_entry_edges;
  j["min_degree"] = Json{{"holds", r.degree.holds},
                         {"min_degree", r.degree.min_degree},
                         {"required", json_number(r.degree.required)},
                         {"witness", r.degree.witness_vertex ? Json(*r.degree.witness_vertex) : Json(nullptr)}};
  j["strong_expansion"] = to_json(r.expansion);
  Json witness = nullptr;
  if (r.max_entry.witness_entry) witness = Json::array({r.max_entry.witness_entry->first, r.max_entry.witness_entry->second});
  j["max_entry"] = Json{{"holds", r.max_entry.holds},
                        {"max_entry", json_number(r.max_entry.max_entry)},
                        {"bound", json_number(r.max_entry.bound)},
                        {"witness", witness}};
  j["all_hold"] = r.all_hold;
  return j;
}

Json to_json(const CounterexampleSpec& s) {
  return Json{{"delta", json_number(s.delta)}, {"n_center", s.n_center}, {"m_pairs", s.m_pairs},
              {"M", s.total_vertices()}};
}

Json to_json(const BiasReport& r) {
  Json j;
  j["M"] = r.spec.total_vertices();
  j["n_center"] = r.spec.n_center;
  j["m_pairs"] = r.spec.m_pairs;
  j["num_samples"] = r.num_samples;
  j["log_haf"] = json_number(r.log_haf);
  j["quantiles"] = quantile_map(r.quantiles);
  j["median_signed_error"] = json_number(r.median_signed_error);
  j["fraction_below"] = quantile_map(r.fraction_below);
  j["zero_det_count"] = r.zero_det_count;
  return j;
}

Json to_json(const TailReport& r) {
  Json j;
  j["n"] = r.n;
  j["trials"] = r.trials;
  Json cdf = Json::array();
  for (const auto& p : r.cdf) cdf.push_back(Json{{"threshold", json_number(p.threshold)}, {"probability", json_number(p.probability)}});
  j["cdf"] = std::move(cdf);
  j["median_smallest_singular"] = json_number(r.median_smallest);
  j["lower_tail_fit"] = line_fit(r.lower_tail_fit);
  return j;
}

Json to_json(const DensityReport& r) {
  Json j;
  j["n"] = r.n;
  j["trials"] = r.trials;
  j["max_entry"] = json_number(r.max_entry);
  Json rows = Json::array();
  for (const auto& row : r.rows) {
    rows.push_back(Json{{"eta", json_number(row.eta)},
                        {"mean_count", json_number(row.mean_count)},
                        {"max_count", row.max_count},
                        {"ratio", json_number(row.ratio)}});
  }
  j["rows"] = std::move(rows);
  j["max_ratio"] = json_number(r.max_ratio);
  j["monotone"] = r.monotone;
  return j;
}

Json to_json(const ConcentrationReport& r) {
  Json j;
  Json rows = Json::array();
  for (const auto& row : r.rows) {
    rows.push_back(Json{{"n", row.n},
                        {"exact", row.exact},
                        {"log_haf", row.log_haf ? Json(json_number(*row.log_haf)) : Json(nullptr)},
                        {"median_abs_error", json_number(row.median_abs_error)},
                        {"q90_abs_error", json_number(row.q90_abs_error)},
                        {"median_signed_error", json_number(row.median_signed_error)}});
  }
  j["rows"] = std::move(rows);
  j["abs_error_fit"] = line_fit(r.abs_error_fit);
  j["signed_error_fit"] = line_fit(r.signed_error_fit);
  return j;
}

Json to_json(const GeneratorSpec& g) {
  switch (g.kind) {
    case GeneratorSpec::Kind::complete:
      return Json{{"type", "complete"}, {"n", g.n}};
    case GeneratorSpec::Kind::random_regular:
      return Json{{"type", "random_regular"}, {"n", g.n}, {"d", g.degree}};
    case GeneratorSpec::Kind::matching:
      return Json{{"type", "matching"}, {"n", g.n}};
    case GeneratorSpec::Kind::counterexample: {
      Json j{{"type", "counterexample"}, {"delta", json_number(g.delta)}, {"n_center", g.n}};
      j["m_pairs"] = g.m_pairs ? Json(*g.m_pairs) : Json(nullptr);
      return j;
    }
    case GeneratorSpec::Kind::file:
      return Json{{"type", "file"}, {"path", g.path}};
  }
  return nullptr;
}

GeneratorSpec generator_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("type")) throw InputError("generator needs a 'type'");
  const std::string type = get_or<std::string>(j, "type", "");
  GeneratorSpec g;
  if (type == "complete" || type == "matching") {
    reject_unknown(j, {"type", "n"}, "generator");
    g.kind = type == "complete" ? GeneratorSpec::Kind::complete : GeneratorSpec::Kind::matching;
    g.n = get_or<std::size_t>(j, "n", 0);
  } else if (type == "random_regular") {
    reject_unknown(j, {"type", "n", "d"}, "generator");
    g.kind = GeneratorSpec::Kind::random_regular;
    g.n = get_or<std::size_t>(j, "n", 0);
    g.degree = get_or<std::size_t>(j, "d", 0);
  } else if (type == "counterexample") {
    reject_unknown(j, {"type", "delta", "n_center", "m_pairs"}, "generator");
    g.kind = GeneratorSpec::Kind::counterexample;
    g.delta = j.contains("delta") ? number_from_json(j.at("delta")) : 0.12;
    g.n = get_or<std::size_t>(j, "n_center", 0);
    if (j.contains("m_pairs") && !j.at("m_pairs").is_null()) g.m_pairs = get_or<std::size_t>(j, "m_pairs", 0);
  } else if (type == "file") {
    reject_unknown(j, {"type", "path"}, "generator");
    g.kind = GeneratorSpec::Kind::file;
    g.path = get_or<std::string>(j, "path", "");
    if (g.path.empty()) throw InputError("file generator needs a path");
  } else {
    throw InputError("unknown generator type '" + type + "'");
  }
  if (g.kind != GeneratorSpec::Kind::file && g.n == 0) throw InputError("generator size must be positive");
  return g;
}

Json to_json(const ExperimentConfig& c) {
  Json j;
  j["matrix_source"] = c.matrix_source.n || c.matrix_source.kind == GeneratorSpec::Kind::file
                           ? to_json(c.matrix_source)
                           : Json(nullptr);
  Json fam = Json::array();
  for (const auto& g : c.family) fam.push_back(to_json(g));
  j["family"] = std::move(fam);
  j["scale"] = c.scale;
  j["trials"] = c.trials;
  j["seed"] = c.seed;
  j["eta_grid"] = number_array(c.eta_grid);
  j["eta_points"] = c.eta_points;
  j["tail_thresholds"] = number_array(c.tail_thresholds);
  j["exact_max_n"] = c.exact_max_n;
  return j;
}

ExperimentConfig experiment_config_from_json(const Json& j) {
  reject_unknown(j,
                 {"matrix_source", "family", "scale", "trials", "seed", "eta_grid", "eta_points", "tail_thresholds",
                  "exact_max_n"},
                 "experiment config");
  ExperimentConfig c;
  if (j.contains("matrix_source") && !j.at("matrix_source").is_null()) {
    c.matrix_source = generator_from_json(j.at("matrix_source"));
  }
  if (j.contains("family")) {
    for (const auto& g : j.at("family")) c.family.push_back(generator_from_json(g));
  }
  c.scale = get_or<bool>(j, "scale", c.scale);
  c.trials = get_or<std::size_t>(j, "trials", c.trials);
  c.seed = get_or<std::uint64_t>(j, "seed", c.seed);
  c.eta_points = get_or<std::size_t>(j, "eta_points", c.eta_points);
  c.exact_max_n = get_or<std::size_t>(j, "exact_max_n", c.exact_max_n);
  if (j.contains("eta_grid") && j.at("eta_grid").empty()) {
    c.eta_grid.clear();
  } else {
    c.eta_grid = positive_sorted(j, "eta_grid", c.eta_grid);
  }
  c.tail_thresholds = positive_sorted(j, "tail_thresholds", c.tail_thresholds);
  if (c.trials == 0) throw InputError("trials must be positive");
  return c;
}

}  // namespace hafnian
