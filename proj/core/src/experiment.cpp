#include "latticefield/experiment.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "latticefield/dependence.hpp"
#include "latticefield/oracle.hpp"
#include "latticefield/sums.hpp"

namespace lf {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& msg) { throw ConfigError(msg); }

void check_keys(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
  if (!obj.is_object()) fail(where + ": expected an object");
  for (const auto& item : obj.items())
    if (allowed.find(item.key()) == allowed.end())
      fail(where + ": unknown key '" + item.key() + "'");
}

const json& require(const json& obj, const std::string& key, const std::string& where) {
  const auto it = obj.find(key);
  if (it == obj.end()) fail(where + ": missing key '" + key + "'");
  return *it;
}

double as_number(const json& v, const std::string& where) {
  if (!v.is_number()) fail(where + ": expected a number");
  return v.get<double>();
}

int as_int(const json& v, const std::string& where) {
  if (!v.is_number_integer()) fail(where + ": expected an integer");
  return v.get<int>();
}

bool as_bool(const json& v, const std::string& where) {
  if (!v.is_boolean()) fail(where + ": expected a boolean");
  return v.get<bool>();
}

std::string as_string(const json& v, const std::string& where) {
  if (!v.is_string()) fail(where + ": expected a string");
  return v.get<std::string>();
}

LatticePoint as_point(const json& v, const std::string& where) {
  if (!v.is_array() || v.empty()) fail(where + ": expected a coordinate array");
  LatticePoint p;
  for (const auto& c : v) {
    if (!c.is_number_integer()) fail(where + ": coordinates must be integers");
    p.push_back(c.get<Coord>());
  }
  return p;
}

std::vector<double> as_doubles(const json& v, const std::string& where) {
  if (!v.is_array()) fail(where + ": expected an array of numbers");
  std::vector<double> out;
  for (const auto& x : v) out.push_back(as_number(x, where));
  return out;
}

InnovationSpec spec_from_json(const json& v, const std::string& where) {
  try {
    if (v.is_string()) return spec_from_name(v.get<std::string>());
    if (v.is_object()) {
      check_keys(v, {"type", "prob", "a", "b"}, where);
      if (as_string(require(v, "type", where), where) != "two_point")
        fail(where + ": object form is only for two_point");
      return InnovationSpec::two_point(as_number(require(v, "prob", where), where),
                                       as_number(require(v, "a", where), where),
                                       as_number(require(v, "b", where), where));
    }
  } catch (const std::invalid_argument& e) {
    fail(where + ": " + e.what());
  }
  fail(where + ": expected a distribution name or two_point object");
}

std::vector<KernelEntry> kernel_from_json(const json& v, const std::string& where) {
  if (!v.is_array() || v.empty()) fail(where + ": expected a nonempty array of kernel entries");
  std::vector<KernelEntry> out;
  for (const auto& e : v) {
    check_keys(e, {"offset", "coeff"}, where);
    out.push_back({as_point(require(e, "offset", where), where),
                   as_number(require(e, "coeff", where), where)});
  }
  return out;
}

Example1Params preset_params(const std::string& name, int k_max, const std::string& where) {
  if (name == "full_scale") return Example1Params::paper(k_max);
  if (name == "small") return Example1Params::small(k_max);
  fail(where + ": unknown preset '" + name + "' (use full_scale or small)");
}

}  // namespace

std::uint64_t fnv1a(const std::string& text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string ExperimentConfig::hash() const {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(fnv1a(canonical.dump())));
  return buf;
}

std::uint64_t parse_seed_text(const std::string& text) {
  try {
    std::size_t pos = 0;
    const int base = text.rfind("0x", 0) == 0 || text.rfind("0X", 0) == 0 ? 16 : 10;
    const std::uint64_t v = std::stoull(text, &pos, base);
    if (pos != text.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    fail("seed: expected a decimal or 0x-hex integer, got '" + text + "'");
  }
}

std::shared_ptr<FieldModel> make_model(const json& d, std::uint64_t seed) {
  const std::string where = "model";
  const std::string type = as_string(require(d, "type", where), where);
  try {
    if (type == "iid") {
      check_keys(d, {"type", "dimension", "innovation"}, where);
      const int dim = as_int(require(d, "dimension", where), where);
      InnovationField innov(spec_from_json(d.value("innovation", json("rademacher")), where),
                            seed, dim);
      return std::make_shared<KernelFieldModel>(
          std::vector<KernelEntry>{{origin(dim), 1.0}}, std::move(innov));
    }
    if (type == "kernel") {
      check_keys(d, {"type", "dimension", "innovation", "kernel"}, where);
      const int dim = as_int(require(d, "dimension", where), where);
      InnovationField innov(spec_from_json(d.value("innovation", json("rademacher")), where),
                            seed, dim);
      return std::make_shared<KernelFieldModel>(
          kernel_from_json(require(d, "kernel", where), where), std::move(innov));
    }
    if (type == "difference") {
      check_keys(d, {"type", "innovation"}, where);
      InnovationField innov(spec_from_json(d.value("innovation", json("rademacher")), where),
                            seed, 1);
      return make_difference_field(std::move(innov));
    }
    if (type == "volterra") {
      check_keys(d, {"type", "dimension", "innovation", "kernel", "pairs"}, where);
      const int dim = as_int(require(d, "dimension", where), where);
      std::vector<VolterraPair> pairs;
      for (const auto& e : require(d, "pairs", where)) {
        check_keys(e, {"k", "l", "coeff"}, where + ".pairs");
        pairs.push_back({as_point(require(e, "k", where), where),
                         as_point(require(e, "l", where), where),
                         as_number(require(e, "coeff", where), where)});
      }
      std::vector<KernelEntry> kernel;
      if (d.contains("kernel")) kernel = kernel_from_json(d["kernel"], where);
      InnovationField innov(spec_from_json(d.value("innovation", json("rademacher")), where),
                            seed, dim);
      return std::make_shared<VolterraFieldModel>(std::move(kernel), std::move(pairs),
                                                  std::move(innov));
    }
  } catch (const std::invalid_argument& e) {
    fail(where + ": " + e.what());
  }
  fail(where + ": unknown type '" + type + "' (use iid, kernel, difference, volterra)");
}

namespace {

std::vector<double> axis_kernel_from_json(const json& v, const std::string& where) {
  if (v.is_array()) return as_doubles(v, where);
  if (v.is_object()) {
    check_keys(v, {"fractional"}, where);
    const json& f = require(v, "fractional", where);
    check_keys(f, {"hurst", "length"}, where + ".fractional");
    return fractional_kernel(as_number(require(f, "hurst", where), where),
                             static_cast<std::size_t>(as_int(require(f, "length", where), where)));
  }
  fail(where + ": expected a number array or {\"fractional\": ...}");
}

}  // namespace

std::shared_ptr<WeightScheme> make_scheme(const json& d) {
  const std::string where = "scheme";
  const std::string type = as_string(require(d, "type", where), where);
  try {
    if (type == "rectangle") {
      check_keys(d, {"type", "n", "t"}, where);
      return std::make_shared<RectangleWeights>(
          static_cast<Coord>(as_int(require(d, "n", where), where)),
          as_doubles(require(d, "t", where), where));
    }
    if (type == "index_set") {
      check_keys(d, {"type", "sites", "oscillating_n"}, where);
      if (d.contains("oscillating_n"))
        return std::make_shared<IndexSetWeights>(
            example2_gamma(as_int(d["oscillating_n"], where)));
      std::vector<LatticePoint> sites;
      for (const auto& s : require(d, "sites", where)) sites.push_back(as_point(s, where));
      return std::make_shared<IndexSetWeights>(std::move(sites));
    }
    if (type == "set_indexed") {
      check_keys(d, {"type", "gamma_exponents", "region", "n"}, where);
      PowerMeasure measure{as_doubles(require(d, "gamma_exponents", where), where)};
      std::vector<Box> region;
      for (const auto& b : require(d, "region", where)) {
        check_keys(b, {"lo", "hi"}, where + ".region");
        region.push_back({as_doubles(require(b, "lo", where), where),
                          as_doubles(require(b, "hi", where), where)});
      }
      return std::make_shared<SetIndexedWeights>(
          std::move(measure), std::move(region),
          static_cast<Coord>(as_int(require(d, "n", where), where)));
    }
    if (type == "product_linear") {
      check_keys(d, {"type", "axis_kernels", "n", "t"}, where);
      std::vector<std::vector<double>> kernels;
      for (const auto& k : require(d, "axis_kernels", where))
        kernels.push_back(axis_kernel_from_json(k, where + ".axis_kernels"));
      return std::make_shared<ProductLinearWeights>(
          std::move(kernels), static_cast<Coord>(as_int(require(d, "n", where), where)),
          as_doubles(require(d, "t", where), where));
    }
  } catch (const std::invalid_argument& e) {
    fail(where + ": " + e.what());
  }
  fail(where + ": unknown type '" + type +
       "' (use rectangle, index_set, set_indexed, product_linear)");
}

namespace {

const std::set<std::string> kCommonKeys{"experiment", "seed", "reps", "workers"};

std::set<std::string> with_common(std::set<std::string> extra) {
  extra.insert(kCommonKeys.begin(), kCommonKeys.end());
  return extra;
}

json experiment_defaults(const std::string& experiment) {
  if (experiment == "clt")
    return json{{"reps", 10000},
                {"model", {{"type", "iid"}, {"dimension", 1}, {"innovation", "gaussian"}}},
                {"scheme", {{"type", "rectangle"}, {"n", 64}, {"t", {1.0}}}},
                {"normalization", "by_b_n"},
                {"tests", {"ks_normal", "variance_ratio"}},
                {"ks_level", 0.01},
                {"variance_rel_tol", 0.05},
                {"sigma_floor", 1e-9},
                {"force_direct", false}};
  if (experiment == "counterexample1")
    return json{{"reps", 10000},    {"even_preset", "full_scale"}, {"even_k", 2},
                {"odd_preset", "small"}, {"odd_k", 3},
                {"level", 0.01},    {"full_sum", false}};
  if (experiment == "counterexample2")
    return json{{"reps", 4000},        {"n_max", 16},
                {"innovation", "rademacher"}, {"mc_check_n", {6, 9, 12}},
                {"spread_min", 1.5},   {"liminf_floor", 0.1}};
  if (experiment == "fdd")
    return json{{"reps", 10000}, {"rel_tol", 0.10}, {"normalizer", "auto"}};
  if (experiment == "paths") return json{{"reps", 200}, {"normalizer", "auto"}};
  if (experiment == "dependence")
    return json{{"reps", 10000},
                {"model",
                 {{"type", "kernel"},
                  {"dimension", 1},
                  {"innovation", "rademacher"},
                  {"kernel",
                   {{{"offset", {0}}, {"coeff", 1.0}}, {{"offset", {1}}, {"coeff", 0.5}}}}}},
                {"p_orders", {2}},
                {"window_radius", 2},
                {"n_outer", 200},
                {"n_inner", 64},
                {"n_samples", 20000}};
  if (experiment == "oracle") return json{{"reps", 10000}};
  fail("experiment: unknown value '" + experiment +
       "' (use clt, counterexample1, counterexample2, fdd, paths, dependence, oracle)");
}

std::set<std::string> experiment_keys(const std::string& experiment) {
  if (experiment == "clt")
    return with_common({"model", "scheme", "normalization", "tests", "ks_level",
                        "variance_rel_tol", "sigma_floor", "truncation", "force_direct"});
  if (experiment == "counterexample1")
    return with_common({"even_preset", "even_k", "odd_preset", "odd_k", "level", "full_sum"});
  if (experiment == "counterexample2")
    return with_common({"n_max", "innovation", "mc_check_n", "spread_min", "liminf_floor"});
  if (experiment == "fdd")
    return with_common({"model", "points", "normalizer", "target", "hurst", "rel_tol",
                        "truncation"});
  if (experiment == "paths") return with_common({"model", "points", "normalizer", "truncation"});
  if (experiment == "dependence")
    return with_common(
        {"model", "p_orders", "window_radius", "n_outer", "n_inner", "n_samples"});
  if (experiment == "oracle") return kCommonKeys;
  fail("experiment: unknown value '" + experiment + "'");
}

void validate_point_list(const json& points) {
  if (!points.is_array() || points.empty()) fail("points: expected a nonempty array");
  for (const auto& p : points) {
    check_keys(p, {"label", "scheme", "t"}, "points");
    as_string(require(p, "label", "points"), "points.label");
    make_scheme(require(p, "scheme", "points"));
  }
}

}  // namespace

ExperimentConfig parse_config(const json& doc) {
  if (!doc.is_object()) fail("config: expected a JSON object");
  ExperimentConfig cfg;
  cfg.experiment = as_string(require(doc, "experiment", "config"), "experiment");

  json canonical = experiment_defaults(cfg.experiment);
  canonical["experiment"] = cfg.experiment;
  canonical["seed"] = 1;
  canonical["workers"] = 1;
  const auto allowed = experiment_keys(cfg.experiment);
  check_keys(doc, allowed, "config");
  for (const auto& item : doc.items()) canonical[item.key()] = item.value();

  const json& seed = canonical["seed"];
  if (seed.is_string())
    cfg.seed = parse_seed_text(seed.get<std::string>());
  else if (seed.is_number_unsigned() || seed.is_number_integer())
    cfg.seed = seed.get<std::uint64_t>();
  else
    fail("seed: expected an integer or string");
  canonical["seed"] = cfg.seed;

  cfg.reps = as_int(canonical["reps"], "reps");
  if (cfg.reps < 100) fail("reps: must be >= 100 (got " + std::to_string(cfg.reps) + ")");
  cfg.workers = as_int(canonical["workers"], "workers");
  if (cfg.workers < 1) fail("workers: must be >= 1");

  // validate nested descriptors up front so bad configs die before any work
  if (canonical.contains("model")) make_model(canonical["model"], 1);
  if (canonical.contains("scheme")) make_scheme(canonical["scheme"]);
  if (cfg.experiment == "fdd" || cfg.experiment == "paths")
    validate_point_list(require(canonical, "points", "config"));
  if (canonical.contains("truncation")) as_int(canonical["truncation"], "truncation");
  if (canonical.contains("innovation")) spec_from_json(canonical["innovation"], "innovation");

  cfg.canonical = std::move(canonical);
  return cfg;
}

ExperimentConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("config: cannot open " + path);
  json doc;
  try {
    in >> doc;
  } catch (const json::parse_error& e) {
    fail("config: invalid JSON in " + path + ": " + e.what());
  }
  return parse_config(doc);
}

namespace {

struct BuiltPoints {
  std::vector<FddPoint> points;
  std::vector<std::vector<double>> t_values;  // t per point when given
};

BuiltPoints build_points(const json& points) {
  BuiltPoints out;
  for (const auto& p : points) {
    out.points.push_back({p["label"].get<std::string>(), make_scheme(p["scheme"])});
    out.t_values.push_back(p.contains("t") ? as_doubles(p["t"], "points.t")
                                           : std::vector<double>{});
  }
  return out;
}

double resolve_normalizer(const json& spec, const BuiltPoints& built) {
  if (spec.is_number()) {
    const double v = spec.get<double>();
    if (v <= 0.0) fail("normalizer: must be positive");
    return v;
  }
  if (spec.is_string() && spec.get<std::string>() == "auto") {
    // set-indexed points: n^{beta/2}; otherwise the largest point norm
    if (const auto* si = dynamic_cast<const SetIndexedWeights*>(built.points[0].scheme.get()))
      return std::pow(static_cast<double>(si->scale()), si->measure().beta() / 2.0);
    double best = 0.0;
    for (const auto& p : built.points) best = std::max(best, p.scheme->norm());
    if (best <= 0.0) fail("normalizer: every point is degenerate");
    return best;
  }
  if (spec.is_object()) {
    check_keys(spec, {"type", "index", "n", "beta"}, "normalizer");
    const std::string type = as_string(require(spec, "type", "normalizer"), "normalizer");
    if (type == "scheme_norm") {
      const int i = as_int(require(spec, "index", "normalizer"), "normalizer");
      if (i < 0 || static_cast<std::size_t>(i) >= built.points.size())
        fail("normalizer: index out of range");
      const double v = built.points[static_cast<std::size_t>(i)].scheme->norm();
      if (v <= 0.0) fail("normalizer: chosen point has zero norm");
      return v;
    }
    if (type == "n_beta")
      return std::pow(as_number(require(spec, "n", "normalizer"), "normalizer"),
                      as_number(require(spec, "beta", "normalizer"), "normalizer") / 2.0);
  }
  fail("normalizer: expected a number, \"auto\", or {type: scheme_norm | n_beta}");
}

double measure_overlap(const SetIndexedWeights& a, const SetIndexedWeights& b) {
  double mass = 0.0;
  for (const auto& box : a.region()) mass += a.measure().intersection_mass(b.region(), box);
  return mass;
}

double fbs_kernel(const std::vector<double>& hurst, const std::vector<double>& s,
                  const std::vector<double>& t) {
  if (s.size() != hurst.size() || t.size() != hurst.size())
    fail("fbs target: every point needs a t vector matching the hurst dimension");
  double v = 1.0;
  for (std::size_t q = 0; q < hurst.size(); ++q) {
    const double h2 = 2.0 * hurst[q];
    v *= 0.5 * (std::pow(s[q], h2) + std::pow(t[q], h2) - std::pow(std::abs(t[q] - s[q]), h2));
  }
  return v;
}

std::vector<std::vector<double>> build_fdd_target(const json& c, const FieldModel& model,
                                                  const BuiltPoints& built, double normalizer) {
  const std::size_t k = built.points.size();
  std::vector<std::vector<double>> target(k, std::vector<double>(k, 0.0));
  const json& t = c["target"];
  if (t.is_array()) {
    if (t.size() != k) fail("target: matrix row count must match points");
    for (std::size_t r = 0; r < k; ++r) {
      const auto row = as_doubles(t[r], "target");
      if (row.size() != k) fail("target: matrix must be square");
      target[r] = row;
    }
    return target;
  }
  const std::string kind = as_string(t, "target");
  if (kind == "set_indexed") {
    const auto* kernel = dynamic_cast<const KernelFieldModel*>(&model);
    if (!kernel) fail("target set_indexed: needs a kernel-type model for sigma^2");
    const double s2 = sigma2_analytic(*kernel);
    for (std::size_t r = 0; r < k; ++r) {
      const auto* a = dynamic_cast<const SetIndexedWeights*>(built.points[r].scheme.get());
      if (!a) fail("target set_indexed: every point must use set_indexed weights");
      for (std::size_t s = r; s < k; ++s) {
        const auto* b = dynamic_cast<const SetIndexedWeights*>(built.points[s].scheme.get());
        target[r][s] = target[s][r] = s2 * measure_overlap(*a, *b);
      }
    }
    return target;
  }
  if (kind == "fbs") {
    const auto hurst = as_doubles(require(c, "hurst", "config"), "hurst");
    for (std::size_t r = 0; r < k; ++r)
      for (std::size_t s = r; s < k; ++s)
        target[r][s] = target[s][r] =
            fbs_kernel(hurst, built.t_values[r], built.t_values[s]);
    return target;
  }
  if (kind == "exact") {
    const auto* kernel = dynamic_cast<const KernelFieldModel*>(&model);
    if (!kernel) fail("target exact: needs a kernel-type model");
    const double m2 = kernel->innovation().spec().abs_moment(2);
    std::vector<CompiledSum> compiled;
    for (const auto& p : built.points) compiled.emplace_back(*kernel, *p.scheme);
    for (std::size_t r = 0; r < k; ++r)
      for (std::size_t s = r; s < k; ++s)
        target[r][s] = target[s][r] =
            CompiledSum::exact_cross_moment(compiled[r], compiled[s], m2) /
            (normalizer * normalizer);
    return target;
  }
  fail("target: expected a matrix or one of set_indexed, fbs, exact");
}

std::optional<Coord> truncation_of(const json& c) {
  if (!c.contains("truncation")) return std::nullopt;
  return static_cast<Coord>(c["truncation"].get<int>());
}

}  // namespace

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  const json& c = cfg.canonical;
  ExperimentResult result;

  if (cfg.experiment == "clt") {
    auto model = make_model(c["model"], cfg.seed);
    auto scheme = make_scheme(c["scheme"]);
    CltOptions opts;
    const std::string norm = as_string(c["normalization"], "normalization");
    if (norm == "by_b_n")
      opts.normalization = Normalization::by_b_n;
    else if (norm == "by_sigma_n")
      opts.normalization = Normalization::by_sigma_n;
    else
      fail("normalization: expected by_b_n or by_sigma_n");
    opts.reps = cfg.reps;
    opts.seed = cfg.seed;
    opts.workers = cfg.workers;
    opts.ks_level = as_number(c["ks_level"], "ks_level");
    opts.variance_rel_tol = as_number(c["variance_rel_tol"], "variance_rel_tol");
    opts.sigma_floor = as_number(c["sigma_floor"], "sigma_floor");
    opts.force_direct = as_bool(c["force_direct"], "force_direct");
    opts.truncation = truncation_of(c);
    opts.tests.clear();
    for (const auto& t : c["tests"]) opts.tests.push_back(as_string(t, "tests"));
    result = run_clt(*model, *scheme, opts);
  } else if (cfg.experiment == "counterexample1") {
    Example1Options opts;
    opts.even_k = as_int(c["even_k"], "even_k");
    opts.odd_k = as_int(c["odd_k"], "odd_k");
    opts.even_params = preset_params(as_string(c["even_preset"], "even_preset"),
                                     std::max(opts.even_k, 1), "even_preset");
    opts.odd_params =
        preset_params(as_string(c["odd_preset"], "odd_preset"), std::max(opts.odd_k, 1),
                      "odd_preset");
    opts.reps = cfg.reps;
    opts.seed = cfg.seed;
    opts.workers = cfg.workers;
    opts.level = as_number(c["level"], "level");
    opts.full_sum = as_bool(c["full_sum"], "full_sum");
    result = run_counterexample1(opts);
  } else if (cfg.experiment == "counterexample2") {
    Example2Options opts;
    opts.n_max = as_int(c["n_max"], "n_max");
    opts.innovation = spec_from_json(c["innovation"], "innovation");
    opts.mc_reps = cfg.reps;
    opts.mc_check_n.clear();
    for (const auto& n : c["mc_check_n"]) opts.mc_check_n.push_back(as_int(n, "mc_check_n"));
    opts.seed = cfg.seed;
    opts.spread_min = as_number(c["spread_min"], "spread_min");
    opts.liminf_floor = as_number(c["liminf_floor"], "liminf_floor");
    result = run_counterexample2(opts);
  } else if (cfg.experiment == "fdd") {
    auto model = make_model(c["model"], cfg.seed);
    auto built = build_points(require(c, "points", "config"));
    FddOptions opts;
    opts.reps = cfg.reps;
    opts.seed = cfg.seed;
    opts.workers = cfg.workers;
    opts.rel_tol = as_number(c["rel_tol"], "rel_tol");
    opts.truncation = truncation_of(c);
    opts.normalizer = resolve_normalizer(c["normalizer"], built);
    if (c.contains("target"))
      opts.target = build_fdd_target(c, *model, built, opts.normalizer);
    result = run_fdd_covariance(*model, built.points, opts);
  } else if (cfg.experiment == "paths") {
    auto model = make_model(c["model"], cfg.seed);
    auto built = build_points(require(c, "points", "config"));
    PathOptions opts;
    opts.reps = cfg.reps;
    opts.seed = cfg.seed;
    opts.workers = cfg.workers;
    opts.truncation = truncation_of(c);
    opts.normalizer = resolve_normalizer(c["normalizer"], built);
    result = run_path_export(*model, built.points, opts);
  } else if (cfg.experiment == "dependence") {
    auto model = make_model(c["model"], cfg.seed);
    DependenceOptions opts;
    opts.p_orders.clear();
    for (const auto& p : c["p_orders"]) opts.p_orders.push_back(as_int(p, "p_orders"));
    opts.nested.window_radius = as_int(c["window_radius"], "window_radius");
    opts.nested.n_outer = as_int(c["n_outer"], "n_outer");
    opts.nested.n_inner = as_int(c["n_inner"], "n_inner");
    opts.nested.seed = cfg.seed;
    opts.n_samples = as_int(c["n_samples"], "n_samples");
    const auto report = dependence_report(*model, opts);
    result.experiment = "dependence";
    result.seed = cfg.seed;
    for (const auto& [p, v] : report.delta_p) {
      result.scalars["delta_" + std::to_string(p)] = v;
      const auto se = report.delta_p_se.find(p);
      if (se != report.delta_p_se.end())
        result.scalars["delta_" + std::to_string(p) + "_se"] = se->second;
    }
    result.scalars["wu_2"] = report.wu2;
    result.scalars["cov_sum_abs"] = report.cov_sum_abs;
    result.scalars["sigma2"] = report.sigma2;
    if (report.method == "monte_carlo") {
      result.scalars["wu_2_se"] = report.wu2_se;
      result.scalars["cov_sum_abs_se"] = report.cov_sum_abs_se;
      result.scalars["sigma2_se"] = report.sigma2_se;
    }
    result.scalars["tail_warning"] = report.tail_warning ? 1.0 : 0.0;
    // covariance bound: sum |Cov| <= Delta_2^2 (3 SE slack when estimated)
    const double d2 = report.delta_p.count(2) ? report.delta_p.at(2) : 0.0;
    const double slack =
        report.method == "monte_carlo"
            ? 3.0 * (report.cov_sum_abs_se +
                     2.0 * d2 * (report.delta_p_se.count(2) ? report.delta_p_se.at(2) : 0.0))
            : 1e-12;
    TestOutcome bound;
    bound.name = "covariance_bound";
    bound.statistic = report.cov_sum_abs;
    bound.threshold = d2 * d2 + slack;
    bound.pass = report.delta_p.count(2) == 0 || bound.statistic <= bound.threshold;
    bound.note = "sum of |Cov(X_0, X_j)| against Delta_2^2 (" + report.method + ")";
    result.tests.push_back(bound);
  } else if (cfg.experiment == "oracle") {
    result.experiment = "oracle";
    result.seed = cfg.seed;
    for (const auto& check : run_oracle_suite(cfg.seed)) {
      TestOutcome t;
      t.name = check.name;
      t.statistic = check.discrepancy;
      t.threshold = check.tolerance;
      t.pass = check.pass;
      result.tests.push_back(t);
    }
  } else {
    fail("experiment: unknown value '" + cfg.experiment + "'");
  }

  result.config_hash = cfg.hash();
  return result;
}

std::string list_presets() {
  std::ostringstream out;
  out << "model presets (use as \"model\" in a config):\n"
      << "  iid d=1/2        {\"type\":\"iid\",\"dimension\":d,\"innovation\":\"rademacher\"}\n"
      << "  four-point d=2   {\"type\":\"kernel\",\"dimension\":2,\"kernel\":[offsets (0,0),(1,0),(0,1),(1,1)]}\n"
      << "  difference d=1   {\"type\":\"difference\"}  (X_i = eps_i - eps_{i-1}, degenerate sigma^2)\n"
      << "  volterra d=1     {\"type\":\"volterra\",\"pairs\":[{\"k\":[0],\"l\":[1],\"coeff\":1}]}\n"
      << "scheme presets:\n"
      << "  rectangle        {\"type\":\"rectangle\",\"n\":64,\"t\":[1.0,...]}\n"
      << "  index_set        {\"type\":\"index_set\",\"oscillating_n\":12} (oscillating-variance sets, |Gamma_n|=2^n)\n"
      << "  set_indexed      {\"type\":\"set_indexed\",\"gamma_exponents\":[1.0,0.0],\"region\":[{\"lo\":[0,0],\"hi\":[1,1]}],\"n\":64}\n"
      << "  product_linear   {\"type\":\"product_linear\",\"axis_kernels\":[{\"fractional\":{\"hurst\":0.8,\"length\":512}}],\"n\":2048,\"t\":[1.0]}\n"
      << "interval-partition field presets (counterexample1):\n"
      << "  full_scale      alpha_k = 2^{-k^2}, n_k = 2^{3 k^2}\n"
      << "  small            alpha_k = 2^{-k},   n_k = 2^{2k+2}\n";
  return out.str();
}

}  // namespace lf
