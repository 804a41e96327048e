#include "sphlrd/scenario.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include "sphlrd/errors.hpp"
#include "sphlrd/rng.hpp"

namespace sphlrd {
namespace {

using nlohmann::json;

[[noreturn]] void bad(const std::string& key, const std::string& what) {
  throw ConfigError("scenario key '" + key + "': " + what);
}

template <class T>
T get_or(const json& j, const char* key, T fallback) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    bad(key, e.what());
  }
}

// {"order": p, "law": "power", "scale": [c_1..c_p], "exponent": e} gives
// lambda_n(k) = c_k n^{-e}; {"table": [[...], ...]} lists rows n = 1..M.
Eigen::MatrixXd coefficient_matrix(const json& j, const std::string& key, int M) {
  if (j.is_null()) return Eigen::MatrixXd(M, 0);
  if (j.contains("table")) {
    const auto rows = j.at("table").get<std::vector<std::vector<double>>>();
    if (static_cast<int>(rows.size()) != M) bad(key, "table needs one row per scale");
    const auto p = static_cast<Eigen::Index>(rows.empty() ? 0 : rows.front().size());
    Eigen::MatrixXd out(M, p);
    for (int n = 0; n < M; ++n) {
      if (static_cast<Eigen::Index>(rows[static_cast<std::size_t>(n)].size()) != p) bad(key, "ragged table");
      for (Eigen::Index k = 0; k < p; ++k) out(n, k) = rows[static_cast<std::size_t>(n)][static_cast<std::size_t>(k)];
    }
    return out;
  }
  const auto law = get_or<std::string>(j, "law", "power");
  if (law != "power") bad(key, "unknown law '" + law + "'");
  const auto scale = get_or<std::vector<double>>(j, "scale", {});
  const auto exponent = get_or<double>(j, "exponent", 0.0);
  Eigen::MatrixXd out(M, static_cast<Eigen::Index>(scale.size()));
  for (int n = 1; n <= M; ++n) {
    for (std::size_t k = 0; k < scale.size(); ++k) {
      out(n - 1, static_cast<Eigen::Index>(k)) = scale[k] * std::pow(static_cast<double>(n), -exponent);
    }
  }
  return out;
}

std::vector<double> variance_sequence(const json& j, int M) {
  if (j.contains("table")) {
    auto v = j.at("table").get<std::vector<double>>();
    if (static_cast<int>(v.size()) != M) bad("sigma2", "table needs one value per scale");
    return v;
  }
  const auto law = get_or<std::string>(j, "law", "power");
  if (law != "power") bad("sigma2", "unknown law '" + law + "'");
  const auto scale = get_or<double>(j, "scale", 1.0);
  const auto exponent = get_or<double>(j, "exponent", 0.0);
  std::vector<double> v;
  for (int n = 1; n <= M; ++n) v.push_back(scale * std::pow(static_cast<double>(n), -exponent));
  return v;
}

LrdProfile lrd_profile(const json& j, int M, const ScaleSet& srd) {
  LrdProfile p;
  const auto law = get_or<std::string>(j, "law", "compact");
  if (law == "compact") {
    p = compact_profile(M);
  } else if (law == "noncompact") {
    p = noncompact_profile(M);
  } else if (law == "table") {
    p.alphas = get_or<std::vector<double>>(j, "alphas", {});
    p.label = "table";
    if (p.truncation() != M) bad("lrd", "alphas needs one value per scale");
  } else {
    bad("lrd", "unknown law '" + law + "'");
  }
  for (int n : srd.scales()) {
    if (n >= 1 && n <= M) p.alphas[static_cast<std::size_t>(n - 1)] = 0.0;
  }
  p.label = "theta0";
  return p;
}

ScaleSet scale_set(const json& j) {
  if (j.is_null()) return {};
  if (j.is_array()) return ScaleSet(j.get<std::vector<int>>());
  if (j.is_object()) return ScaleSet::range(j.at("first").get<int>(), j.at("last").get<int>());
  bad("srd_set", "expected a list or {first, last}");
}

SpherePoint pole_of(const json& j, std::uint64_t seed) {
  if (j.is_null() || (j.is_string() && j.get<std::string>() == "random")) return draw_pole(seed);
  if (j.is_object()) return SpherePoint::from_angles(j.at("colatitude").get<double>(), j.at("longitude").get<double>());
  bad("pole", "expected \"random\" or {colatitude, longitude}");
}

std::vector<int> positive_list(const json& j, const char* key, std::vector<int> fallback) {
  auto v = get_or<std::vector<int>>(j, key, std::move(fallback));
  if (v.empty()) bad(key, "must not be empty");
  for (int x : v) {
    if (x < 1) bad(key, "entries must be at least 1");
  }
  return v;
}

std::vector<double> thresholds_of(const json& j) {
  if (j.is_null()) return threshold_grid(0.001, 100);
  if (j.is_array()) return j.get<std::vector<double>>();
  return threshold_grid(j.at("step").get<double>(), j.at("count").get<int>());
}

Scenario from_json(const json& doc) {
  if (!doc.is_object()) throw ConfigError("scenario must be a JSON object");
  Scenario s;
  try {
    s.name = get_or<std::string>(doc, "name", "scenario");
    s.seed = get_or<std::uint64_t>(doc, "seed", 0);
    const int M = get_or<int>(doc, "truncation", 0);
    if (M < 1) bad("truncation", "must be at least 1");

    const auto srd = scale_set(doc.value("srd_set", json()));
    const auto phi = coefficient_matrix(doc.value("ar", json()), "ar", M);
    const auto psi = coefficient_matrix(doc.value("ma", json()), "ma", M);
    const auto sigma2 = variance_sequence(doc.value("sigma2", json::object()), M);
    const auto lrd = lrd_profile(doc.value("lrd", json::object()), M, srd);
    const auto pole = pole_of(doc.value("pole", json()), derive_seed(s.seed, {kStreamPole}));
    s.model = ModelSpec::make(SphArmaSpec(phi, psi, sigma2), lrd, srd, pole);
    s.model.validate();

    const auto sim = doc.value("simulation", json::object());
    s.simulation.filter_lag = get_or<int>(sim, "filter_lag", s.simulation.filter_lag);
    s.simulation.burn_in = get_or<int>(sim, "burn_in", 2 * s.simulation.filter_lag);
    const auto rep = get_or<std::string>(sim, "representation", "zonal");
    if (rep == "zonal") {
      s.simulation.representation = Representation::zonal;
    } else if (rep == "full") {
      s.simulation.representation = Representation::full;
    } else {
      bad("simulation.representation", "expected zonal or full");
    }

    auto& e = s.estimation;
    const auto est = doc.value("estimation", json::object());
    const auto kind = get_or<std::string>(est, "estimator", srd.empty() ? "contrast" : "mixed");
    if (kind == "contrast") {
      e.estimator = EstimatorKind::contrast;
    } else if (kind == "mixed") {
      e.estimator = EstimatorKind::mixed;
    } else {
      bad("estimation.estimator", "expected contrast or mixed");
    }
    e.gamma = get_or<double>(est, "gamma", e.gamma);
    e.w_tilde = get_or<std::vector<double>>(est, "w_tilde", {});
    if (!e.w_tilde.empty() && static_cast<int>(e.w_tilde.size()) != M) bad("estimation.w_tilde", "one value per scale");
    e.quadrature_nodes = get_or<int>(est, "quadrature_nodes", e.quadrature_nodes);
    e.candidate_count = get_or<int>(est, "candidates", e.candidate_count);
    e.decreasing_candidates = get_or<bool>(est, "decreasing_candidates", e.decreasing_candidates);
    e.candidate_grid = get_or<std::vector<double>>(est, "candidate_grid", {});
    if (e.candidate_grid.empty() && e.candidate_count < 1) bad("estimation.candidates", "must be at least 1");
    const auto window = get_or<std::string>(est, "window", "gaussian");
    if (window == "gaussian") {
      e.window = SmoothingWindow::Shape::gaussian;
    } else if (window == "bartlett") {
      e.window = SmoothingWindow::Shape::bartlett;
    } else {
      bad("estimation.window", "expected gaussian or bartlett");
    }
    e.bandwidth = get_or<double>(est, "bandwidth", e.bandwidth);
    if (!(e.bandwidth > 0.0 && e.bandwidth <= std::numbers::pi)) bad("estimation.bandwidth", "must lie in (0, pi]");

    const auto exp = doc.value("experiment", json::object());
    auto& x = s.experiment;
    x.lengths = positive_list(exp, "lengths", x.lengths);
    x.replications = positive_list(exp, "replications", x.replications);
    x.full_lengths = positive_list(exp, "full_lengths", x.full_lengths);
    x.full_replications = positive_list(exp, "full_replications", x.full_replications);
    x.thresholds = thresholds_of(exp.value("thresholds", json()));
    for (std::size_t i = 0; i < x.thresholds.size(); ++i) {
      if (!(x.thresholds[i] > 0.0) || (i > 0 && !(x.thresholds[i] > x.thresholds[i - 1]))) {
        bad("experiment.thresholds", "must be positive and strictly increasing");
      }
    }
    for (int T : x.lengths) {
      if (T < 2) bad("experiment.lengths", "sample lengths must be at least 2");
    }
    s.contrast_config().validate();
  } catch (const json::exception& ex) {
    throw ConfigError(std::string("scenario: ") + ex.what());
  } catch (const InvalidModel& ex) {
    throw ConfigError(std::string("scenario model: ") + ex.what());
  }
  s.canonical = doc.dump();
  return s;
}

json power_law(std::vector<double> scale, double exponent) {
  return {{"law", "power"}, {"scale", std::move(scale)}, {"exponent", exponent}};
}

json builtin(const std::string& name) {
  constexpr double pi = std::numbers::pi;
  const json sigma2_decay = {{"law", "power"}, {"scale", 1.0}, {"exponent", 3.0}};
  const json sphar_experiment = {{"lengths", {64, 256, 1024}},
                                 {"replications", {100, 200}},
                                 {"thresholds", {{"step", 0.001}, {"count", 100}}}};
  if (name == "sphar1_compact" || name == "sphar1_noncompact" || name == "sphar3_compact" ||
      name == "sphar3_noncompact") {
    const bool compact = name.ends_with("_compact");
    const bool order3 = name.starts_with("sphar3");
    return {{"name", name},
            {"truncation", 30},
            {"seed", 20240611},
            {"ar", order3 ? power_law({0.4, -0.2, 0.1}, 0.5) : power_law({0.5}, 0.5)},
            {"sigma2", sigma2_decay},
            {"lrd", {{"law", compact ? "compact" : "noncompact"}}},
            {"pole", "random"},
            {"estimation", {{"estimator", "contrast"}, {"candidates", 100}, {"decreasing_candidates", compact}}},
            {"experiment", sphar_experiment}};
  }
  if (name == "spharma11_mixed") {
    return {{"name", name},
            {"truncation", 30},
            {"seed", 20240612},
            {"ar", power_law({0.5}, 1.0)},
            {"ma", power_law({0.3}, 1.0)},
            {"sigma2", {{"law", "power"}, {"scale", pi}, {"exponent", 0.0}}},
            {"lrd", {{"law", "compact"}}},
            {"srd_set", {{"first", 16}, {"last", 30}}},
            {"pole", "random"},
            {"estimation",
             {{"estimator", "mixed"}, {"candidates", 100}, {"window", "gaussian"}, {"bandwidth", 0.65}}},
            {"experiment",
             {{"lengths", {500}},
              {"replications", {100}},
              {"thresholds", {{"step", 0.016}, {"count", 50}}}}}};
  }
  if (name == "white_m1") {
    return {{"name", name},
            {"truncation", 1},
            {"seed", 20240613},
            {"sigma2", {{"table", {2.0 * pi}}}},
            {"lrd", {{"law", "table"}, {"alphas", {0.3}}}},
            {"pole", "random"},
            {"estimation",
             {{"estimator", "contrast"},
              {"candidate_grid", {0.05, 0.10, 0.15, 0.20, 0.25, 0.30, 0.35, 0.40, 0.45}}}},
            {"experiment",
             {{"lengths", {2048}},
              {"replications", {200}},
              {"thresholds", {{"step", 0.01}, {"count", 100}}}}}};
  }
  throw ConfigError("unknown scenario '" + name + "'");
}

}  // namespace

std::vector<LrdProfile> Scenario::candidates() const {
  std::vector<LrdProfile> out;
  if (!estimation.candidate_grid.empty()) {
    const int M = model.truncation();
    for (std::size_t i = 0; i < estimation.candidate_grid.size(); ++i) {
      out.push_back({std::vector<double>(static_cast<std::size_t>(M), estimation.candidate_grid[i]),
                     "grid" + std::to_string(i + 1)});
    }
  } else {
    out = candidates_with_truth(model.lrd, estimation.candidate_count, derive_seed(seed, {kStreamCandidates}),
                                estimation.decreasing_candidates);
  }
  return restrict_to_lrd(std::move(out), model.srd_set);
}

ContrastConfig Scenario::contrast_config() const {
  ContrastConfig c;
  c.gamma = estimation.gamma;
  c.w_tilde = estimation.w_tilde;
  c.quadrature_nodes = estimation.quadrature_nodes;
  c.candidates = candidates();
  return c;
}

SimConfig Scenario::sim_config(int T, std::uint64_t replication) const {
  SimConfig c;
  c.model = model;
  c.length = T;
  c.filter_lag = simulation.filter_lag;
  c.burn_in = simulation.burn_in;
  c.representation = simulation.representation;
  c.seed = seed;
  c.replication = replication;
  return c;
}

Scenario parse_scenario(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("scenario is not valid JSON: ") + e.what());
  }
  return from_json(doc);
}

Scenario load_scenario_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read scenario file " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str());
}

Scenario resolve_scenario(const std::string& name_or_path) {
  if (std::filesystem::is_regular_file(name_or_path)) return load_scenario_file(name_or_path);
  return from_json(builtin(name_or_path));
}

Scenario reseed(const Scenario& scenario, std::uint64_t seed) {
  json doc = json::parse(scenario.canonical);
  doc["seed"] = seed;
  return from_json(doc);
}

std::vector<std::string> builtin_scenarios() {
  return {"sphar1_compact", "sphar1_noncompact", "sphar3_compact", "sphar3_noncompact", "spharma11_mixed", "white_m1"};
}

std::string builtin_scenario_json(const std::string& name) { return builtin(name).dump(2); }

std::vector<double> threshold_grid(double step, int count) {
  if (!(step > 0.0) || count < 1) throw ConfigError("threshold grid needs a positive step and count");
  std::vector<double> out;
  for (int i = 1; i <= count; ++i) out.push_back(i * step);
  return out;
}

}  // namespace sphlrd
