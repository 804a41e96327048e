#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "sphlrd/contrast.hpp"
#include "sphlrd/periodogram.hpp"
#include "sphlrd/simulator.hpp"
#include "sphlrd/spectral_model.hpp"

namespace sphlrd {

enum class EstimatorKind { contrast, mixed };

struct SimulationSettings {
  int filter_lag = 4096;
  int burn_in = 2 * 4096;
  Representation representation = Representation::zonal;
};

struct EstimationSettings {
  EstimatorKind estimator = EstimatorKind::contrast;
  double gamma = 1.5;
  std::vector<double> w_tilde;
  int quadrature_nodes = kDefaultQuadratureNodes;
  int candidate_count = 100;
  bool decreasing_candidates = true;
  std::vector<double> candidate_grid;  // constant profiles; replaces the seeded family when set
  SmoothingWindow::Shape window = SmoothingWindow::Shape::gaussian;
  double bandwidth = 0.65;
};

struct ExperimentSettings {
  std::vector<int> lengths{64, 256, 1024};
  std::vector<int> replications{100, 200};
  std::vector<int> full_lengths{50, 500, 1000};
  std::vector<int> full_replications{100, 2000, 5000};
  std::vector<double> thresholds;
};

/// A fully resolved scenario: the model, its seeds and every setting the
/// simulation, estimation and Monte-Carlo stages read.
struct Scenario {
  std::string name;
  ModelSpec model;
  std::uint64_t seed = 0;
  SimulationSettings simulation;
  EstimationSettings estimation;
  ExperimentSettings experiment;
  std::string canonical;  // normalized JSON text of the source document

  /// Seeded family with the true profile inserted, or the constant grid.
  /// Candidates vanish on the short-memory scales.
  std::vector<LrdProfile> candidates() const;
  ContrastConfig contrast_config() const;
  SmoothingWindow window() const { return {estimation.window, estimation.bandwidth}; }
  SimConfig sim_config(int T, std::uint64_t replication) const;
};

/// Parses the scenario schema; throws ConfigError naming the offending key.
Scenario parse_scenario(std::string_view json_text);
Scenario load_scenario_file(const std::string& path);
/// A path to an existing file or the name of a built-in scenario.
Scenario resolve_scenario(const std::string& name_or_path);
/// Same document under another master seed (pole and candidates are redrawn).
Scenario reseed(const Scenario& scenario, std::uint64_t seed);

std::vector<std::string> builtin_scenarios();
/// JSON text of a built-in scenario; throws ConfigError for unknown names.
std::string builtin_scenario_json(const std::string& name);

/// step, 2 step, ..., count * step.
std::vector<double> threshold_grid(double step, int count);

}  // namespace sphlrd
