#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sphlrd/metrics.hpp"
#include "sphlrd/scenario.hpp"

namespace sphlrd {

struct ExperimentPlan {
  Scenario scenario;
  std::vector<int> lengths;
  std::vector<int> replications;
  std::vector<double> thresholds;
  std::string output_dir;
  int workers = 1;
  bool resume = true;  // reuse persisted replications whose config hash matches

  /// Desk-scale grid, or the full grid when `full_scale` is set.
  static ExperimentPlan from_scenario(const Scenario& scenario, std::string output_dir, int workers = 1,
                                      bool full_scale = false);
  /// T >= 2, R >= 1, workers >= 1, thresholds positive and increasing. Throws ConfigError.
  void validate() const;
};

/// Metrics of one simulated sample.
struct ReplicationRecord {
  int length = 0;
  int replication = 0;
  int selected = -1;                 // candidate index, -1 without a contrast step
  std::vector<double> abs_error;     // temporal mean absolute error, n = 1..M
  std::vector<double> quad_error;    // mean quadratic error, n = 1..M
  std::vector<double> l1;            // L1 density error on long-memory scales, NaN elsewhere
  double seconds = 0.0;
};

/// Aggregates of one (T, R) cell.
struct CellSummary {
  int length = 0;
  int replications = 0;
  std::vector<int> lrd_scales;
  std::vector<std::vector<double>> probabilities;  // lrd scale x threshold
  std::vector<Histogram> histograms;               // n = 1..M, of abs_error
  std::vector<double> mean_quadratic_error;        // n = 1..M
  std::vector<double> mean_abs_error;              // n = 1..M
  std::vector<double> selection_frequency;         // per candidate; empty without a contrast step
  double mean_seconds = 0.0;
  bool jensen_ok = true;  // mean quadratic >= (mean absolute)^2 on every scale
};

struct PlanResult {
  std::vector<CellSummary> cells;
  std::vector<std::string> files;  // every CSV written, in write order
  int reused = 0;                  // replications loaded from disk
  int simulated = 0;
};

/// Simulates, estimates and scores every (T, R) cell; replication r of a
/// given T is shared by all R > r. Output is identical for any worker count.
PlanResult run_plan(const ExperimentPlan& plan);

/// FNV-1a over the canonical scenario text and master seed.
std::uint64_t config_hash(const Scenario& scenario);

}  // namespace sphlrd
