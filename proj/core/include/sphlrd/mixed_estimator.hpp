#pragma once

#include <optional>
#include <vector>

#include "sphlrd/contrast.hpp"
#include "sphlrd/periodogram.hpp"

namespace sphlrd {

/// Smoothed periodogram on the short-memory scales plus the plug-in density
/// f_{n, theta_hat} on the long-memory scales.
struct MixedEstimate {
  SpectralTable srd;  // smoothed, rows = srd scales
  SpectralTable lrd;  // model kind, rows = complement of srd scales
  ScaleSet srd_set;
  std::vector<int> lrd_scales;
  SmoothingWindow::Shape window_shape = SmoothingWindow::Shape::gaussian;
  double bandwidth = 0.0;
  std::optional<ContrastReport> selection;  // absent when every scale is short-memory
  bool degenerate = false;                  // pure short-memory estimate, no contrast step

  /// Estimated f_n on the Fourier grid, from whichever part holds scale n.
  std::vector<double> density(int n) const;
};

/// Reusable estimator for one model and one sample length: the contrast
/// weights over the long-memory scales are built once.
class MixedEstimator {
public:
  /// Candidates are forced to vanish on `srd_set` before selection.
  MixedEstimator(const ModelSpec& model, ContrastConfig config, ScaleSet srd_set, SmoothingWindow window, int T);

  MixedEstimate estimate(const SpectralTable& ptable) const;
  const std::vector<int>& lrd_scales() const { return lrd_scales_; }

private:
  const ModelSpec* model_;
  ScaleSet srd_set_;
  SmoothingWindow window_;
  std::vector<int> lrd_scales_;
  std::optional<ContrastEngine> engine_;
};

/// fDFT, periodogram, smoothing on `srd_set`, contrast selection over the
/// remaining scales and plug-in there.
MixedEstimate estimate_mixed(const FunctionalSample& sample, const ModelSpec& model, const ContrastConfig& config,
                             const ScaleSet& srd_set, const SmoothingWindow& window);

}  // namespace sphlrd
