#pragma once

#include <complex>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "sphlrd/simulator.hpp"
#include "sphlrd/spectral_model.hpp"

namespace sphlrd {

enum class SpectralKind { fdft, periodogram, smoothed, model };

std::string_view to_string(SpectralKind kind);

/// Row label: scale n and order j (j = 1 for per-scale tables).
struct SpectralRow {
  int n = 0;
  int j = 1;
};

using RealMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using ComplexMatrix = Eigen::Matrix<std::complex<double>, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// Per-row spectral values on a frequency grid. fdft tables carry complex
/// values; every other kind carries real values.
struct SpectralTable {
  SpectralKind kind = SpectralKind::periodogram;
  int sample_length = 0;  // T of the Fourier grid
  std::vector<double> frequencies;
  std::vector<SpectralRow> rows;
  RealMatrix values;
  ComplexMatrix complex_values;

  /// Index of the zero-frequency column.
  int zero_index() const;
  /// Row holding scale n; throws ContractError when absent or ambiguous.
  int row_of(int n) const;
  std::vector<int> scales() const;
};

/// Fourier frequencies 2 pi k / T for k = -floor((T-1)/2) .. floor(T/2):
/// T distinct bins, strictly increasing, +pi included once when T is even.
std::vector<double> fourier_frequencies(int T);
int fourier_zero_index(int T);

enum class DftMethod { automatic, direct, fast };

/// Samples with T at or below this use the direct transform under `automatic`.
inline constexpr int kDirectDftMaxLength = 64;

/// (1/sqrt(2 pi T)) sum_{t=1}^{T} x_t exp(-i w t) on the Fourier grid.
std::vector<std::complex<double>> fdft_series(std::span<const double> x, DftMethod method = DftMethod::automatic);

/// Functional DFT, one row per stored (n, j) series.
SpectralTable fdft(const FunctionalSample& sample, DftMethod method = DftMethod::automatic);

/// Diagonal scale-n periodogram: mean over stored orders of |X(w)|^2.
SpectralTable periodogram_scale(const SpectralTable& fdft_table);

/// (2 pi / T) sum_{k != 0} p_n(w_k), one value per row.
std::vector<double> integrated_periodogram(const SpectralTable& ptable);

/// Normalized window W with its bandwidth B_T. The compact shape is the
/// Bartlett triangle (1 - |x|)_+; the Gaussian shape is the standard normal pdf.
class SmoothingWindow {
public:
  enum class Shape { bartlett, gaussian };

  /// Throws InvalidParameter unless 0 < bandwidth <= pi.
  SmoothingWindow(Shape shape, double bandwidth);

  Shape shape() const { return shape_; }
  double bandwidth() const { return bandwidth_; }

  double kernel(double x) const;
  /// sum_j (1/B) W((x + 2 pi j) / B), terms below 1e-12 dropped.
  double periodized(double x) const;

private:
  Shape shape_;
  double bandwidth_;
};

std::string_view to_string(SmoothingWindow::Shape shape);

/// Weighted periodogram sum_{m != 0} W^{(T)}(w - w_m) p(w_m) on the Fourier
/// grid, for each scale of `srd_scales`. Weights are normalized to sum to one
/// over the non-zero bins.
SpectralTable smoothed_estimator(const SpectralTable& ptable, const SmoothingWindow& window, const ScaleSet& srd_scales);

/// f_{n,theta}(w_k) on the Fourier grid of length T; +inf at w = 0 on
/// long-memory scales.
SpectralTable model_table(const ModelSpec& model, const LrdProfile& theta, const std::vector<int>& scales, int T);

}  // namespace sphlrd
