#pragma once

#include <span>
#include <vector>

#include "sphlrd/periodogram.hpp"
#include "sphlrd/spectral_model.hpp"

namespace sphlrd {

/// Integral over [-pi, pi] of |f_{n,theta0} - f_{n,theta_hat}|.
double l1_error(const ModelSpec& model, const LrdProfile& theta0, const LrdProfile& theta_hat, int n,
                int nodes = kDefaultQuadratureNodes);

/// Frequency average over the non-zero Fourier bins of |fhat_n - f_{n,theta0}|.
double temporal_mean_abs_error(const SpectralTable& fhat, const ModelSpec& model, const LrdProfile& theta0, int n);
double temporal_mean_abs_error(std::span<const double> fhat, const ModelSpec& model, const LrdProfile& theta0, int n);

/// Frequency average over the non-zero Fourier bins of (fhat_n - f_{n,theta0})^2.
double mean_quadratic_error(const SpectralTable& fhat, const ModelSpec& model, const LrdProfile& theta0, int n);
double mean_quadratic_error(std::span<const double> fhat, const ModelSpec& model, const LrdProfile& theta0, int n);

/// Share of errors strictly above each threshold. Thresholds must be
/// positive and strictly increasing; throws InvalidParameter otherwise.
std::vector<double> empirical_probabilities(std::span<const double> errors, std::span<const double> thresholds);

struct Histogram {
  std::vector<double> edges;  // bins + 1 edges, increasing
  std::vector<long> counts;
};

/// Freedman-Diaconis bin width with at least `min_bins` bins.
Histogram freedman_diaconis(std::span<const double> values, int min_bins = 10, int max_bins = 1000);

}  // namespace sphlrd
