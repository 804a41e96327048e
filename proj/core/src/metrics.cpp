#include "sphlrd/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "sphlrd/errors.hpp"

namespace sphlrd {
namespace {

constexpr double kPi = std::numbers::pi;

template <class F>
double grid_average(std::span<const double> fhat, const ModelSpec& model, const LrdProfile& theta0, int n, F&& loss) {
  const int T = static_cast<int>(fhat.size());
  const auto freqs = fourier_frequencies(T);
  const int zero = fourier_zero_index(T);
  double acc = 0.0;
  for (int k = 0; k < T; ++k) {
    if (k == zero) continue;
    acc += loss(fhat[static_cast<std::size_t>(k)] - spectral_density(model, theta0, n, freqs[static_cast<std::size_t>(k)]));
  }
  return acc / (T - 1);
}

std::span<const double> row_span(const SpectralTable& table, int n) {
  const auto r = table.row_of(n);
  return {table.values.data() + static_cast<std::ptrdiff_t>(r) * table.values.cols(),
          static_cast<std::size_t>(table.values.cols())};
}

}  // namespace

double l1_error(const ModelSpec& model, const LrdProfile& theta0, const LrdProfile& theta_hat, int n, int nodes) {
  const double a0 = theta0.alpha(n);
  const double a1 = theta_hat.alpha(n);
  if (a0 == a1) return 0.0;
  const auto gap = [&](double w) {
    return std::abs(spectral_density_at(model, a0, n, w) - spectral_density_at(model, a1, n, w));
  };
  // The two densities cross where 4 sin^2(w/2) = 1.
  const double cross = kPi / 3.0;
  const double near = integrate_origin_singular(gap, cross, std::max(a0, a1), nodes / 2);
  const double far = integrate_panels(gap, cross, kPi, nodes / 2);
  return 2.0 * (near + far);
}

double temporal_mean_abs_error(std::span<const double> fhat, const ModelSpec& model, const LrdProfile& theta0, int n) {
  return grid_average(fhat, model, theta0, n, [](double e) { return std::abs(e); });
}

double temporal_mean_abs_error(const SpectralTable& fhat, const ModelSpec& model, const LrdProfile& theta0, int n) {
  return temporal_mean_abs_error(row_span(fhat, n), model, theta0, n);
}

double mean_quadratic_error(std::span<const double> fhat, const ModelSpec& model, const LrdProfile& theta0, int n) {
  return grid_average(fhat, model, theta0, n, [](double e) { return e * e; });
}

double mean_quadratic_error(const SpectralTable& fhat, const ModelSpec& model, const LrdProfile& theta0, int n) {
  return mean_quadratic_error(row_span(fhat, n), model, theta0, n);
}

std::vector<double> empirical_probabilities(std::span<const double> errors, std::span<const double> thresholds) {
  if (errors.empty()) throw InvalidParameter("empirical probabilities need at least one error value");
  for (std::size_t i = 0; i < thresholds.size(); ++i) {
    if (!(thresholds[i] > 0.0) || (i > 0 && !(thresholds[i] > thresholds[i - 1]))) {
      throw InvalidParameter("thresholds must be positive and strictly increasing");
    }
  }
  std::vector<double> sorted(errors.begin(), errors.end());
  std::sort(sorted.begin(), sorted.end());
  std::vector<double> out;
  out.reserve(thresholds.size());
  for (double eps : thresholds) {
    const auto above = sorted.end() - std::upper_bound(sorted.begin(), sorted.end(), eps);
    out.push_back(static_cast<double>(above) / static_cast<double>(sorted.size()));
  }
  return out;
}

Histogram freedman_diaconis(std::span<const double> values, int min_bins, int max_bins) {
  Histogram h;
  if (values.empty()) return h;
  std::vector<double> v(values.begin(), values.end());
  std::sort(v.begin(), v.end());
  const auto quantile = [&](double q) {
    const double pos = q * static_cast<double>(v.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const auto hi = std::min(lo + 1, v.size() - 1);
    return v[lo] + (pos - static_cast<double>(lo)) * (v[hi] - v[lo]);
  };
  double lo = v.front();
  double hi = v.back();
  if (hi == lo) {
    const double pad = lo == 0.0 ? 0.5 : 0.5 * std::abs(lo);
    lo -= pad;
    hi += pad;
  }
  const double width = 2.0 * (quantile(0.75) - quantile(0.25)) / std::cbrt(static_cast<double>(v.size()));
  int bins = min_bins;
  if (width > 0.0) bins = std::clamp(static_cast<int>(std::ceil((hi - lo) / width)), min_bins, max_bins);
  h.edges.resize(static_cast<std::size_t>(bins) + 1);
  for (int b = 0; b <= bins; ++b) h.edges[static_cast<std::size_t>(b)] = lo + (hi - lo) * b / bins;
  h.edges.back() = hi;
  h.counts.assign(static_cast<std::size_t>(bins), 0);
  for (double x : v) {
    auto b = static_cast<int>((x - lo) / (hi - lo) * bins);
    b = std::clamp(b, 0, bins - 1);
    ++h.counts[static_cast<std::size_t>(b)];
  }
  return h;
}

}  // namespace sphlrd
