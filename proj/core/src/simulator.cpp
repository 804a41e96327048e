#include "sphlrd/simulator.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "fft.hpp"
#include "sphlrd/errors.hpp"

namespace sphlrd {

FunctionalSample::FunctionalSample(Representation rep, int T, int truncation) : representation_(rep), length_(T) {
  series_.resize(static_cast<std::size_t>(truncation));
  for (int n = 1; n <= truncation; ++n) {
    const int orders = rep == Representation::zonal ? 1 : 2 * n + 1;
    series_[static_cast<std::size_t>(n - 1)].assign(static_cast<std::size_t>(orders),
                                                    std::vector<double>(static_cast<std::size_t>(T), 0.0));
  }
}

std::span<const double> FunctionalSample::series(int n, int j) const {
  return series_.at(static_cast<std::size_t>(n - 1)).at(static_cast<std::size_t>(j - 1));
}

std::span<double> FunctionalSample::series(int n, int j) {
  return series_.at(static_cast<std::size_t>(n - 1)).at(static_cast<std::size_t>(j - 1));
}

void SimConfig::validate() const {
  if (length < 2) throw ConfigError("sample size T must be at least 2");
  if (filter_lag < 64) throw ConfigError("filter lag must be at least 64");
  if (burn_in < filter_lag) throw ConfigError("burn-in must be at least the filter lag");
  if (representation == Representation::full) {
    std::size_t elements = 0;
    for (int n = 1; n <= model.truncation(); ++n) elements += static_cast<std::size_t>(2 * n + 1) * length;
    if (elements > element_budget) {
      throw ConfigError("full representation needs " + std::to_string(elements) +
                        " values, above the element budget " + std::to_string(element_budget));
    }
  }
}

std::vector<double> frac_ma_coeffs(double d, int lag) {
  if (!(d >= 0.0 && d < 1.0)) throw InvalidParameter("fractional order must lie in [0, 1)");
  if (lag < 0) throw InvalidParameter("filter lag must be nonnegative");
  std::vector<double> psi(static_cast<std::size_t>(lag) + 1, 0.0);
  psi[0] = 1.0;
  for (int k = 1; k <= lag; ++k) {
    psi[static_cast<std::size_t>(k)] = psi[static_cast<std::size_t>(k - 1)] * (k - 1 + d) / k;
  }
  return psi;
}

std::vector<double> simulate_scale(const ModelSpec& model, int n, int length, int burn_in, int lag, Rng& rng) {
  if (n < 1 || n > model.truncation()) throw InvalidParameter("scale index out of range");
  const auto total = static_cast<std::size_t>(burn_in) + length + lag;
  const double sigma = std::sqrt(model.arma.sigma2()[static_cast<std::size_t>(n - 1)]);

  std::normal_distribution<double> normal(0.0, sigma);
  std::vector<double> eps(total);
  for (auto& e : eps) e = normal(rng);

  const auto ma = model.arma.ma_coefficients(n);
  std::vector<double> u(eps);
  for (std::size_t t = 0; t < total; ++t) {
    for (std::size_t l = 1; l <= ma.size() && l <= t; ++l) u[t] += ma[l - 1] * eps[t - l];
  }

  // Values before index `lag` see a partial filter window and are discarded.
  const double d = 0.5 * model.lrd.alpha(n);
  std::vector<double> w;
  if (d == 0.0) {
    w.assign(u.begin() + lag, u.end());
  } else {
    const auto psi = frac_ma_coeffs(d, lag);
    const auto full = detail::convolve(u, psi);
    w.assign(full.begin() + lag, full.begin() + static_cast<std::ptrdiff_t>(total));
  }

  const auto ar = model.arma.ar_coefficients(n);
  std::vector<double> x(w.size());
  for (std::size_t t = 0; t < w.size(); ++t) {
    double acc = w[t];
    for (std::size_t k = 1; k <= ar.size() && k <= t; ++k) acc += ar[k - 1] * x[t - k];
    x[t] = acc;
  }
  return {x.end() - length, x.end()};
}

FunctionalSample simulate_sample(const SimConfig& config) {
  config.validate();
  const ModelSpec& model = config.model;
  FunctionalSample sample(config.representation, config.length, model.truncation());
  sample.seed = config.seed;
  sample.replication = config.replication;
  for (int n = 1; n <= model.truncation(); ++n) {
    for (int j = 1; j <= sample.orders(n); ++j) {
      Rng rng = make_stream(config.seed, {kStreamInnovation, config.replication, static_cast<std::uint64_t>(n),
                                          static_cast<std::uint64_t>(j)});
      const auto x = simulate_scale(model, n, config.length, config.burn_in, config.filter_lag, rng);
      std::copy(x.begin(), x.end(), sample.series(n, j).begin());
    }
  }
  return sample;
}

SpherePoint draw_pole(std::uint64_t seed) {
  Rng rng = make_stream(seed, {kStreamPole});
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double z = 2.0 * unit(rng) - 1.0;
  const double lon = 2.0 * std::numbers::pi * unit(rng);
  return SpherePoint::from_angles(std::acos(z), lon);
}

}  // namespace sphlrd
