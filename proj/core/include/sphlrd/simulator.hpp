#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "sphlrd/rng.hpp"
#include "sphlrd/spectral_model.hpp"

namespace sphlrd {

enum class Representation { zonal, full };

/// T time steps of harmonic coefficients. Zonal samples hold one series per
/// scale (the coefficient of the zonal function at the pole); full samples
/// hold 2n+1 series per scale.
class FunctionalSample {
public:
  FunctionalSample() = default;
  FunctionalSample(Representation rep, int T, int truncation);

  Representation representation() const { return representation_; }
  int length() const { return length_; }
  int truncation() const { return static_cast<int>(series_.size()); }
  /// Number of stored orders j at scale n: 1 (zonal) or 2n+1 (full).
  int orders(int n) const { return static_cast<int>(series_.at(static_cast<std::size_t>(n - 1)).size()); }

  std::span<const double> series(int n, int j) const;
  std::span<double> series(int n, int j);

  std::uint64_t seed = 0;
  std::uint64_t replication = 0;

private:
  Representation representation_ = Representation::zonal;
  int length_ = 0;
  std::vector<std::vector<std::vector<double>>> series_;  // [n-1][j-1][t-1]
};

struct SimConfig {
  ModelSpec model;
  int length = 0;  // T
  int filter_lag = 4096;
  int burn_in = 2 * 4096;
  Representation representation = Representation::zonal;
  std::uint64_t seed = 0;
  std::uint64_t replication = 0;
  std::size_t element_budget = 64'000'000;

  /// T >= 2, L >= 64, burn_in >= L. Throws ConfigError.
  void validate() const;
};

/// psi_0..psi_L of (1 - B)^{-d}: psi_0 = 1, psi_k = psi_{k-1} (k - 1 + d) / k.
std::vector<double> frac_ma_coeffs(double d, int lag);

/// One scale of a multifractionally integrated SPHARMA path: Gaussian
/// innovations, MA filter, truncated fractional integration of order
/// alpha(n)/2, then the AR recursion from zero initial conditions. Returns the
/// last T values.
std::vector<double> simulate_scale(const ModelSpec& model, int n, int length, int burn_in, int lag, Rng& rng);

/// Independent scale series; stream (seed, replication, n, j) per series.
FunctionalSample simulate_sample(const SimConfig& config);

/// Uniform point on S^2 from its own seed stream.
SpherePoint draw_pole(std::uint64_t seed);

}  // namespace sphlrd
