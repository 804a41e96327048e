#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "sphlrd/harmonics.hpp"
#include "sphlrd/quadrature.hpp"

namespace sphlrd {

/// Eigenvalue sequence {alpha(n, theta)}, n = 1..M, of a long-memory operator.
struct LrdProfile {
  std::vector<double> alphas;
  std::string label;

  int truncation() const { return static_cast<int>(alphas.size()); }
  double alpha(int n) const { return alphas.at(static_cast<std::size_t>(n - 1)); }
};

/// Set of scale indices (1-based) on which the process is short-memory.
class ScaleSet {
public:
  ScaleSet() = default;
  ScaleSet(std::vector<int> scales);  // NOLINT: implicit from a list is convenient
  static ScaleSet range(int first, int last);

  bool contains(int n) const;
  bool empty() const { return scales_.empty(); }
  std::size_t size() const { return scales_.size(); }
  const std::vector<int>& scales() const { return scales_; }
  /// Scales of 1..M not in the set.
  std::vector<int> complement(int truncation) const;

private:
  std::vector<int> scales_;  // sorted, unique
};

/// Checks 0 <= alpha < 1/2 everywhere, alpha > 0 off `srd`, and alpha == 0 on `srd`.
/// Throws InvalidModel.
void validate_profile(const LrdProfile& profile, const ScaleSet& srd = {});

/// Per-scale SPHARMA(p, q) eigenvalues and innovation variances.
///
/// Row n-1 of `phi` holds lambda_n(Phi_1..Phi_p), row n-1 of `psi` holds
/// lambda_n(Psi_1..Psi_q). The AR polynomial is 1 - sum_k phi_k z^k and the
/// moving-average side is 1 + sum_l psi_l z^l.
class SphArmaSpec {
public:
  SphArmaSpec() = default;
  /// Validates the root conditions; throws InvalidModel.
  SphArmaSpec(Eigen::MatrixXd phi, Eigen::MatrixXd psi, std::vector<double> sigma2);

  /// p = q = 0 with the given innovation variances.
  static SphArmaSpec white(std::vector<double> sigma2);

  int p() const { return static_cast<int>(phi_.cols()); }
  int q() const { return static_cast<int>(psi_.cols()); }
  int truncation() const { return static_cast<int>(sigma2_.size()); }
  const Eigen::MatrixXd& phi() const { return phi_; }
  const Eigen::MatrixXd& psi() const { return psi_; }
  const std::vector<double>& sigma2() const { return sigma2_; }

  std::vector<double> ar_coefficients(int n) const;
  std::vector<double> ma_coefficients(int n) const;

private:
  Eigen::MatrixXd phi_;
  Eigen::MatrixXd psi_;
  std::vector<double> sigma2_;
};

/// Roots of 1 - sum_k c_k z^k (an empty list when all c_k vanish).
std::vector<std::complex<double>> ar_polynomial_roots(const std::vector<double>& coefficients);

/// Roots of 1 + sum_l c_l z^l.
std::vector<std::complex<double>> ma_polynomial_roots(const std::vector<double>& coefficients);

/// Semiparametric spectral model of one scenario: ARMA short-memory factors,
/// the true long-memory profile, the short-memory index set, innovation
/// covariance eigenvalues B_n^eta(0) and the pole of the zonal functions.
struct ModelSpec {
  SphArmaSpec arma;
  LrdProfile lrd;
  ScaleSet srd_set;
  std::vector<double> b_eta0;
  SpherePoint pole;

  int truncation() const { return arma.truncation(); }
  double b_eta(int n) const { return b_eta0.at(static_cast<std::size_t>(n - 1)); }

  /// B_n^eta(0) defaults to sigma_n^2 / (2 pi).
  static ModelSpec make(SphArmaSpec arma, LrdProfile lrd, ScaleSet srd_set = {},
                        SpherePoint pole = SpherePoint::north_pole());

  /// Throws InvalidModel when dimensions disagree or profile/B invariants fail.
  void validate() const;
};

/// |1 + Psi_n(e^{-i w})|^2 / |Phi_n(e^{-i w})|^2.
double arma_srd_factor(const SphArmaSpec& spec, int n, double omega);

/// B_n^eta(0) M_n(w) [4 sin^2(w/2)]^{-alpha(n,theta)/2}. Throws SingularFrequency
/// at w = 0 when alpha(n, theta) > 0.
double spectral_density(const ModelSpec& model, const LrdProfile& theta, int n, double omega);

/// Same density with an explicit exponent, for callers that already hold alpha.
double spectral_density_at(const ModelSpec& model, double alpha, int n, double omega);

/// B_n(0) = integral over [-pi, pi] of the scale-n density.
double autocovariance_b0(const ModelSpec& model, const LrdProfile& theta, int n,
                         int nodes = kDefaultQuadratureNodes);

struct SummabilityReport {
  std::vector<double> b0;                 // B_n(0), n = 1..M
  double trace_partial_sum = 0.0;         // sum (2n+1) B_n(0)
  double hilbert_schmidt_partial_sum = 0.0;  // sum (2n+1) B_n(0)^2
  std::optional<double> tail_exponent;    // log-log slope of B_n(0) in n
  bool summable = true;
};

/// Partial sums and fitted tail exponent; flags non-summability when the
/// fitted exponent is >= -2. Never throws on a valid model.
SummabilityReport validate_summability(const ModelSpec& model);

/// Seeded candidate profiles: candidate i (1-based) takes per-scale draws
/// from Beta(2, 5i/(i+1)), scaled by 1/2, clipped to [1e-4, 1/2 - 1e-4] and
/// sorted decreasing in n (increasing when `decreasing` is false).
std::vector<LrdProfile> candidate_family(int count, int truncation, std::uint64_t seed, bool decreasing = true);

/// Reconstructed default true profiles.
LrdProfile compact_profile(int truncation);     // 0.45 / (1 + 0.15 n)
LrdProfile noncompact_profile(int truncation);  // 0.2 + 0.25 n / (n + 5)

}  // namespace sphlrd
