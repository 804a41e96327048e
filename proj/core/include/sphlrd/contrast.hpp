#pragma once

#include <optional>
#include <vector>

#include "sphlrd/periodogram.hpp"
#include "sphlrd/spectral_model.hpp"

namespace sphlrd {

/// Weighting operator W(w, n, gamma) = W~(n) |w|^gamma and the candidate set.
struct ContrastConfig {
  double gamma = 1.5;
  std::vector<double> w_tilde;  // W~(n), n = 1..M; empty means W~ == 1
  int quadrature_nodes = kDefaultQuadratureNodes;
  std::vector<LrdProfile> candidates;

  double weight(int n) const;
  /// gamma > 1, W~ positive and finite, at least one candidate. Throws ConfigError.
  void validate() const;
};

/// N_theta(n) = W~(n) * integral of f_{n,theta}(w) |w|^gamma over [-pi, pi].
double normalizer(const ModelSpec& model, const LrdProfile& theta, const ContrastConfig& config, int n);

/// Upsilon(w, n, theta) = f_{n,theta}(w) / N_theta(n).
double upsilon(const ModelSpec& model, const LrdProfile& theta, const ContrastConfig& config, int n, double omega);

/// U_{T,theta}(n) = -(2 pi / T) sum_{k != 0} p_n(w_k) ln Upsilon(w_k, n, theta) W~(n) |w_k|^gamma,
/// one value per row of the periodogram. Throws DataError on NaN input.
std::vector<double> empirical_contrast(const SpectralTable& ptable, const ModelSpec& model, const LrdProfile& theta,
                                       const ContrastConfig& config);

/// L_n(theta0, theta) = W~(n) * integral of f_{n,theta0} |w|^gamma ln(Upsilon_theta0 / Upsilon_theta),
/// by quadrature.
double theoretical_loss(const ModelSpec& model, const LrdProfile& theta0, const LrdProfile& theta,
                        const ContrastConfig& config, int n);

struct ContrastReport {
  std::vector<int> scales;  // scales entering the operator norm
  RealMatrix contrast;      // candidates x scales, U_{T,theta}(n)
  std::vector<double> norms;  // sup_n |U_{T,theta}(n)|
  int selected = -1;
  LrdProfile selected_profile;
};

/// Precomputes everything that depends only on the model, the candidates and
/// the Fourier grid, so that each new periodogram costs O(M T + C M).
class ContrastEngine {
public:
  ContrastEngine(const ModelSpec& model, ContrastConfig config, std::vector<int> scales, int T);

  int sample_length() const { return T_; }
  const std::vector<int>& scales() const { return scales_; }
  const ContrastConfig& config() const { return config_; }
  /// ln N_theta(n) for candidate c.
  double log_normalizer(int candidate, int scale_pos) const { return log_normalizer_(candidate, scale_pos); }

  ContrastReport select(const SpectralTable& ptable) const;

private:
  ContrastConfig config_;
  std::vector<int> scales_;
  int T_;
  RealMatrix log_regular_;  // ln(B_n^eta(0) M_n(w_k)), scales x grid
  std::vector<double> log_singular_;  // ln(4 sin^2(w_k / 2))
  std::vector<double> weight_;        // |w_k|^gamma, 0 at the zero bin
  RealMatrix log_normalizer_;         // candidates x scales
};

/// argmin over candidates of sup_n |U_{T,theta}(n)|, ties to the lowest index.
/// `scales` restricts the sup (defaults to every row of the periodogram).
ContrastReport select_theta(const SpectralTable& ptable, const ModelSpec& model, const ContrastConfig& config,
                            std::optional<std::vector<int>> scales = std::nullopt);

/// Copies of `candidates` with alpha forced to 0 on the short-memory scales.
std::vector<LrdProfile> restrict_to_lrd(std::vector<LrdProfile> candidates, const ScaleSet& srd);

/// Candidate list with the true profile inserted at a seeded position.
std::vector<LrdProfile> candidates_with_truth(const LrdProfile& truth, int count, std::uint64_t seed, bool decreasing);

}  // namespace sphlrd
