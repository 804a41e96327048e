#include "sphlrd/contrast.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "sphlrd/errors.hpp"
#include "sphlrd/rng.hpp"

namespace sphlrd {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kUpsilonFloor = 1e-300;

void check_finite(const SpectralTable& ptable) {
  for (Eigen::Index r = 0; r < ptable.values.rows(); ++r) {
    for (Eigen::Index k = 0; k < ptable.values.cols(); ++k) {
      if (std::isnan(ptable.values(r, k))) throw DataError("NaN in periodogram");
    }
  }
}

}  // namespace

double ContrastConfig::weight(int n) const {
  return w_tilde.empty() ? 1.0 : w_tilde.at(static_cast<std::size_t>(n - 1));
}

void ContrastConfig::validate() const {
  if (!(gamma > 1.0)) throw ConfigError("gamma must exceed 1");
  for (double w : w_tilde) {
    if (!(w > 0.0) || !std::isfinite(w)) throw ConfigError("W~(n) must be positive and finite");
  }
  if (candidates.empty()) throw ConfigError("candidate list is empty");
  if (quadrature_nodes < 1) throw ConfigError("quadrature node count must be positive");
}

double normalizer(const ModelSpec& model, const LrdProfile& theta, const ContrastConfig& config, int n) {
  const double a = theta.alpha(n);
  const double g = config.gamma;
  const auto f = [&](double w) { return spectral_density_at(model, a, n, w) * std::pow(w, g); };
  return 2.0 * config.weight(n) * integrate_origin_singular(f, kPi, a - g, config.quadrature_nodes);
}

double upsilon(const ModelSpec& model, const LrdProfile& theta, const ContrastConfig& config, int n, double omega) {
  return std::max(spectral_density(model, theta, n, omega) / normalizer(model, theta, config, n), kUpsilonFloor);
}

std::vector<double> empirical_contrast(const SpectralTable& ptable, const ModelSpec& model, const LrdProfile& theta,
                                       const ContrastConfig& config) {
  if (ptable.kind != SpectralKind::periodogram) throw ContractError("empirical contrast needs a periodogram table");
  check_finite(ptable);
  const int T = ptable.sample_length;
  const int zero = ptable.zero_index();
  std::vector<double> out;
  for (std::size_t r = 0; r < ptable.rows.size(); ++r) {
    const int n = ptable.rows[r].n;
    const double log_n = std::log(normalizer(model, theta, config, n));
    double acc = 0.0;
    for (int k = 0; k < T; ++k) {
      if (k == zero) continue;
      const double w = ptable.frequencies[static_cast<std::size_t>(k)];
      const double log_ups = std::max(std::log(spectral_density(model, theta, n, w)) - log_n, std::log(kUpsilonFloor));
      acc += ptable.values(static_cast<Eigen::Index>(r), k) * log_ups * std::pow(std::abs(w), config.gamma);
    }
    out.push_back(-(2.0 * kPi / T) * config.weight(n) * acc);
  }
  return out;
}

double theoretical_loss(const ModelSpec& model, const LrdProfile& theta0, const LrdProfile& theta,
                        const ContrastConfig& config, int n) {
  const double a0 = theta0.alpha(n);
  const double a1 = theta.alpha(n);
  const double log_ratio_n = std::log(normalizer(model, theta, config, n) / normalizer(model, theta0, config, n));
  const double g = config.gamma;
  // ln(Upsilon_0 / Upsilon_1) = ln(f_0 / f_1) + ln(N_1 / N_0), and
  // ln(f_0 / f_1) = -(a0 - a1)/2 * ln(4 sin^2(w/2)).
  const auto integrand = [&](double w) {
    const double s = std::sin(0.5 * w);
    const double log_f = -0.5 * (a0 - a1) * std::log(4.0 * s * s);
    return spectral_density_at(model, a0, n, w) * std::pow(w, g) * (log_f + log_ratio_n);
  };
  return 2.0 * config.weight(n) * integrate_origin_singular(integrand, kPi, a0 - g, config.quadrature_nodes);
}

ContrastEngine::ContrastEngine(const ModelSpec& model, ContrastConfig config, std::vector<int> scales, int T)
    : config_(std::move(config)), scales_(std::move(scales)), T_(T) {
  config_.validate();
  if (T_ < 2) throw InvalidParameter("Fourier grid needs T >= 2");
  const auto freqs = fourier_frequencies(T_);
  const int zero = fourier_zero_index(T_);
  const auto nscales = static_cast<Eigen::Index>(scales_.size());

  log_singular_.assign(static_cast<std::size_t>(T_), 0.0);
  weight_.assign(static_cast<std::size_t>(T_), 0.0);
  for (int k = 0; k < T_; ++k) {
    if (k == zero) continue;
    const double w = std::abs(freqs[static_cast<std::size_t>(k)]);
    const double s = std::sin(0.5 * w);
    log_singular_[static_cast<std::size_t>(k)] = std::log(4.0 * s * s);
    weight_[static_cast<std::size_t>(k)] = std::pow(w, config_.gamma);
  }

  log_regular_ = RealMatrix::Zero(nscales, T_);
  for (Eigen::Index s = 0; s < nscales; ++s) {
    const int n = scales_[static_cast<std::size_t>(s)];
    for (int k = 0; k < T_; ++k) {
      if (k == zero) continue;
      log_regular_(s, k) = std::log(spectral_density_at(model, 0.0, n, freqs[static_cast<std::size_t>(k)]));
    }
  }

  const auto ncand = static_cast<Eigen::Index>(config_.candidates.size());
  log_normalizer_.resize(ncand, nscales);
  for (Eigen::Index c = 0; c < ncand; ++c) {
    const auto& cand = config_.candidates[static_cast<std::size_t>(c)];
    if (cand.truncation() < model.truncation()) {
      throw ConfigError("candidate '" + cand.label + "' is shorter than the model truncation");
    }
    for (Eigen::Index s = 0; s < nscales; ++s) {
      log_normalizer_(c, s) = std::log(normalizer(model, cand, config_, scales_[static_cast<std::size_t>(s)]));
    }
  }
}

ContrastReport ContrastEngine::select(const SpectralTable& ptable) const {
  if (ptable.kind != SpectralKind::periodogram) throw ContractError("contrast selection needs a periodogram table");
  if (ptable.sample_length != T_) throw ContractError("periodogram length differs from the engine grid");
  check_finite(ptable);
  const auto nscales = static_cast<Eigen::Index>(scales_.size());
  const double step = 2.0 * kPi / T_;

  // U_c(n) = -step W~(n) [A_n - (alpha_c(n)/2) S_n - ln N_c(n) P_n] where
  // A, S, P are |w|^gamma-weighted periodogram moments.
  std::vector<double> moment_a(static_cast<std::size_t>(nscales));
  std::vector<double> moment_s(static_cast<std::size_t>(nscales));
  std::vector<double> moment_p(static_cast<std::size_t>(nscales));
  for (Eigen::Index s = 0; s < nscales; ++s) {
    const auto row = ptable.values.row(ptable.row_of(scales_[static_cast<std::size_t>(s)]));
    double a = 0.0, sg = 0.0, p = 0.0;
    for (int k = 0; k < T_; ++k) {
      const double pw = row(k) * weight_[static_cast<std::size_t>(k)];
      if (pw == 0.0) continue;
      a += pw * log_regular_(s, k);
      sg += pw * log_singular_[static_cast<std::size_t>(k)];
      p += pw;
    }
    moment_a[static_cast<std::size_t>(s)] = a;
    moment_s[static_cast<std::size_t>(s)] = sg;
    moment_p[static_cast<std::size_t>(s)] = p;
  }

  ContrastReport report;
  report.scales = scales_;
  const auto ncand = static_cast<Eigen::Index>(config_.candidates.size());
  report.contrast.resize(ncand, nscales);
  report.norms.assign(static_cast<std::size_t>(ncand), 0.0);
  for (Eigen::Index c = 0; c < ncand; ++c) {
    const auto& cand = config_.candidates[static_cast<std::size_t>(c)];
    double sup = 0.0;
    for (Eigen::Index s = 0; s < nscales; ++s) {
      const auto si = static_cast<std::size_t>(s);
      const int n = scales_[si];
      const double u = -step * config_.weight(n) *
                       (moment_a[si] - 0.5 * cand.alpha(n) * moment_s[si] - log_normalizer_(c, s) * moment_p[si]);
      report.contrast(c, s) = u;
      sup = std::max(sup, std::abs(u));
    }
    report.norms[static_cast<std::size_t>(c)] = sup;
  }
  report.selected = 0;
  for (std::size_t c = 1; c < report.norms.size(); ++c) {
    if (report.norms[c] < report.norms[static_cast<std::size_t>(report.selected)]) report.selected = static_cast<int>(c);
  }
  report.selected_profile = config_.candidates[static_cast<std::size_t>(report.selected)];
  return report;
}

ContrastReport select_theta(const SpectralTable& ptable, const ModelSpec& model, const ContrastConfig& config,
                            std::optional<std::vector<int>> scales) {
  if (config.candidates.empty()) throw ConfigError("candidate list is empty");
  std::vector<int> use = scales ? *scales : ptable.scales();
  ContrastEngine engine(model, config, std::move(use), ptable.sample_length);
  return engine.select(ptable);
}

std::vector<LrdProfile> restrict_to_lrd(std::vector<LrdProfile> candidates, const ScaleSet& srd) {
  for (auto& c : candidates) {
    for (int n : srd.scales()) {
      if (n <= c.truncation()) c.alphas[static_cast<std::size_t>(n - 1)] = 0.0;
    }
  }
  return candidates;
}

std::vector<LrdProfile> candidates_with_truth(const LrdProfile& truth, int count, std::uint64_t seed, bool decreasing) {
  if (count < 1) throw InvalidParameter("candidate count must be at least 1");
  auto out = count > 1 ? candidate_family(count - 1, truth.truncation(), seed, decreasing) : std::vector<LrdProfile>{};
  Rng rng = make_stream(seed, {kStreamPlacement});
  std::uniform_int_distribution<int> pos(0, count - 1);
  const int at = pos(rng);
  out.insert(out.begin() + at, truth);
  return out;
}

}  // namespace sphlrd
