#include "sphlrd/spectral_model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include <Eigen/Eigenvalues>

#include "sphlrd/errors.hpp"
#include "sphlrd/rng.hpp"

namespace sphlrd {
namespace {

constexpr double kRootMargin = 1e-9;
constexpr double kCommonRootTolerance = 1e-6;

// Roots of sum_{k=0}^{deg} a_k z^k with a_0 != 0.
std::vector<std::complex<double>> polynomial_roots(std::vector<double> a) {
  while (a.size() > 1 && a.back() == 0.0) a.pop_back();
  const int deg = static_cast<int>(a.size()) - 1;
  if (deg <= 0) return {};
  Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(deg, deg);
  for (int i = 1; i < deg; ++i) companion(i, i - 1) = 1.0;
  for (int i = 0; i < deg; ++i) companion(i, deg - 1) = -a[static_cast<std::size_t>(i)] / a.back();
  Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, false);
  const auto& ev = solver.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

}  // namespace

ScaleSet::ScaleSet(std::vector<int> scales) : scales_(std::move(scales)) {
  std::sort(scales_.begin(), scales_.end());
  scales_.erase(std::unique(scales_.begin(), scales_.end()), scales_.end());
  if (!scales_.empty() && scales_.front() < 1) throw InvalidParameter("scale indices start at 1");
}

ScaleSet ScaleSet::range(int first, int last) {
  std::vector<int> s;
  for (int n = first; n <= last; ++n) s.push_back(n);
  return ScaleSet(std::move(s));
}

bool ScaleSet::contains(int n) const { return std::binary_search(scales_.begin(), scales_.end(), n); }

std::vector<int> ScaleSet::complement(int truncation) const {
  std::vector<int> out;
  for (int n = 1; n <= truncation; ++n) {
    if (!contains(n)) out.push_back(n);
  }
  return out;
}

void validate_profile(const LrdProfile& profile, const ScaleSet& srd) {
  for (int n = 1; n <= profile.truncation(); ++n) {
    const double a = profile.alpha(n);
    if (!(a >= 0.0 && a < 0.5)) {
      throw InvalidModel("profile '" + profile.label + "': alpha(" + std::to_string(n) + ") = " +
                         std::to_string(a) + " outside [0, 1/2)");
    }
    if (srd.contains(n) && a != 0.0) {
      throw InvalidModel("profile '" + profile.label + "': nonzero alpha on short-memory scale " +
                         std::to_string(n));
    }
    if (!srd.contains(n) && a == 0.0) {
      throw InvalidModel("profile '" + profile.label + "': zero alpha on long-memory scale " +
                         std::to_string(n));
    }
  }
}

std::vector<std::complex<double>> ar_polynomial_roots(const std::vector<double>& coefficients) {
  std::vector<double> a{1.0};
  for (double c : coefficients) a.push_back(-c);
  return polynomial_roots(std::move(a));
}

std::vector<std::complex<double>> ma_polynomial_roots(const std::vector<double>& coefficients) {
  std::vector<double> a{1.0};
  a.insert(a.end(), coefficients.begin(), coefficients.end());
  return polynomial_roots(std::move(a));
}

SphArmaSpec::SphArmaSpec(Eigen::MatrixXd phi, Eigen::MatrixXd psi, std::vector<double> sigma2)
    : phi_(std::move(phi)), psi_(std::move(psi)), sigma2_(std::move(sigma2)) {
  const auto m = static_cast<Eigen::Index>(sigma2_.size());
  if (m < 1) throw InvalidModel("truncation must be positive");
  if (phi_.rows() != m || psi_.rows() != m) {
    throw InvalidModel("phi/psi tables need one row per scale");
  }
  for (int n = 1; n <= truncation(); ++n) {
    const double s2 = sigma2_[static_cast<std::size_t>(n - 1)];
    if (!(s2 > 0.0) || !std::isfinite(s2)) {
      throw InvalidModel("sigma2 at scale " + std::to_string(n) + " must be positive and finite");
    }
    const auto ar = ar_polynomial_roots(ar_coefficients(n));
    for (const auto& r : ar) {
      if (!(std::abs(r) > 1.0 + kRootMargin)) {
        throw InvalidModel("AR polynomial at scale " + std::to_string(n) + " has a root inside or on the unit circle");
      }
    }
    for (const auto& r : ma_polynomial_roots(ma_coefficients(n))) {
      for (const auto& s : ar) {
        if (std::abs(r - s) <= kCommonRootTolerance) {
          throw InvalidModel("AR and MA polynomials share a root at scale " + std::to_string(n));
        }
      }
    }
  }
}

SphArmaSpec SphArmaSpec::white(std::vector<double> sigma2) {
  const auto m = static_cast<Eigen::Index>(sigma2.size());
  return SphArmaSpec(Eigen::MatrixXd(m, 0), Eigen::MatrixXd(m, 0), std::move(sigma2));
}

std::vector<double> SphArmaSpec::ar_coefficients(int n) const {
  std::vector<double> c(static_cast<std::size_t>(p()));
  for (int k = 0; k < p(); ++k) c[static_cast<std::size_t>(k)] = phi_(n - 1, k);
  return c;
}

std::vector<double> SphArmaSpec::ma_coefficients(int n) const {
  std::vector<double> c(static_cast<std::size_t>(q()));
  for (int l = 0; l < q(); ++l) c[static_cast<std::size_t>(l)] = psi_(n - 1, l);
  return c;
}

ModelSpec ModelSpec::make(SphArmaSpec arma, LrdProfile lrd, ScaleSet srd_set, SpherePoint pole) {
  ModelSpec m;
  m.b_eta0.reserve(arma.sigma2().size());
  for (double s2 : arma.sigma2()) m.b_eta0.push_back(s2 / (2.0 * std::numbers::pi));
  m.arma = std::move(arma);
  m.lrd = std::move(lrd);
  m.srd_set = std::move(srd_set);
  m.pole = pole;
  m.validate();
  return m;
}

void ModelSpec::validate() const {
  const int m = truncation();
  if (lrd.truncation() != m) throw InvalidModel("LRD profile length differs from the ARMA truncation");
  if (static_cast<int>(b_eta0.size()) != m) throw InvalidModel("B_eta(0) needs one value per scale");
  for (double b : b_eta0) {
    if (!(b > 0.0) || !std::isfinite(b)) throw InvalidModel("B_eta(0) must be positive and finite");
  }
  if (!srd_set.empty() && srd_set.scales().back() > m) throw InvalidModel("short-memory scale beyond truncation");
  validate_profile(lrd, srd_set);
}

double arma_srd_factor(const SphArmaSpec& spec, int n, double omega) {
  if (n < 1 || n > spec.truncation()) throw InvalidParameter("scale index out of range");
  const double w = std::abs(omega);
  std::complex<double> ar{1.0, 0.0};
  std::complex<double> ma{1.0, 0.0};
  for (int k = 1; k <= spec.p(); ++k) ar -= spec.phi()(n - 1, k - 1) * std::polar(1.0, -w * k);
  for (int l = 1; l <= spec.q(); ++l) ma += spec.psi()(n - 1, l - 1) * std::polar(1.0, -w * l);
  return std::norm(ma) / std::norm(ar);
}

double spectral_density_at(const ModelSpec& model, double alpha, int n, double omega) {
  const double w = std::abs(omega);
  const double base = model.b_eta(n) * arma_srd_factor(model.arma, n, w);
  if (alpha == 0.0) return base;
  if (w == 0.0) throw SingularFrequency("long-memory density is singular at omega = 0 (scale " + std::to_string(n) + ")");
  const double s = std::sin(0.5 * w);
  return base * std::pow(4.0 * s * s, -0.5 * alpha);
}

double spectral_density(const ModelSpec& model, const LrdProfile& theta, int n, double omega) {
  return spectral_density_at(model, theta.alpha(n), n, omega);
}

double autocovariance_b0(const ModelSpec& model, const LrdProfile& theta, int n, int nodes) {
  const double a = theta.alpha(n);
  if (!(a < 1.0)) throw InvalidParameter("density not integrable for alpha >= 1");
  const auto f = [&](double w) { return spectral_density_at(model, a, n, w); };
  return 2.0 * integrate_origin_singular(f, std::numbers::pi, a, nodes);
}

SummabilityReport validate_summability(const ModelSpec& model) {
  SummabilityReport r;
  const int m = model.truncation();
  for (int n = 1; n <= m; ++n) {
    const double b = autocovariance_b0(model, model.lrd, n);
    r.b0.push_back(b);
    r.trace_partial_sum += (2.0 * n + 1.0) * b;
    r.hilbert_schmidt_partial_sum += (2.0 * n + 1.0) * b * b;
  }
  if (m < 2) return r;
  // Fit over the upper half of the scales, which is where the tail shows.
  const int first = m >= 4 ? m / 2 : 1;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int count = 0;
  for (int n = first; n <= m; ++n) {
    const double x = std::log(static_cast<double>(n));
    const double y = std::log(r.b0[static_cast<std::size_t>(n - 1)]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++count;
  }
  const double slope = (count * sxy - sx * sy) / (count * sxx - sx * sx);
  r.tail_exponent = slope;
  r.summable = slope < -2.0;
  return r;
}

std::vector<LrdProfile> candidate_family(int count, int truncation, std::uint64_t seed, bool decreasing) {
  if (count < 1) throw InvalidParameter("candidate count must be at least 1");
  if (truncation < 1) throw InvalidParameter("truncation must be positive");
  std::vector<LrdProfile> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int i = 1; i <= count; ++i) {
    Rng rng = make_stream(seed, {kStreamCandidates, static_cast<std::uint64_t>(i)});
    std::gamma_distribution<double> ga(2.0, 1.0);
    std::gamma_distribution<double> gb(5.0 * i / (i + 1.0), 1.0);
    LrdProfile p;
    p.label = "candidate-" + std::to_string(i);
    p.alphas.resize(static_cast<std::size_t>(truncation));
    for (auto& a : p.alphas) {
      const double x = ga(rng);
      const double y = gb(rng);
      a = std::clamp(0.5 * x / (x + y), 1e-4, 0.5 - 1e-4);
    }
    if (decreasing) {
      std::sort(p.alphas.begin(), p.alphas.end(), std::greater<>());
    } else {
      std::sort(p.alphas.begin(), p.alphas.end());
    }
    out.push_back(std::move(p));
  }
  return out;
}

LrdProfile compact_profile(int truncation) {
  LrdProfile p{{}, "compact"};
  for (int n = 1; n <= truncation; ++n) p.alphas.push_back(0.45 / (1.0 + 0.15 * n));
  return p;
}

LrdProfile noncompact_profile(int truncation) {
  LrdProfile p{{}, "noncompact"};
  for (int n = 1; n <= truncation; ++n) p.alphas.push_back(0.2 + 0.25 * n / (n + 5.0));
  return p;
}

}  // namespace sphlrd
