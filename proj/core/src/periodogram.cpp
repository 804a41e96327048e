#include "sphlrd/periodogram.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "fft.hpp"
#include "sphlrd/errors.hpp"

namespace sphlrd {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void require_kind(const SpectralTable& t, SpectralKind kind) {
  if (t.kind != kind) {
    throw ContractError("expected a " + std::string(to_string(kind)) + " table, got " + std::string(to_string(t.kind)));
  }
}

std::vector<std::complex<double>> direct_dft(std::span<const double> x) {
  const int T = static_cast<int>(x.size());
  std::vector<std::complex<double>> twiddle(static_cast<std::size_t>(T));
  for (int m = 0; m < T; ++m) twiddle[static_cast<std::size_t>(m)] = std::polar(1.0, -kTwoPi * m / T);
  const int first = -((T - 1) / 2);
  std::vector<std::complex<double>> out(static_cast<std::size_t>(T));
  for (int i = 0; i < T; ++i) {
    const long long k = first + i;
    std::complex<double> acc{0.0, 0.0};
    for (int t = 1; t <= T; ++t) {
      long long m = (k * t) % T;
      if (m < 0) m += T;
      acc += x[static_cast<std::size_t>(t - 1)] * twiddle[static_cast<std::size_t>(m)];
    }
    out[static_cast<std::size_t>(i)] = acc;
  }
  return out;
}

std::vector<std::complex<double>> fast_dft(std::span<const double> x) {
  const int T = static_cast<int>(x.size());
  const auto half = detail::real_dft_half(x);
  const int first = -((T - 1) / 2);
  std::vector<std::complex<double>> out(static_cast<std::size_t>(T));
  // Shift from s = t - 1 to t: multiply by exp(-i w_k).
  for (int k = 0; k <= T / 2; ++k) {
    out[static_cast<std::size_t>(k - first)] = half[static_cast<std::size_t>(k)] * std::polar(1.0, -kTwoPi * k / T);
  }
  for (int k = first; k < 0; ++k) {
    out[static_cast<std::size_t>(k - first)] = std::conj(out[static_cast<std::size_t>(-k - first)]);
  }
  return out;
}

}  // namespace

std::string_view to_string(SpectralKind kind) {
  switch (kind) {
    case SpectralKind::fdft: return "fdft";
    case SpectralKind::periodogram: return "periodogram";
    case SpectralKind::smoothed: return "smoothed";
    case SpectralKind::model: return "model";
  }
  return "unknown";
}

std::string_view to_string(SmoothingWindow::Shape shape) {
  return shape == SmoothingWindow::Shape::gaussian ? "gaussian" : "bartlett";
}

int SpectralTable::zero_index() const { return fourier_zero_index(sample_length); }

int SpectralTable::row_of(int n) const {
  int found = -1;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].n == n) {
      if (found >= 0) throw ContractError("scale " + std::to_string(n) + " has several rows");
      found = static_cast<int>(r);
    }
  }
  if (found < 0) throw ContractError("scale " + std::to_string(n) + " not present in table");
  return found;
}

std::vector<int> SpectralTable::scales() const {
  std::vector<int> out;
  for (const auto& r : rows) {
    if (out.empty() || out.back() != r.n) out.push_back(r.n);
  }
  return out;
}

int fourier_zero_index(int T) { return (T - 1) / 2; }

std::vector<double> fourier_frequencies(int T) {
  if (T < 1) throw InvalidParameter("grid length must be positive");
  std::vector<double> w(static_cast<std::size_t>(T));
  const int first = -fourier_zero_index(T);
  for (int i = 0; i < T; ++i) w[static_cast<std::size_t>(i)] = kTwoPi * (first + i) / T;
  return w;
}

std::vector<std::complex<double>> fdft_series(std::span<const double> x, DftMethod method) {
  const int T = static_cast<int>(x.size());
  if (T < 2) throw InvalidParameter("fDFT needs at least two time points");
  if (method == DftMethod::automatic) method = T <= kDirectDftMaxLength ? DftMethod::direct : DftMethod::fast;
  auto out = method == DftMethod::direct ? direct_dft(x) : fast_dft(x);
  const double norm = 1.0 / std::sqrt(kTwoPi * T);
  for (auto& v : out) v *= norm;
  return out;
}

SpectralTable fdft(const FunctionalSample& sample, DftMethod method) {
  const int T = sample.length();
  if (T < 2) throw InvalidParameter("fDFT needs at least two time points");
  SpectralTable table;
  table.kind = SpectralKind::fdft;
  table.sample_length = T;
  table.frequencies = fourier_frequencies(T);
  for (int n = 1; n <= sample.truncation(); ++n) {
    for (int j = 1; j <= sample.orders(n); ++j) table.rows.push_back({n, j});
  }
  table.complex_values.resize(static_cast<Eigen::Index>(table.rows.size()), T);
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const auto x = sample.series(table.rows[r].n, table.rows[r].j);
    for (double v : x) {
      if (!std::isfinite(v)) throw DataError("non-finite value in sample");
    }
    const auto row = fdft_series(x, method);
    for (int k = 0; k < T; ++k) table.complex_values(static_cast<Eigen::Index>(r), k) = row[static_cast<std::size_t>(k)];
  }
  return table;
}

SpectralTable periodogram_scale(const SpectralTable& fdft_table) {
  require_kind(fdft_table, SpectralKind::fdft);
  SpectralTable out;
  out.kind = SpectralKind::periodogram;
  out.sample_length = fdft_table.sample_length;
  out.frequencies = fdft_table.frequencies;
  const auto scales = fdft_table.scales();
  const auto cols = static_cast<Eigen::Index>(out.frequencies.size());
  out.values = RealMatrix::Zero(static_cast<Eigen::Index>(scales.size()), cols);
  std::size_t r = 0;
  for (std::size_t s = 0; s < scales.size(); ++s) {
    out.rows.push_back({scales[s], 1});
    int count = 0;
    for (; r < fdft_table.rows.size() && fdft_table.rows[r].n == scales[s]; ++r, ++count) {
      for (Eigen::Index k = 0; k < cols; ++k) {
        out.values(static_cast<Eigen::Index>(s), k) += std::norm(fdft_table.complex_values(static_cast<Eigen::Index>(r), k));
      }
    }
    out.values.row(static_cast<Eigen::Index>(s)) /= count;
  }
  return out;
}

std::vector<double> integrated_periodogram(const SpectralTable& ptable) {
  require_kind(ptable, SpectralKind::periodogram);
  const int zero = ptable.zero_index();
  const double step = kTwoPi / ptable.sample_length;
  std::vector<double> out;
  for (Eigen::Index r = 0; r < ptable.values.rows(); ++r) {
    double acc = 0.0;
    for (Eigen::Index k = 0; k < ptable.values.cols(); ++k) {
      if (k != zero) acc += ptable.values(r, k);
    }
    out.push_back(step * acc);
  }
  return out;
}

SmoothingWindow::SmoothingWindow(Shape shape, double bandwidth) : shape_(shape), bandwidth_(bandwidth) {
  if (!(bandwidth > 0.0) || !(bandwidth <= std::numbers::pi)) {
    throw InvalidParameter("bandwidth must lie in (0, pi]");
  }
}

double SmoothingWindow::kernel(double x) const {
  if (shape_ == Shape::bartlett) {
    const double a = std::abs(x);
    return a < 1.0 ? 1.0 - a : 0.0;
  }
  return std::exp(-0.5 * x * x) / std::sqrt(kTwoPi);
}

double SmoothingWindow::periodized(double x) const {
  constexpr double kCutoff = 1e-12;
  const double b = bandwidth_;
  double acc = kernel(x / b) / b;
  // Terms are monotone in |j| once (x + 2 pi j) / B leaves the window's core.
  for (int sign : {-1, 1}) {
    for (int j = 1;; ++j) {
      const double shifted = (x + sign * kTwoPi * j) / b;
      const double term = kernel(shifted) / b;
      acc += term;
      if (term < kCutoff && std::abs(shifted) > 1.0) break;
    }
  }
  return acc;
}

SpectralTable smoothed_estimator(const SpectralTable& ptable, const SmoothingWindow& window, const ScaleSet& srd_scales) {
  require_kind(ptable, SpectralKind::periodogram);
  const int T = ptable.sample_length;
  const int zero = ptable.zero_index();
  const double step = kTwoPi / T;

  std::vector<double> weight(static_cast<std::size_t>(T));
  for (int r = 0; r < T; ++r) weight[static_cast<std::size_t>(r)] = step * window.periodized(kTwoPi * r / T);

  SpectralTable out;
  out.kind = SpectralKind::smoothed;
  out.sample_length = T;
  out.frequencies = ptable.frequencies;
  out.values = RealMatrix::Zero(static_cast<Eigen::Index>(srd_scales.size()), T);
  for (std::size_t s = 0; s < srd_scales.size(); ++s) {
    const int n = srd_scales.scales()[s];
    const auto row = ptable.values.row(ptable.row_of(n));
    out.rows.push_back({n, 1});
    for (int k = 0; k < T; ++k) {
      double acc = 0.0;
      double mass = 0.0;
      for (int m = 0; m < T; ++m) {
        if (m == zero) continue;
        const double w = weight[static_cast<std::size_t>(((k - m) % T + T) % T)];
        acc += w * row(m);
        mass += w;
      }
      out.values(static_cast<Eigen::Index>(s), k) = acc / mass;
    }
  }
  return out;
}

SpectralTable model_table(const ModelSpec& model, const LrdProfile& theta, const std::vector<int>& scales, int T) {
  SpectralTable out;
  out.kind = SpectralKind::model;
  out.sample_length = T;
  out.frequencies = fourier_frequencies(T);
  out.values.resize(static_cast<Eigen::Index>(scales.size()), T);
  const int zero = out.zero_index();
  for (std::size_t s = 0; s < scales.size(); ++s) {
    const int n = scales[s];
    out.rows.push_back({n, 1});
    const double a = theta.alpha(n);
    for (int k = 0; k < T; ++k) {
      out.values(static_cast<Eigen::Index>(s), k) =
          (k == zero && a > 0.0) ? std::numeric_limits<double>::infinity()
                                 : spectral_density_at(model, a, n, out.frequencies[static_cast<std::size_t>(k)]);
    }
  }
  return out;
}

}  // namespace sphlrd
