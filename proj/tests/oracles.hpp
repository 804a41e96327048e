// Independent reference computations for the test suites. Nothing here calls
// into the library's numerical code paths.
#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <boost/math/quadrature/tanh_sinh.hpp>

namespace oracle {

inline constexpr double pi = std::numbers::pi;

/// Gauss-Legendre nodes and weights on [-1, 1] from the Jacobi matrix
/// eigenproblem (Golub-Welsch).
inline std::pair<std::vector<double>, std::vector<double>> golub_welsch(int count) {
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(count, count);
  for (int k = 1; k < count; ++k) {
    const double b = k / std::sqrt(4.0 * k * k - 1.0);
    J(k, k - 1) = b;
    J(k - 1, k) = b;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
  std::vector<double> x(static_cast<std::size_t>(count)), w(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    x[static_cast<std::size_t>(i)] = es.eigenvalues()(i);
    const double v = es.eigenvectors()(0, i);
    w[static_cast<std::size_t>(i)] = 2.0 * v * v;
  }
  return {x, w};
}

/// Explicit Legendre polynomials up to degree 5.
inline double legendre_closed(int n, double x) {
  switch (n) {
    case 0: return 1.0;
    case 1: return x;
    case 2: return 0.5 * (3 * x * x - 1);
    case 3: return 0.5 * (5 * x * x * x - 3 * x);
    case 4: return (35 * std::pow(x, 4) - 30 * x * x + 3) / 8.0;
    case 5: return (63 * std::pow(x, 5) - 70 * std::pow(x, 3) + 15 * x) / 8.0;
    default: return NAN;
  }
}

/// Double-exponential quadrature over (a, b); tolerant of endpoint singularities.
inline double tanh_sinh(const std::function<double(double)>& f, double a, double b) {
  boost::math::quadrature::tanh_sinh<double> integrator(15, 1e-100);
  return integrator.integrate(f, a, b, 1e-13);
}

/// Composite midpoint rule on [0, hi] under w = hi u^2 (node density ~ w^{-1/2}).
inline double graded_midpoint(const std::function<double(double)>& f, double hi, long nodes = 1'000'000) {
  const double du = 1.0 / static_cast<double>(nodes);
  double acc = 0.0;
  for (long i = 0; i < nodes; ++i) {
    const double u = (static_cast<double>(i) + 0.5) * du;
    acc += f(hi * u * u) * 2.0 * hi * u;
  }
  return acc * du;
}

/// Plain Fourier frequencies 2 pi k / T, k = -floor((T-1)/2) .. floor(T/2).
inline std::vector<double> frequencies(int T) {
  std::vector<double> w;
  for (int k = -(T - 1) / 2; k <= T / 2; ++k) w.push_back(2.0 * pi * k / T);
  return w;
}

/// O(T^2) transform (1/sqrt(2 pi T)) sum_t x_t exp(-i w t), t = 1..T.
inline std::vector<std::complex<double>> direct_dft(const std::vector<double>& x) {
  const int T = static_cast<int>(x.size());
  const auto w = frequencies(T);
  std::vector<std::complex<double>> out;
  const double scale = 1.0 / std::sqrt(2.0 * pi * T);
  for (double om : w) {
    std::complex<double> acc = 0.0;
    for (int t = 1; t <= T; ++t) acc += x[static_cast<std::size_t>(t - 1)] * std::exp(std::complex<double>(0.0, -om * t));
    out.push_back(acc * scale);
  }
  return out;
}

/// Scalar contrast -(2 pi / T) sum_{k != 0} p_k ln(f_k / N) |w_k|^gamma for a
/// white-noise-plus-memory density b [4 sin^2(w/2)]^{-alpha/2}, with N by
/// double-exponential quadrature.
inline double scalar_contrast(const std::vector<double>& p, double b, double alpha, double gamma) {
  const int T = static_cast<int>(p.size());
  const auto w = frequencies(T);
  const auto dens = [&](double om) { return b * std::pow(4.0 * std::sin(om / 2) * std::sin(om / 2), -alpha / 2); };
  const double norm = 2.0 * tanh_sinh([&](double om) { return dens(om) * std::pow(om, gamma); }, 0.0, pi);
  double acc = 0.0;
  for (int k = 0; k < T; ++k) {
    if (w[static_cast<std::size_t>(k)] == 0.0) continue;
    const double om = w[static_cast<std::size_t>(k)];
    acc += p[static_cast<std::size_t>(k)] * std::log(dens(om) / norm) * std::pow(std::abs(om), gamma);
  }
  return -(2.0 * pi / T) * acc;
}

/// Sample autocorrelation at lags 0..max_lag.
inline std::vector<double> autocorrelation(const std::vector<double>& x, int max_lag) {
  const auto n = static_cast<double>(x.size());
  double mean = 0.0;
  for (double v : x) mean += v;
  mean /= n;
  std::vector<double> acf;
  double c0 = 0.0;
  for (double v : x) c0 += (v - mean) * (v - mean);
  for (int h = 0; h <= max_lag; ++h) {
    double c = 0.0;
    for (std::size_t t = static_cast<std::size_t>(h); t < x.size(); ++t) c += (x[t] - mean) * (x[t - h] - mean);
    acf.push_back(c / c0);
  }
  return acf;
}

/// Least-squares slope of y on x.
inline double slope(const std::vector<double>& x, const std::vector<double>& y) {
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(x.size());
  my /= static_cast<double>(y.size());
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  return sxy / sxx;
}

}  // namespace oracle
