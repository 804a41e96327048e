#include "sphlrd/harmonics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "sphlrd/errors.hpp"

namespace sphlrd {
namespace {

constexpr double kDomainSlack = 1e-12;

double clamp_unit(double x) {
  if (!(std::abs(x) <= 1.0 + kDomainSlack)) {
    throw InvalidParameter("argument " + std::to_string(x) + " outside [-1, 1]");
  }
  return std::clamp(x, -1.0, 1.0);
}

void check_jacobi_parameters(double alpha, double beta) {
  if (!(alpha > -1.0) || !(beta > -1.0)) {
    throw InvalidParameter("Jacobi parameters must exceed -1");
  }
}

// Unnormalized P_n^{(a,b)}(x).
double jacobi_raw(int n, double a, double b, double x) {
  if (n == 0) return 1.0;
  double prev = 1.0;
  double cur = (a + 1.0) + 0.5 * (a + b + 2.0) * (x - 1.0);
  for (int k = 2; k <= n; ++k) {
    const double s = 2.0 * k + a + b;
    const double c0 = 2.0 * k * (k + a + b) * (s - 2.0);
    const double c1 = (s - 1.0) * (s * (s - 2.0) * x + a * a - b * b);
    const double c2 = 2.0 * (k + a - 1.0) * (k + b - 1.0) * s;
    const double next = (c1 * cur - c2 * prev) / c0;
    prev = cur;
    cur = next;
  }
  return cur;
}

}  // namespace

double scale_dimension(int n, double alpha, double beta) {
  if (n < 0) throw InvalidParameter("negative Legendre frequency");
  check_jacobi_parameters(alpha, beta);
  if (n == 0) return 1.0;
  const double ab = alpha + beta;
  const double log_ratio = std::lgamma(beta + 1.0) + std::lgamma(n + ab + 1.0) + std::lgamma(n + alpha + 1.0) -
                           std::lgamma(alpha + 1.0) - std::lgamma(ab + 2.0) - std::lgamma(n + 1.0) -
                           std::lgamma(n + beta + 1.0);
  const double value = (2.0 * n + ab + 1.0) * std::exp(log_ratio);
  const double nearest = std::round(value);
  return std::abs(value - nearest) < 1e-9 * std::max(1.0, nearest) ? nearest : value;
}

double sphere_area(int d) {
  if (d < 1) throw InvalidParameter("sphere dimension must be positive");
  const double h = 0.5 * (d + 1);
  return 2.0 * std::pow(std::numbers::pi, h) / std::tgamma(h);
}

HarmonicScale HarmonicScale::jacobi(int n, double alpha, double beta, int d) {
  if (n < 0) throw InvalidParameter("negative Legendre frequency");
  HarmonicScale s;
  s.n = n;
  s.d = d;
  s.alpha = alpha;
  s.beta = beta;
  s.delta = scale_dimension(n, alpha, beta);
  s.lambda_lb = -n * (n + alpha + beta + 1.0);
  return s;
}

HarmonicScale HarmonicScale::sphere(int n, int d) {
  if (d < 2) throw InvalidParameter("sphere dimension must be at least 2");
  const double ab = 0.5 * (d - 2);
  return jacobi(n, ab, ab, d);
}

double legendre(int n, double x) {
  if (n < 0) throw InvalidParameter("negative Legendre degree");
  x = clamp_unit(x);
  if (n == 0) return 1.0;
  double prev = 1.0;
  double cur = x;
  for (int k = 1; k < n; ++k) {
    const double next = ((2.0 * k + 1.0) * x * cur - k * prev) / (k + 1.0);
    prev = cur;
    cur = next;
  }
  return cur;
}

double jacobi_normalized(int n, double alpha, double beta, double x) {
  if (n < 0) throw InvalidParameter("negative Jacobi degree");
  check_jacobi_parameters(alpha, beta);
  x = clamp_unit(x);
  if (x == 1.0 || n == 0) return 1.0;
  // P_n^{(a,b)}(1) = (a+1)_n / n!
  double at_one = 1.0;
  for (int k = 1; k <= n; ++k) at_one *= (k + alpha) / k;
  return jacobi_raw(n, alpha, beta, x) / at_one;
}

double zonal_kernel(const HarmonicScale& scale, double cosdist) {
  const double r = (scale.alpha == 0.0 && scale.beta == 0.0)
                       ? legendre(scale.n, cosdist)
                       : jacobi_normalized(scale.n, scale.alpha, scale.beta, cosdist);
  return scale.delta / sphere_area(scale.d) * r;
}

SpherePoint SpherePoint::from_vector(const std::array<double, 3>& v) {
  const double norm = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
  if (!(norm > 1e-300) || !std::isfinite(norm)) {
    throw InvalidParameter("cannot normalize a zero or non-finite vector");
  }
  return SpherePoint({v[0] / norm, v[1] / norm, v[2] / norm});
}

SpherePoint SpherePoint::from_angles(double colatitude, double longitude) {
  const double s = std::sin(colatitude);
  return SpherePoint({s * std::cos(longitude), s * std::sin(longitude), std::cos(colatitude)});
}

double SpherePoint::colatitude() const { return std::acos(std::clamp(xyz_[2], -1.0, 1.0)); }

double SpherePoint::longitude() const {
  const double lon = std::atan2(xyz_[1], xyz_[0]);
  return lon < 0.0 ? lon + 2.0 * std::numbers::pi : lon;
}

double geodesic_cos(const SpherePoint& x, const SpherePoint& y) {
  const auto& a = x.xyz();
  const auto& b = y.xyz();
  return std::clamp(a[0] * b[0] + a[1] * b[1] + a[2] * b[2], -1.0, 1.0);
}

std::vector<SpherePoint> equiangular_grid(int n_colatitude, int n_longitude) {
  if (n_colatitude <= 0 || n_longitude <= 0) throw InvalidParameter("grid dimensions must be positive");
  std::vector<SpherePoint> grid;
  grid.reserve(static_cast<std::size_t>(n_colatitude) * n_longitude);
  for (int i = 0; i < n_colatitude; ++i) {
    const double colat = (i + 0.5) * std::numbers::pi / n_colatitude;
    for (int j = 0; j < n_longitude; ++j) {
      grid.push_back(SpherePoint::from_angles(colat, 2.0 * std::numbers::pi * j / n_longitude));
    }
  }
  return grid;
}

std::vector<double> reconstruct_field(const ZonalField& field, std::span<const SpherePoint> grid) {
  std::vector<double> out(grid.size(), 0.0);
  std::vector<HarmonicScale> scales;
  scales.reserve(field.coefficients.size());
  for (int n = 1; n <= field.truncation(); ++n) scales.push_back(HarmonicScale::sphere(n));
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double c = geodesic_cos(grid[i], field.pole);
    double acc = 0.0;
    for (std::size_t k = 0; k < scales.size(); ++k) {
      const double a = field.coefficients[k];
      if (a != 0.0) acc += a * zonal_kernel(scales[k], c);
    }
    out[i] = acc;
  }
  return out;
}

}  // namespace sphlrd
