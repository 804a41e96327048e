#pragma once

#include <array>
#include <span>
#include <vector>

namespace sphlrd {

/// Legendre frequency n of the Laplace-Beltrami spectrum on a
/// two-point homogeneous space, with its Jacobi parameters.
///
/// The sphere S^d uses alpha = beta = (d - 2) / 2. `delta` is the
/// dimension of the eigenspace H_n; on S^2 it equals 2n + 1.
struct HarmonicScale {
  int n = 0;
  int d = 2;
  double alpha = 0.0;
  double beta = 0.0;
  double delta = 1.0;
  double lambda_lb = 0.0;  // Laplace-Beltrami eigenvalue, bookkeeping only

  /// Scale n on the sphere S^d (d >= 2).
  static HarmonicScale sphere(int n, int d = 2);

  /// Scale n for arbitrary Jacobi parameters (alpha, beta > -1).
  static HarmonicScale jacobi(int n, double alpha, double beta, int d);
};

/// Dimension of H_n from the Gamma-ratio formula.
double scale_dimension(int n, double alpha, double beta);

/// Surface measure of the unit sphere S^d embedded in R^{d+1}.
double sphere_area(int d);

/// P_n(x) by the upward three-term recurrence. |x| may exceed 1 by at
/// most 1e-12 (clamped); larger violations throw InvalidParameter.
double legendre(int n, double x);

/// R_n^{(alpha,beta)}(x) = P_n^{(alpha,beta)}(x) / P_n^{(alpha,beta)}(1).
double jacobi_normalized(int n, double alpha, double beta, double x);

/// Addition-formula value sum_j S_{n,j}(x) S_{n,j}(y) for <x,y> = cosdist.
double zonal_kernel(const HarmonicScale& scale, double cosdist);

/// Unit vector on S^2.
class SpherePoint {
public:
  SpherePoint() = default;

  /// Normalizes v; throws InvalidParameter for a (near) zero vector.
  static SpherePoint from_vector(const std::array<double, 3>& v);
  static SpherePoint from_angles(double colatitude, double longitude);
  static SpherePoint north_pole() { return SpherePoint({0.0, 0.0, 1.0}); }

  const std::array<double, 3>& xyz() const { return xyz_; }
  double colatitude() const;
  double longitude() const;

private:
  explicit SpherePoint(const std::array<double, 3>& unit) : xyz_(unit) {}
  std::array<double, 3> xyz_{0.0, 0.0, 1.0};
};

/// Clamped inner product <x, y>, i.e. the cosine of the geodesic distance.
double geodesic_cos(const SpherePoint& x, const SpherePoint& y);

/// Equiangular colatitude x longitude grid with cell-centred colatitudes,
/// row-major in colatitude.
std::vector<SpherePoint> equiangular_grid(int n_colatitude = 60, int n_longitude = 120);

/// Zonal field sum_{n=1..M} a_n * zonal_kernel(n, <x, pole>) on S^2.
struct ZonalField {
  SpherePoint pole;
  std::vector<double> coefficients;  // a_1 .. a_M

  int truncation() const { return static_cast<int>(coefficients.size()); }
};

std::vector<double> reconstruct_field(const ZonalField& field, std::span<const SpherePoint> grid);

}  // namespace sphlrd
