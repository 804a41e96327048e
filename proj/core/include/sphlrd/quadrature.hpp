#pragma once

#include <functional>

namespace sphlrd {

using Integrand = std::function<double(double)>;

/// Default total node count for spectral-domain integrals.
inline constexpr int kDefaultQuadratureNodes = 4096;

/// Composite Gauss-Legendre rule on [lo, hi] with about `nodes` evaluations.
double integrate_panels(const Integrand& f, double lo, double hi, int nodes = kDefaultQuadratureNodes);

/// Integral over [0, hi] of f, where f(w) may grow like w^{-exponent} at the
/// origin (exponent < 1). The mesh is graded towards 0 through w = hi * u^k
/// with k = ceil(2 (1 - exponent)) / (1 - exponent), which makes the transformed integrand
/// bounded and smooths fractional powers such as w^{gamma - alpha}; the origin
/// itself is never evaluated.
double integrate_origin_singular(const Integrand& f, double hi, double exponent,
                                 int nodes = kDefaultQuadratureNodes);

}  // namespace sphlrd
