#include "sphlrd/quadrature.hpp"

#include <algorithm>
#include <cmath>

#include <boost/math/quadrature/gauss.hpp>

#include "sphlrd/errors.hpp"

namespace sphlrd {
namespace {

constexpr unsigned kRulePoints = 20;
using Rule = boost::math::quadrature::gauss<double, kRulePoints>;
constexpr double kMinGrading = 2.0;

int panel_count(int nodes) {
  if (nodes < 1) throw InvalidParameter("quadrature node count must be positive");
  return std::max(1, (nodes + static_cast<int>(kRulePoints) - 1) / static_cast<int>(kRulePoints));
}

// Boost stores the non-negative half of the symmetric rule.
template <class F>
double panel(const F& f, double lo, double hi) {
  const auto& x = Rule::abscissa();
  const auto& w = Rule::weights();
  const double mid = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  double acc = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] == 0.0) {
      acc += w[i] * f(mid);
    } else {
      acc += w[i] * (f(mid - half * x[i]) + f(mid + half * x[i]));
    }
  }
  return acc * half;
}

}  // namespace

double integrate_panels(const Integrand& f, double lo, double hi, int nodes) {
  const int panels = panel_count(nodes);
  const double h = (hi - lo) / panels;
  double acc = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double a = lo + p * h;
    const double b = (p + 1 == panels) ? hi : a + h;
    acc += panel(f, a, b);
  }
  return acc;
}

double integrate_origin_singular(const Integrand& f, double hi, double exponent, int nodes) {
  if (!(exponent < 1.0)) throw InvalidParameter("singularity exponent must be below 1");
  if (!(hi > 0.0)) throw InvalidParameter("upper limit must be positive");
  const double k = std::ceil(kMinGrading * (1.0 - exponent)) / (1.0 - exponent);
  const auto transformed = [&](double u) {
    const double uk1 = std::pow(u, k - 1.0);
    return f(hi * uk1 * u) * hi * k * uk1;
  };
  const int panels = panel_count(nodes);
  const double h = 1.0 / panels;
  double acc = 0.0;
  for (int p = 0; p < panels; ++p) acc += panel(transformed, p * h, (p + 1 == panels) ? 1.0 : (p + 1) * h);
  return acc;
}

}  // namespace sphlrd
