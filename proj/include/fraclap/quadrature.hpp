#pragma once

#include <functional>
#include <span>
#include <vector>

namespace fraclap::quad {

struct Result {
  double value = 0.0;
  double error = 0.0;
  int panels = 0;
  bool converged = true;

  Result& operator+=(const Result& o) {
    value += o.value;
    error += o.error;
    panels += o.panels;
    converged = converged && o.converged;
    return *this;
  }
};

using Integrand = std::function<double(double)>;

/// Single 15-point Gauss-Kronrod panel; error is |K15 - G7| plus a roundoff floor.
Result gk15(const Integrand& f, double a, double b);

/// Globally adaptive Gauss-Kronrod on [a,b] (bisect the worst panel until the
/// summed error meets max(abs_tol, rel_tol*|value|) or the budget runs out).
Result adaptive(const Integrand& f, double a, double b, double rel_tol, double abs_tol,
                int max_subdivisions);

/// Adaptive integration over consecutive panels [p0,p1], [p1,p2], ...; the
/// tolerance is shared out in proportion to panel count.
Result adaptive_panels(const Integrand& f, std::span<const double> breaks, double rel_tol,
                       double abs_tol, int max_subdivisions);

/// Gauss-Legendre nodes and weights on [-1,1].
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
GaussRule gauss_legendre(int order);

}  // namespace fraclap::quad
