#include "fraclap/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <queue>

namespace fraclap::quad {

namespace {

// Kronrod abscissae (descending, last is the centre) and weights; the Gauss
// 7-point rule uses the odd-indexed abscissae.
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {0.129484966168869693270611432679082,
                           0.279705391489276667901467771423780,
                           0.381830050505118944950369775488975,
                           0.417959183673469387755102040816327};

struct Panel {
  double a, b;
  Result r;
  bool operator<(const Panel& o) const { return r.error < o.r.error; }
};

}  // namespace

Result gk15(const Integrand& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  const double fc = f(c);
  double kron = fc * kWgk[7];
  double gauss = fc * kWg[3];
  double abs_sum = std::abs(kron);
  for (int j = 0; j < 7; ++j) {
    const double dx = h * kXgk[j];
    const double f1 = f(c - dx);
    const double f2 = f(c + dx);
    kron += kWgk[j] * (f1 + f2);
    abs_sum += kWgk[j] * (std::abs(f1) + std::abs(f2));
    if (j % 2 == 1) gauss += kWg[j / 2] * (f1 + f2);
  }
  Result r;
  r.value = kron * h;
  const double eps = std::numeric_limits<double>::epsilon();
  r.error = std::abs((kron - gauss) * h) + 50.0 * eps * abs_sum * std::abs(h);
  r.panels = 1;
  if (!std::isfinite(r.value)) r.converged = false;
  return r;
}

Result adaptive(const Integrand& f, double a, double b, double rel_tol, double abs_tol,
                int max_subdivisions) {
  if (a == b) return Result{};
  std::priority_queue<Panel> heap;
  Result total = gk15(f, a, b);
  heap.push({a, b, total});
  int panels = 1;
  while (total.error > std::max(abs_tol, rel_tol * std::abs(total.value))) {
    if (panels >= max_subdivisions || !std::isfinite(total.value)) {
      total.converged = false;
      break;
    }
    Panel worst = heap.top();
    heap.pop();
    const double m = 0.5 * (worst.a + worst.b);
    if (!(m > worst.a && m < worst.b)) {
      // Panel cannot be split further in floating point.
      total.converged = false;
      heap.push(worst);
      break;
    }
    Result left = gk15(f, worst.a, m);
    Result right = gk15(f, m, worst.b);
    total.value += left.value + right.value - worst.r.value;
    total.error += left.error + right.error - worst.r.error;
    heap.push({worst.a, m, left});
    heap.push({m, worst.b, right});
    ++panels;
  }
  // Re-sum to shed the drift of incremental updates.
  double v = 0.0, e = 0.0;
  while (!heap.empty()) {
    v += heap.top().r.value;
    e += heap.top().r.error;
    heap.pop();
  }
  total.value = v;
  total.error = e;
  total.panels = panels;
  if (!std::isfinite(v)) total.converged = false;
  return total;
}

Result adaptive_panels(const Integrand& f, std::span<const double> breaks, double rel_tol,
                       double abs_tol, int max_subdivisions) {
  Result total;
  if (breaks.size() < 2) return total;
  const double share = abs_tol / static_cast<double>(breaks.size() - 1);
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    if (breaks[i + 1] <= breaks[i]) continue;
    total += adaptive(f, breaks[i], breaks[i + 1], rel_tol, share, max_subdivisions);
  }
  return total;
}

GaussRule gauss_legendre(int order) {
  GaussRule rule;
  rule.nodes.resize(order);
  rule.weights.resize(order);
  for (int i = 0; i < (order + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (order + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= order; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      if (order == 1) p0 = 1.0;
      dp = order * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    rule.nodes[i] = -x;
    rule.nodes[order - 1 - i] = x;
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.weights[i] = w;
    rule.weights[order - 1 - i] = w;
  }
  return rule;
}

}  // namespace fraclap::quad
