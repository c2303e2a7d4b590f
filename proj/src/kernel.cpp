#include "fraclap/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace fraclap {

namespace {

constexpr int kSeriesTerms = 30;
constexpr double kSeriesRatio = 0.25;

// Gegenbauer C_m^lambda(t) for m = 0..mmax.
std::vector<double> gegenbauer(int mmax, double lambda, double t) {
  std::vector<double> c(mmax + 1);
  c[0] = 1.0;
  if (mmax >= 1) c[1] = 2.0 * lambda * t;
  for (int m = 2; m <= mmax; ++m)
    c[m] = (2.0 * t * (m + lambda - 1.0) * c[m - 1] - (m + 2.0 * lambda - 2.0) * c[m - 2]) / m;
  return c;
}

// (1 - x)^{-a} - (1 + x)^{-a} for 0 <= x < 1 without cancellation at small x.
double odd_difference(double a, double x) {
  return std::expm1(-a * std::log1p(-x)) - std::expm1(-a * std::log1p(x));
}

}  // namespace

RadialKernel::RadialKernel(const FracParams& p)
    : n_(p.n()), s_(p.s()), a_(1.0 + 2.0 * p.s()), gl_(quad::gauss_legendre(16)) {
  const double lambda = 0.5 * (n_ + 2.0 * s_);
  const int mmax = 2 * (kSeriesTerms - 1);
  coefs_.assign(kSeriesTerms, 0.0);
  if (n_ == 1) {
    const auto c = gegenbauer(mmax, lambda, 1.0);
    for (int k = 0; k < kSeriesTerms; ++k) coefs_[k] = 2.0 * c[2 * k];
  } else if (n_ == 2) {
    constexpr int N = 128;
    for (int j = 0; j < N; ++j) {
      const auto c = gegenbauer(mmax, lambda, std::cos(2.0 * std::numbers::pi * j / N));
      for (int k = 0; k < kSeriesTerms; ++k) coefs_[k] += c[2 * k] * 2.0 * std::numbers::pi / N;
    }
  } else {
    const auto rule = quad::gauss_legendre(64);
    for (std::size_t j = 0; j < rule.nodes.size(); ++j) {
      const auto c = gegenbauer(mmax, lambda, rule.nodes[j]);
      for (int k = 0; k < kSeriesTerms; ++k)
        coefs_[k] += c[2 * k] * rule.weights[j] * 2.0 * std::numbers::pi;
    }
  }
}

double RadialKernel::series_eval(double r, double rho) const {
  // Sphere average is symmetric in (r, rho); expand in the smaller ratio.
  const double big = std::max(r, rho);
  const double z2 = std::pow(std::min(r, rho) / big, 2);
  double sum = 0.0, zk = 1.0;
  for (double c : coefs_) {
    sum += c * zk;
    zk *= z2;
    if (zk < 1e-18) break;
  }
  // sum * big^{-n-2s} is the sphere integral; J carries rho^{n-1}.
  return sum * std::pow(big, -n_ - 2.0 * s_) * std::pow(rho, n_ - 1);
}

double RadialKernel::polar_integral(double r, double rho) const {
  // 4 \int_0^{pi/2} (d^2 + 4 r rho sin^2 phi)^{-(1+s)} d phi, graded at phi = 0.
  const double d2 = (r - rho) * (r - rho);
  const double q = 4.0 * r * rho;
  const double e = 1.0 + s_;
  auto f = [&](double phi) {
    const double sn = std::sin(phi);
    return std::pow(d2 + q * sn * sn, -e);
  };
  const double half_pi = 0.5 * std::numbers::pi;
  double eps = std::abs(r - rho) / (2.0 * std::sqrt(r * rho));
  eps = std::min(eps, half_pi / 4.0);
  if (!(eps > 1e-300)) return std::numeric_limits<double>::infinity();
  double lo = 0.0, hi = eps, total = 0.0;
  while (lo < half_pi) {
    hi = std::min(hi, half_pi);
    const double c = 0.5 * (lo + hi), h = 0.5 * (hi - lo);
    for (std::size_t j = 0; j < gl_.nodes.size(); ++j) total += gl_.weights[j] * h * f(c + h * gl_.nodes[j]);
    lo = hi;
    hi = 2.0 * hi;
  }
  return 4.0 * total;
}

double RadialKernel::operator()(double r, double rho) const {
  const double ratio = std::min(r, rho) / std::max(r, rho);
  if (n_ == 1) return std::pow(std::abs(r - rho), -a_) + std::pow(r + rho, -a_);
  if (n_ == 3) {
    const double big = std::max(r, rho);
    const double diff = std::pow(big, -a_) * odd_difference(a_, ratio);
    return 2.0 * std::numbers::pi * rho / (a_ * r) * diff;
  }
  if (ratio <= kSeriesRatio) return series_eval(r, rho);
  return rho * polar_integral(r, rho);
}

quad::Result RadialKernel::tail(double r, double T, const Term& t) const {
  quad::Result res;
  double r2k = 1.0, last = 0.0;
  const double z2 = (r / T) * (r / T);
  for (std::size_t k = 0; k < coefs_.size(); ++k) {
    last = coefs_[k] * r2k * t.tail_moment(T, 2.0 * s_ + 2.0 * k);
    res.value += last;
    r2k *= r * r;
    if (std::abs(last) <= 1e-17 * std::abs(res.value) && std::pow(z2, k) < 1e-18) break;
  }
  res.error = 2.0 * std::abs(last) + 1e-15 * std::abs(res.value);
  return res;
}

}  // namespace fraclap
