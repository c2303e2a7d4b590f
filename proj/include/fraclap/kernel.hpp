#pragma once

#include <vector>

#include "fraclap/params.hpp"
#include "fraclap/profile.hpp"
#include "fraclap/quadrature.hpp"

namespace fraclap {

/// Radial reduction of the kernel |x - y|^{-n-2s}.
///
/// For |x| = r, J(r, rho) = rho^{n-1} \int_{S^{n-1}} |r e_1 - rho w|^{-n-2s} dw, so
/// that the operator on a radial U is C_{n,s} \int_0^inf (U(r) - U(rho)) J dro.
/// n = 1 and n = 3 use closed forms; n = 2 integrates the polar angle on a
/// grid graded towards the near-singular direction.
class RadialKernel {
 public:
  explicit RadialKernel(const FracParams& p);

  double operator()(double r, double rho) const;

  /// Coefficients a_k with J(r, rho) = rho^{-1-2s} sum_k a_k (r/rho)^{2k} for rho > r.
  const std::vector<double>& series() const { return coefs_; }

  /// \int_T^inf J(r, rho) t(rho) d rho for T >= 4r, with truncation error bound.
  quad::Result tail(double r, double T, const Term& t) const;

 private:
  double series_eval(double r, double rho) const;
  double polar_integral(double r, double rho) const;

  int n_;
  double s_;
  double a_;  // 1 + 2s
  std::vector<double> coefs_;
  quad::GaussRule gl_;
};

}  // namespace fraclap
