#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace fraclap {

/// Input outside the mathematical domain of a formula (e.g. s not in (0,1)).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Inconsistent or unusable configuration (wrong branch, empty region, ...).
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Evaluation point too close to a point where the integrand is not C^2.
class EvaluationPointError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Function grows too fast at infinity for the operator to be defined.
class DivergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Sign of sigma* = -n + 2s, which selects the fundamental-solution branch.
enum class Branch { PowerNeg, Log, PowerPos };

/// Dimension/order pair together with the derived exponent and normalization.
class FracParams {
 public:
  FracParams(int n, double s);

  int n() const { return n_; }
  double s() const { return s_; }
  /// -n + 2s
  double sigma_star() const { return sigma_star_; }
  /// C_{n,s}
  double c_ns() const { return c_ns_; }
  Branch branch() const;

  /// Surface measure of the unit sphere S^{n-1} (2 points for n = 1).
  double sphere_area() const;
  /// Lebesgue measure of the unit ball.
  double ball_volume() const;

 private:
  int n_;
  double s_;
  double sigma_star_;
  double c_ns_;
};

/// 2^{2s} pi^{-n/2} s Gamma((n+2s)/2) / Gamma(1-s).
double normalization_constant(int n, double s);

/// Adaptive quadrature policy shared by all operator evaluations.
struct QuadSpec {
  double rel_tol = 1e-8;
  double abs_tol = 1e-12;
  int max_subdivisions = 4000;
  /// Minimal allowed distance between an evaluation radius and a kink.
  double near_radius = 1e-6;
  /// Lower bound for the radius where the far tail starts.
  double tail_radius = 50.0;
  /// Radii where the integrand is not smooth; always panel boundaries.
  std::vector<double> kink_radii;

  void validate() const;
  QuadSpec tightened(double factor) const;
};

/// Result of one operator evaluation.
struct OperatorValue {
  double value = 0.0;
  double error_estimate = 0.0;
  int panels_used = 0;
  bool converged = true;
};

std::string to_string(Branch b);

}  // namespace fraclap
