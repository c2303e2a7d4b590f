#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fraclap/kernel.hpp"
#include "fraclap/params.hpp"
#include "fraclap/profile.hpp"

namespace fraclap {

/// Radial function U(|x|) for the operator: a callable plus the radii where it
/// fails to be smooth and, if known, a closed form valid beyond the last kink.
struct RadialFunction {
  std::function<double(double)> u;
  std::vector<double> kinks;
  std::optional<Piece> outer;
  std::string name;

  double operator()(double r) const { return u(r); }

  static RadialFunction from_profile(const RadialProfile& p);
  /// Callable without closed-form tail; the far field is integrated numerically.
  static RadialFunction generic(std::function<double(double)> u, std::vector<double> kinks = {},
                                std::string name = {});
};

/// Generic function on R^n, evaluated at a point given by its n coordinates.
using Field = std::function<double(std::span<const double>)>;

/// u(|x|) as a field on R^n.
Field radial_field(const RadialFunction& f);

enum class Exec { Serial, Parallel };

/// Pointwise evaluator for radial profiles. Holds the angular kernel so that
/// batches over many radii share its set-up cost.
class RadialEvaluator {
 public:
  RadialEvaluator(const FracParams& p, QuadSpec q = {});

  OperatorValue operator()(const RadialFunction& f, double r) const;
  OperatorValue operator()(const RadialProfile& p, double r) const;

  /// Same values as repeated calls; Parallel splits the radii over OpenMP threads.
  std::vector<OperatorValue> batch(const RadialFunction& f, std::span<const double> radii,
                                   Exec exec = Exec::Parallel) const;

  const FracParams& params() const { return params_; }
  const QuadSpec& quad() const { return quad_; }
  const RadialKernel& kernel() const { return kernel_; }

 private:
  FracParams params_;
  QuadSpec quad_;
  RadialKernel kernel_;
};

OperatorValue eval_radial(const RadialProfile& profile, double r, const FracParams& p,
                          const QuadSpec& q = {});
OperatorValue eval_radial(const RadialFunction& f, double r, const FracParams& p,
                          const QuadSpec& q = {});

/// Second-difference form C/2 \int (2u(x) - u(x+y) - u(x-y)) |y|^{-n-2s} dy.
/// Kinks are read from q.kink_radii as radii |x| (so +-k on the line).
OperatorValue eval_pointwise(const Field& u, std::span<const double> x, const FracParams& p,
                             const QuadSpec& q = {});

/// n = 1 shortcut; kinks are arbitrary points of the line.
OperatorValue eval_pointwise_1d(const std::function<double(double)>& u, double x,
                                const FracParams& p, const QuadSpec& q = {},
                                std::span<const double> kinks = {});

std::vector<OperatorValue> eval_pointwise_batch(const Field& u,
                                                const std::vector<std::vector<double>>& points,
                                                const FracParams& p, const QuadSpec& q = {},
                                                Exec exec = Exec::Parallel);

struct ScalingCheck {
  OperatorValue lhs;  // operator of u(lambda .) at x
  OperatorValue rhs;  // lambda^{2s} times the operator of u at lambda x
  double deviation = 0.0;
};

/// Compares (-Delta)^s [u(lambda .)](x) with lambda^{2s} ((-Delta)^s u)(lambda x).
ScalingCheck scaling_identity_check(const Field& u, double lambda, std::span<const double> x,
                                    const FracParams& p, const QuadSpec& q = {});

}  // namespace fraclap
