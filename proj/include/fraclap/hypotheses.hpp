#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "fraclap/params.hpp"

namespace fraclap {

/// f(t, x) = |x|^{-gamma} g(t), or a general f(t, |x|).
struct NonlinearitySpec {
  enum class Form { Separable, General };

  Form form = Form::Separable;
  double gamma = 0.0;
  std::function<double(double)> g;
  std::function<double(double, double)> f_general;
  double mu_lower = 1.0;
  double mu_upper = 1.0;
  double r0 = 2.0;
  std::string name;
  /// Known defects of the input (e.g. a jump), carried into reports.
  std::vector<std::string> warnings;

  double operator()(double t, double xnorm) const;
  /// gamma < 2s for separable specs.
  void validate(const FracParams& p) const;

  static NonlinearitySpec separable(double gamma, std::function<double(double)> g, std::string name);
  static NonlinearitySpec general(std::function<double(double, double)> f, std::string name);
  static NonlinearitySpec power(double coefficient, double exponent, double gamma = 0.0);
  /// 5/2 t^{n/(n-2s)} for t <= 1, cos(2 pi t) + 1 + 1/t beyond.
  static NonlinearitySpec cf1b(const FracParams& p);
  /// Built-in g by name: power, exponential, cf1b, piecewise.
  static NonlinearitySpec from_json(const nlohmann::json& j, const FracParams& p);
};

/// 1 + (2s - gamma) / (-sigma*).
double alpha_tilde_star(const FracParams& p, double gamma);

enum class Trend { Increasing, Decreasing, Plateau, Irregular };
enum class HypVerdict { Holds, Fails, Inconclusive };
std::string to_string(Trend t);
std::string to_string(HypVerdict v);

/// Trend of the last five samples; +inf entries compare as usual.
Trend classify_trend(const std::vector<double>& v, double plateau_tol = 1e-3);

enum class PsiVariant { F3, F4 };

struct PsiValue {
  double value = 0.0;
  bool empty = false;      // empty t-range, value = +inf
  bool violation = false;  // f <= 0 at a sample
  double argmin = 0.0;
};

/// |x|^{2s} inf f(t,x)/t over [mu_lower, k PhiTilde] (F3) or [k Phi, mu_upper] (F4).
PsiValue psi_k(double xnorm, double k, const NonlinearitySpec& f, const FracParams& p,
               PsiVariant variant);

struct HEstimate {
  double k = 0.0;
  std::vector<double> radii;
  std::vector<double> psi;
  double value = 0.0;  // +inf when increasing without bound or every range is empty
  Trend trend = Trend::Irregular;
  bool all_empty = false;
  bool positive = false;  // positivity established from the samples
  bool violation = false;
};

/// liminf over |x| = 10^j r0, j = 1..6, extended (j <= 40) until five ranges are nonempty.
HEstimate h_of_k(double k, const NonlinearitySpec& f, const FracParams& p, PsiVariant variant);

struct HypothesisReport {
  std::string condition;
  std::string parameter;  // name of the sample parameter
  std::vector<double> samples;
  std::vector<double> quantity;
  Trend trend = Trend::Irregular;
  HypVerdict verdict = HypVerdict::Inconclusive;
  std::optional<double> plateau;
  /// Slope of log h against log k over finite values.
  std::optional<double> k_exponent;
  std::vector<std::string> notes;
};

HypothesisReport check_f2(const NonlinearitySpec& f, const FracParams& p);
HypothesisReport check_f2prime(const NonlinearitySpec& f, const FracParams& p);
HypothesisReport check_f3prime(const NonlinearitySpec& f, const FracParams& p);
HypothesisReport check_f4prime(const NonlinearitySpec& f, const FracParams& p);
/// Dispatch on "f2", "f2prime", "f3prime", "f4prime".
HypothesisReport check_condition(const std::string& condition, const NonlinearitySpec& f,
                                 const FracParams& p);

nlohmann::json to_json(const HypothesisReport& r);

}  // namespace fraclap
