#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "fraclap/frackernel.hpp"
#include "fraclap/fundamentals.hpp"

namespace fraclap {

enum class Verdict { Pass, Fail, Inconclusive };
std::string to_string(Verdict v);
/// Worst of two verdicts (FAIL beats INCONCLUSIVE beats PASS).
Verdict combine(Verdict a, Verdict b);

enum class ChainId {
  CA3D, CA3PR, LVC, CA1_00, CAR3PP, CAR3PR, NBBN,
  CA1F, CA1AA, VASK, CA3Q, CA3P, NITU, CA10, CA10L, RI
};

/// What a chain asserts about the sampled operator values.
enum class Relation {
  SignNegative,   // value < 0
  UpperBound,     // value <= C * rate with C > 0
  NegativeBound   // value <= -c * rate with c > 0
};

/// Positive rate profiles appearing on the right of the estimates.
enum class Rate {
  None,
  InvR,            // 1 / r
  LogOverR,        // log(2r) / r
  RMinus2s,        // r^{-2s}
  InvDistOne,      // (|x| - 1)^{-n-2s}
  InvSumOne,       // (|x| + 1)^{-n-2s}
  R2sOverDist,     // r^{2s} (|x| - r)^{-n-2s}
  MuR2sOverSum     // mu r^{2s} (|x| + 2r)^{-n-2s}
};

struct ChainInfo {
  ChainId id;
  const char* name;
  BarrierId barrier;
  Relation relation;
  Rate rate;
  const char* claim;
};

const ChainInfo& chain_info(ChainId id);
std::string to_string(ChainId id);
std::optional<ChainId> chain_from_string(std::string_view name);
const std::vector<ChainId>& all_chains();
std::string to_string(Rate r);

/// Open radial interval on which a chain is claimed.
struct Region {
  double lo = 0.0;
  double hi = 0.0;
};
Region chain_region(ChainId id, const BarrierConstants& c, const FracParams& p);
double rate_value(Rate rate, double x, const BarrierConstants& c, const FracParams& p);

struct Sampling {
  int points = 200;
};
/// Log-spaced radii strictly inside the region (cell midpoints in log scale).
std::vector<double> sample_radii(Region region, int points);

struct SamplePoint {
  double x = 0.0;
  double value = 0.0;
  double err = 0.0;
  bool converged = true;
};

struct ConstantFit {
  double constant = 0.0;        // at the requested r
  double constant_outer = 0.0;  // at 10 r
  double stability = 0.0;       // constant_outer / constant
};

struct VerificationReport {
  ChainId chain = ChainId::LVC;
  int n = 1;
  double s = 0.5;
  BarrierConstants constants;
  std::vector<SamplePoint> samples;
  /// Smallest slack of the asserted relation after subtracting 2 * err.
  double worst_margin = 0.0;
  std::optional<ConstantFit> fit;
  /// Explicit constant from the cited display, when it has one.
  std::optional<double> cited_constant;
  bool cited_constant_ok = true;
  Verdict verdict = Verdict::Inconclusive;
  std::string note;
};

VerificationReport verify_chain(ChainId id, const FracParams& p, const BarrierConstants& c,
                                const Sampling& sampling = {}, const QuadSpec& q = {},
                                Exec exec = Exec::Parallel);

struct ConstantChoice {
  BarrierConstants constants;
  Verdict status = Verdict::Pass;
  /// Largest observed (base value) / (-unit correction value).
  double worst_ratio = 0.0;
  std::string note;
};

/// Picks the free constant of a sign chain from quadrature estimates of the
/// base and correction terms at r and 10 r, with a factor-2 margin.
ConstantChoice choose_constants(ChainId id, const FracParams& p, double r0, double r = 0.0,
                                const QuadSpec& q = {}, const Sampling& sampling = {},
                                Exec exec = Exec::Parallel);

struct RateFit {
  double constant = 0.0;  // exp(intercept) of the log-log fit
  double slope = 0.0;
  double residual = 0.0;  // rms residual in log coordinates
  /// |value| / rate(r): geometric mean and max/min spread, when a rate is given.
  double rate_constant = 0.0;
  double rate_spread = 0.0;
};

/// Least-squares fit of log|value| against log r.
RateFit fit_rate(std::span<const double> r, std::span<const double> values, Rate rate = Rate::None,
                 double s = 0.5);

struct RateStudy {
  ChainId chain;
  std::vector<double> radii;
  std::vector<double> maxima;
  std::vector<double> errors;
  RateFit fit;
};

/// Per-r maximum over the chain region for each outer radius.
RateStudy rate_study(ChainId id, const FracParams& p, const BarrierConstants& base,
                     std::span<const double> radii, const Sampling& sampling = {},
                     const QuadSpec& q = {}, Exec exec = Exec::Parallel);

nlohmann::json to_json(const VerificationReport& r);
nlohmann::json to_json(const RateStudy& r);
nlohmann::json to_json(const BarrierConstants& c);

}  // namespace fraclap
