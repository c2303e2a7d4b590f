#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "fraclap/frackernel.hpp"
#include "fraclap/estimates.hpp"
#include "fraclap/hypotheses.hpp"

namespace fraclap {

/// Points of the closed annulus r <= |x| <= 2r.
struct AnnulusSampler {
  enum class Mode { Radial, Generic };
  int points = 400;
  Mode mode = Mode::Radial;
};

struct AnnulusInf {
  double value = 0.0;
  double argmin = 0.0;  // radius of the minimizer
};

/// Sampled minimum with one refinement pass next to the minimizer.
AnnulusInf annulus_inf(const RadialFunction& u, double r, const AnnulusSampler& s = {});
/// Generic mode: u on R^n sampled at radial shells times directions.
AnnulusInf annulus_inf(const Field& u, int n, double r, const AnnulusSampler& s = {});

enum class GrowthCase { SupHalf, SupGtHalf, Sub };
std::string to_string(GrowthCase c);
/// Case implied by the branch of sigma*.
GrowthCase growth_case(const FracParams& p);

struct GrowthReport {
  GrowthCase growth_case = GrowthCase::Sub;
  std::vector<double> radii;
  std::vector<double> m;
  double lower_constant = 0.0;   // min m / lower envelope
  double upper_constant = 0.0;   // max m / upper envelope
  double lower_slope = 0.0;      // log-slope of m / lower envelope
  double upper_slope = 0.0;      // log-slope of m / upper envelope
  Verdict verdict = Verdict::Inconclusive;
};

/// 8 log-spaced radii per decade over [10 r0, 10^4 r0].
std::vector<double> default_r_grid(double r0);

GrowthReport verify_growth_bounds(const RadialFunction& u, GrowthCase c, std::span<const double> r_grid,
                                  const FracParams& p);

enum class MemberVerdict { Supersolution, FailsAt, Inconclusive };
std::string to_string(MemberVerdict v);

struct ResidualReport {
  std::vector<double> radii;
  std::vector<double> residual;
  std::vector<double> error;
  double min_residual = 0.0;
  double min_error = 0.0;
  double witness = 0.0;
  int inconclusive_samples = 0;
  MemberVerdict verdict = MemberVerdict::Inconclusive;
};

/// R(x) = (-Delta)^s u(x) - f(u(x), x) on log-spaced radii in [lo, hi].
ResidualReport supersolution_residual(const RadialFunction& u, const NonlinearitySpec& f,
                                      const FracParams& p, double lo, double hi, int samples = 100,
                                      const QuadSpec& q = {}, Exec exec = Exec::Parallel);

struct CandidateFamily {
  std::vector<double> c;
  std::vector<double> beta;
  /// c (1 + |x|^2)^{-beta/2}
  static RadialFunction member(double c, double beta);
  /// 20 log steps of c in [0.1, 10] times 20 steps of beta in [0.1, 6].
  static CandidateFamily standard();
  std::size_t size() const { return c.size() * beta.size(); }
};

/// lambda(tau) = (-Delta)^s |x|^{-tau} at |x| = 1, by quadrature.
OperatorValue lambda_tau(double tau, const FracParams& p, const QuadSpec& q = {});
/// Closed form 2^{2s} Gamma((n - tau)/2) Gamma((tau + 2s)/2) / (Gamma(tau/2) Gamma((n - tau - 2s)/2)).
double lambda_tau_closed(double tau, const FracParams& p);

struct ControlMember {
  double p = 0.0;
  double tau = 0.0;
  double lambda = 0.0;
  double eps = 0.0;  // eps^{p-1} = lambda / 2
  RadialFunction u;
};
/// eps |x|^{-tau}, tau = 2s/(p-1), for f(t) = t^p.
ControlMember supercritical_control(double p_exp, const FracParams& p, const QuadSpec& q = {});

struct ScanEntry {
  std::string label;
  double c = 0.0;
  double beta = 0.0;
  bool control = false;
  MemberVerdict verdict = MemberVerdict::Inconclusive;
  double min_residual = 0.0;
  double error = 0.0;
  double witness = 0.0;
};

struct ScanReport {
  std::vector<ScanEntry> entries;
  int certified = 0;
  int failing = 0;
  int inconclusive = 0;
  double worst_residual = 0.0;
  bool exploratory = false;  // f did not pass its hypothesis check
  std::string hypothesis;
};

ScanReport nonexistence_scan(const CandidateFamily& family, const NonlinearitySpec& f,
                             const FracParams& p, double lo, double hi,
                             const std::vector<ControlMember>& controls = {}, int samples = 100,
                             const QuadSpec& q = {});

/// Certified members whose growth bounds fail; must be empty when f passes (f2) with n > 2s.
std::vector<std::string> cross_check(const ScanReport& scan, const FracParams& p,
                                     std::span<const double> r_grid);

struct TraceRow {
  double r = 0.0;
  double m = 0.0;
  double lower = 0.0;     // right side of the lower bound for m(r)
  double envelope = 0.0;  // upper envelope for m(r)
  std::optional<double> rho;
  std::optional<double> eta;
};

struct TraceReport {
  std::vector<TraceRow> rows;
  double c_bar = 0.0;  // from the kslap battery
  double C_bar = 0.0;  // from the measure lemma with nu = 1/2
  double C_M = 0.0;
  std::optional<double> contradiction_radius;
};

/// mu for the rho(r) barrier; 1 by default.
TraceReport proof_quantity_trace(const RadialFunction& u, const NonlinearitySpec& f,
                                 const FracParams& p, std::span<const double> r_grid,
                                 double mu = 1.0);

nlohmann::json to_json(const GrowthReport& r);
nlohmann::json to_json(const ResidualReport& r);
nlohmann::json to_json(const ScanReport& r);
nlohmann::json to_json(const TraceReport& r);
void write_residual_csv(std::ostream& out, const ResidualReport& r);

}  // namespace fraclap
