#include "fraclap/liouville.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <ostream>

#include "fraclap/fundamentals.hpp"
#include "fraclap/maxprinciple.hpp"
#include "fraclap/report.hpp"

namespace fraclap {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<double> lin(double a, double b, int n) {
  std::vector<double> v(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) v[i] = a + (b - a) * i / (n - 1);
  return v;
}

std::vector<double> logspace(double a, double b, int n) {
  std::vector<double> v(static_cast<std::size_t>(n));
  if (n == 1) return {a};
  for (int i = 0; i < n; ++i) v[i] = a * std::pow(b / a, static_cast<double>(i) / (n - 1));
  v.back() = b;
  return v;
}

double slope(std::span<const double> x, std::span<const double> y) {
  const double n = x.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

std::vector<std::array<double, 3>> directions(int n) {
  std::vector<std::array<double, 3>> d;
  if (n == 1) return {{1, 0, 0}, {-1, 0, 0}};
  if (n == 2) {
    for (int i = 0; i < 20; ++i) {
      const double a = 2.0 * std::numbers::pi * i / 20;
      d.push_back({std::cos(a), std::sin(a), 0});
    }
    return d;
  }
  // Fibonacci sphere
  const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
  for (int i = 0; i < 20; ++i) {
    const double z = 1.0 - (2.0 * i + 1.0) / 20.0, rad = std::sqrt(1.0 - z * z);
    d.push_back({rad * std::cos(golden * i), rad * std::sin(golden * i), z});
  }
  return d;
}

}  // namespace

AnnulusInf annulus_inf(const RadialFunction& u, double r, const AnnulusSampler& s) {
  if (!(r > 0.0)) throw ConfigError("annulus radius must be positive");
  const int pts = std::max(s.points, 3);
  const auto grid = lin(r, 2.0 * r, pts);
  AnnulusInf best{kInf, r};
  std::size_t at = 0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double v = u(grid[i]);
    if (v < best.value) best = {v, grid[i]}, at = i;
  }
  const double a = grid[at == 0 ? 0 : at - 1], b = grid[std::min(at + 1, grid.size() - 1)];
  for (double x : lin(a, b, pts)) {
    const double v = u(x);
    if (v < best.value) best = {v, x};
  }
  return best;
}

AnnulusInf annulus_inf(const Field& u, int n, double r, const AnnulusSampler& s) {
  if (n < 1 || n > 3) throw ConfigError("dimension must be 1, 2 or 3");
  const auto dirs = directions(n);
  const int shells = std::max(3, s.points / static_cast<int>(dirs.size()));
  AnnulusInf best{kInf, r};
  std::array<double, 3> dir = dirs.front();
  auto eval = [&](double rho, const std::array<double, 3>& d) {
    const std::array<double, 3> x{rho * d[0], rho * d[1], rho * d[2]};
    return u(std::span<const double>(x.data(), static_cast<std::size_t>(n)));
  };
  const auto grid = lin(r, 2.0 * r, shells);
  for (double rho : grid)
    for (const auto& d : dirs) {
      const double v = eval(rho, d);
      if (v < best.value) best = {v, rho}, dir = d;
    }
  const double h = r / (shells - 1);
  for (double rho : lin(std::max(r, best.argmin - h), std::min(2 * r, best.argmin + h), 50)) {
    const double v = eval(rho, dir);
    if (v < best.value) best = {v, rho};
  }
  return best;
}

std::string to_string(GrowthCase c) {
  switch (c) {
    case GrowthCase::SupHalf: return "SUP_HALF";
    case GrowthCase::SupGtHalf: return "SUP_GT_HALF";
    case GrowthCase::Sub: return "SUB";
  }
  return "?";
}

GrowthCase growth_case(const FracParams& p) {
  switch (p.branch()) {
    case Branch::PowerNeg: return GrowthCase::Sub;
    case Branch::Log: return GrowthCase::SupHalf;
    case Branch::PowerPos: return GrowthCase::SupGtHalf;
  }
  return GrowthCase::Sub;
}

std::vector<double> default_r_grid(double r0) { return logspace(10.0 * r0, 1e4 * r0, 25); }

GrowthReport verify_growth_bounds(const RadialFunction& u, GrowthCase c, std::span<const double> r_grid,
                                  const FracParams& p) {
  if (r_grid.size() < 3) throw ConfigError("growth check needs at least three radii");
  const auto [lo_it, hi_it] = std::minmax_element(r_grid.begin(), r_grid.end());
  if (*hi_it < 100.0 * *lo_it) throw ConfigError("radius grid must span two decades");
  const double sg = p.sigma_star();
  auto lower_env = [&](double r) { return c == GrowthCase::Sub ? std::pow(r, sg) : 1.0; };
  auto upper_env = [&](double r) {
    switch (c) {
      case GrowthCase::SupGtHalf: return std::pow(r, sg);
      case GrowthCase::SupHalf: return std::log(r);
      case GrowthCase::Sub: return 1.0;
    }
    return 1.0;
  };
  GrowthReport g;
  g.growth_case = c;
  std::vector<double> lr, ll, lu;
  g.lower_constant = kInf;
  for (double r : r_grid) {
    const double m = annulus_inf(u, r).value;
    if (!(m > 0.0)) throw ConfigError("m(r) <= 0 at r = " + std::to_string(r));
    g.radii.push_back(r);
    g.m.push_back(m);
    g.lower_constant = std::min(g.lower_constant, m / lower_env(r));
    g.upper_constant = std::max(g.upper_constant, m / upper_env(r));
    lr.push_back(std::log(r));
    ll.push_back(std::log(m / lower_env(r)));
    lu.push_back(std::log(m / upper_env(r)));
  }
  g.lower_slope = slope(lr, ll);
  g.upper_slope = slope(lr, lu);
  // constants must look r-independent: no decay below the lower envelope, no escape above the upper
  const bool ok = std::isfinite(g.lower_constant) && g.lower_constant > 0.0 &&
                  std::isfinite(g.upper_constant) && g.lower_slope >= -0.05 && g.upper_slope <= 0.05;
  g.verdict = ok ? Verdict::Pass : Verdict::Fail;
  return g;
}

std::string to_string(MemberVerdict v) {
  switch (v) {
    case MemberVerdict::Supersolution: return "SUPERSOLUTION_ON_SAMPLES";
    case MemberVerdict::FailsAt: return "FAILS_AT";
    case MemberVerdict::Inconclusive: return "INCONCLUSIVE";
  }
  return "?";
}

ResidualReport supersolution_residual(const RadialFunction& u, const NonlinearitySpec& f,
                                      const FracParams& p, double lo, double hi, int samples,
                                      const QuadSpec& q, Exec exec) {
  if (!(lo > 0.0 && hi > lo) || samples < 2) throw ConfigError("bad residual region");
  ResidualReport r;
  r.radii = logspace(lo, hi, samples);
  const RadialEvaluator ev(p, q);
  const auto ops = ev.batch(u, r.radii, exec);
  double worst_fail = kInf, worst = kInf;
  for (std::size_t i = 0; i < r.radii.size(); ++i) {
    const double x = r.radii[i], ux = u(x);
    if (!(ux > 0.0)) throw ConfigError("candidate is not positive at r = " + std::to_string(x));
    const double R = ops[i].value - f(ux, x);
    const double e = ops[i].error_estimate;
    r.residual.push_back(R);
    r.error.push_back(e);
    const bool unsure = !ops[i].converged || std::abs(R) <= 2.0 * e;
    if (unsure) ++r.inconclusive_samples;
    if (ops[i].converged && R + 2.0 * e < 0.0 && R + 2.0 * e < worst_fail) {
      worst_fail = R + 2.0 * e;
      r.witness = x;
    }
    if (R - 2.0 * e < worst) {
      worst = R - 2.0 * e;
      r.min_residual = R;
      r.min_error = e;
      if (!std::isfinite(worst_fail)) r.witness = x;
    }
  }
  if (std::isfinite(worst_fail)) {
    r.verdict = MemberVerdict::FailsAt;
    // report the witness residual
    const auto it = std::find(r.radii.begin(), r.radii.end(), r.witness);
    const auto k = static_cast<std::size_t>(it - r.radii.begin());
    r.min_residual = r.residual[k];
    r.min_error = r.error[k];
  } else if (r.inconclusive_samples > 0.05 * samples) {
    r.verdict = MemberVerdict::Inconclusive;
  } else if (worst >= 0.0) {
    r.verdict = MemberVerdict::Supersolution;
  } else {
    r.verdict = MemberVerdict::Inconclusive;
  }
  return r;
}

RadialFunction CandidateFamily::member(double c, double beta) {
  return RadialFunction::generic([c, beta](double r) { return c * std::pow(1.0 + r * r, -0.5 * beta); },
                                 {}, "c=" + std::to_string(c) + ",beta=" + std::to_string(beta));
}

CandidateFamily CandidateFamily::standard() { return {logspace(0.1, 10.0, 20), lin(0.1, 6.0, 20)}; }

OperatorValue lambda_tau(double tau, const FracParams& p, const QuadSpec& q) {
  if (!(tau > 0.0 && tau < p.n())) throw DomainError("tau must lie in (0, n)");
  const auto prof = RadialProfile::single(Piece{{Term::power(1.0, -tau)}}, "power");
  return eval_radial(prof, 1.0, p, q);
}

double lambda_tau_closed(double tau, const FracParams& p) {
  const double n = p.n(), s = p.s();
  return std::pow(2.0, 2.0 * s) * std::tgamma((n - tau) / 2.0) * std::tgamma((tau + 2.0 * s) / 2.0) /
         (std::tgamma(tau / 2.0) * std::tgamma((n - tau - 2.0 * s) / 2.0));
}

ControlMember supercritical_control(double p_exp, const FracParams& p, const QuadSpec& q) {
  if (!(p_exp > 1.0)) throw ConfigError("control exponent must exceed 1");
  ControlMember c;
  c.p = p_exp;
  c.tau = 2.0 * p.s() / (p_exp - 1.0);
  if (!(c.tau < p.n() - 2.0 * p.s()))
    throw ConfigError("control needs tau < n - 2s (p above n/(n-2s))");
  c.lambda = lambda_tau(c.tau, p, q).value;
  if (!(c.lambda > 0.0)) throw ConfigError("lambda(tau) is not positive");
  c.eps = std::pow(c.lambda / 2.0, 1.0 / (p_exp - 1.0));
  c.u = RadialFunction::from_profile(
      RadialProfile::single(Piece{{Term::power(c.eps, -c.tau)}}, "control"));
  c.u.name = "eps|x|^-tau";
  return c;
}

ScanReport nonexistence_scan(const CandidateFamily& family, const NonlinearitySpec& f,
                             const FracParams& p, double lo, double hi,
                             const std::vector<ControlMember>& controls, int samples,
                             const QuadSpec& q) {
  if (family.size() == 0 && controls.empty()) throw ConfigError("empty candidate family");
  ScanReport rep;
  if (p.n() > 2.0 * p.s()) {
    const auto h = check_f2(f, p);
    rep.hypothesis = "f2 " + to_string(h.verdict);
    rep.exploratory = h.verdict != HypVerdict::Holds;
  } else {
    const auto h = check_f3prime(f, p);
    rep.hypothesis = "f3prime " + to_string(h.verdict);
    rep.exploratory = h.verdict != HypVerdict::Holds;
  }
  const long nf = static_cast<long>(family.size());
  const long total = nf + static_cast<long>(controls.size());
  rep.entries.resize(static_cast<std::size_t>(total));
#pragma omp parallel for schedule(dynamic)
  for (long i = 0; i < total; ++i) {
    ScanEntry e;
    RadialFunction u;
    if (i < nf) {
      e.c = family.c[i / family.beta.size()];
      e.beta = family.beta[i % family.beta.size()];
      u = CandidateFamily::member(e.c, e.beta);
    } else {
      const auto& c = controls[i - nf];
      e.control = true;
      e.c = c.eps;
      e.beta = c.tau;
      u = c.u;
    }
    e.label = u.name;
    const auto r = supersolution_residual(u, f, p, lo, hi, samples, q, Exec::Serial);
    e.verdict = r.verdict;
    e.min_residual = r.min_residual;
    e.error = r.min_error;
    e.witness = r.witness;
    rep.entries[i] = e;
  }
  rep.worst_residual = kInf;
  for (const auto& e : rep.entries) {
    switch (e.verdict) {
      case MemberVerdict::Supersolution: ++rep.certified; break;
      case MemberVerdict::FailsAt: ++rep.failing; break;
      case MemberVerdict::Inconclusive: ++rep.inconclusive; break;
    }
    rep.worst_residual = std::min(rep.worst_residual, e.min_residual);
  }
  return rep;
}

std::vector<std::string> cross_check(const ScanReport& scan, const FracParams& p,
                                     std::span<const double> r_grid) {
  std::vector<std::string> bad;
  if (scan.exploratory) return bad;
  for (const auto& e : scan.entries) {
    if (e.verdict != MemberVerdict::Supersolution) continue;
    const RadialFunction u = e.control
                                 ? RadialFunction::from_profile(RadialProfile::single(
                                       Piece{{Term::power(e.c, -e.beta)}}, "control"))
                                 : CandidateFamily::member(e.c, e.beta);
    if (verify_growth_bounds(u, growth_case(p), r_grid, p).verdict == Verdict::Fail)
      bad.push_back(e.label);
  }
  return bad;
}

TraceReport proof_quantity_trace(const RadialFunction& u, const NonlinearitySpec& f,
                                 const FracParams& p, std::span<const double> r_grid, double mu) {
  if (r_grid.empty()) throw ConfigError("empty radius grid");
  TraceReport t;
  const double s = p.s(), sg = p.sigma_star();
  // constants of the 1D lemmas at the same order s
  const double h = 1.0 / 64;
  t.c_bar = verify_kslap(kslap_battery(), h, s).c_bar;
  {
    DirichletSpec spec;
    spec.domain = kslap_domain();
    spec.s = s;
    spec.rhs = indicator(kslap_battery().front());
    const auto g = discretize(spec, h);
    const auto sol = solve_dirichlet(g);
    t.C_bar = verify_measure_lemma(g, sol, 0.5).c_bar;
  }
  const double annulus = (std::pow(2.0, p.n()) - 1.0) * p.ball_volume();
  for (double r : r_grid) {
    TraceRow row;
    row.r = r;
    row.m = annulus_inf(u, r).value;
    if (!(row.m > 0.0)) throw ConfigError("u must be positive on the sampled annuli");
    t.C_M = std::max(t.C_M, row.m);
    t.rows.push_back(row);
  }
  const RadialProfile phit = make_fundamental(p, SignVariant::PhiTilde);
  for (auto& row : t.rows) {
    const double r = row.r;
    double fmin = kInf;
    for (double x : {r, 1.5 * r, 2.0 * r})
      for (int i = 0; i < 50; ++i) {
        const double tt = row.m * std::pow(t.C_bar, i / 49.0);
        fmin = std::min(fmin, f(tt, x));
      }
    row.lower = 0.5 * t.c_bar * std::pow(r, 2.0 * s) * annulus * fmin;
    row.envelope = 2.0 / t.c_bar * t.C_M * std::pow(r, sg);
    if (sg < 0.0) {
      double rho = kInf;
      for (double x : lin(r, 2.0 * r, 200)) {
        const double w = std::pow(x, sg) * (x <= 1.5 * r ? 1.0 + mu : 1.0);
        rho = std::min(rho, u(x) / w);
      }
      row.rho = rho;
    }
    if (sg > 0.0 && r > 1.0) {
      double eta = kInf;
      for (double x : logspace(r, 100.0 * r, 200)) {
        const double d = phit(x) - 1.0;
        if (!(d > 0.0)) throw ConfigError("PhiTilde - 1 <= 0 in the sampled region");
        eta = std::min(eta, u(x) / d);
      }
      row.eta = eta;
    }
    if (!t.contradiction_radius && row.lower > row.envelope) t.contradiction_radius = r;
  }
  return t;
}

nlohmann::json to_json(const GrowthReport& r) {
  nlohmann::json j;
  j["case"] = to_string(r.growth_case);
  j["radii"] = r.radii;
  j["m"] = r.m;
  j["lower_constant"] = number(r.lower_constant);
  j["upper_constant"] = number(r.upper_constant);
  j["lower_slope"] = number(r.lower_slope);
  j["upper_slope"] = number(r.upper_slope);
  j["verdict"] = to_string(r.verdict);
  return j;
}

nlohmann::json to_json(const ResidualReport& r) {
  nlohmann::json j;
  j["radii"] = r.radii;
  j["residual"] = r.residual;
  j["error"] = r.error;
  j["min_residual"] = {{"value", number(r.min_residual)}, {"error", number(r.min_error)}};
  j["witness"] = r.witness;
  j["inconclusive_samples"] = r.inconclusive_samples;
  j["verdict"] = to_string(r.verdict);
  return j;
}

nlohmann::json to_json(const ScanReport& r) {
  nlohmann::json j;
  auto& e = j["entries"] = nlohmann::json::array();
  for (const auto& x : r.entries)
    e.push_back({{"label", x.label},
                 {"c", x.c},
                 {"beta", x.beta},
                 {"control", x.control},
                 {"verdict", to_string(x.verdict)},
                 {"min_residual", {{"value", number(x.min_residual)}, {"error", number(x.error)}}},
                 {"witness", x.witness}});
  j["certified"] = r.certified;
  j["failing"] = r.failing;
  j["inconclusive"] = r.inconclusive;
  j["worst_residual"] = number(r.worst_residual);
  j["exploratory"] = r.exploratory;
  j["hypothesis"] = r.hypothesis;
  return j;
}

nlohmann::json to_json(const TraceReport& r) {
  nlohmann::json j;
  auto& rows = j["rows"] = nlohmann::json::array();
  for (const auto& x : r.rows)
    rows.push_back({{"r", x.r},
                    {"m", number(x.m)},
                    {"lower", number(x.lower)},
                    {"envelope", number(x.envelope)},
                    {"rho", x.rho ? number(*x.rho) : nlohmann::json(nullptr)},
                    {"eta", x.eta ? number(*x.eta) : nlohmann::json(nullptr)}});
  j["c_bar"] = r.c_bar;
  j["C_bar"] = r.C_bar;
  j["C_M"] = r.C_M;
  j["contradiction_radius"] =
      r.contradiction_radius ? nlohmann::json(*r.contradiction_radius) : nlohmann::json(nullptr);
  return j;
}

void write_residual_csv(std::ostream& out, const ResidualReport& r) {
  out << "radius,residual,error\n";
  const auto old = out.precision(17);
  for (std::size_t i = 0; i < r.radii.size(); ++i)
    out << r.radii[i] << ',' << r.residual[i] << ',' << r.error[i] << '\n';
  out.precision(old);
}

}  // namespace fraclap
