#include "fraclap/hypotheses.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>

#include "fraclap/fundamentals.hpp"
#include "fraclap/report.hpp"

namespace fraclap {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<double> log_grid(double lo, double hi, int points) {
  std::vector<double> t(static_cast<std::size_t>(points));
  if (points == 1 || lo == hi) return std::vector<double>(1, lo);
  const double q = std::log(hi / lo) / (points - 1);
  for (int i = 0; i < points; ++i) t[i] = lo * std::exp(q * i);
  t.back() = hi;
  return t;
}

double nan_to_inf(double v) { return std::isnan(v) ? kInf : v; }

}  // namespace

double NonlinearitySpec::operator()(double t, double xnorm) const {
  if (form == Form::General) return f_general(t, xnorm);
  return std::pow(xnorm, -gamma) * g(t);
}

void NonlinearitySpec::validate(const FracParams& p) const {
  if (form == Form::Separable) {
    if (!g) throw ConfigError("separable nonlinearity needs g");
    if (!(gamma < 2.0 * p.s())) throw ConfigError("separable form needs gamma < 2s");
  } else if (!f_general) {
    throw ConfigError("general nonlinearity needs f");
  }
  if (!(mu_lower > 0.0 && mu_upper > 0.0)) throw ConfigError("mu constants must be positive");
  if (!(r0 > 0.0)) throw ConfigError("r0 must be positive");
}

NonlinearitySpec NonlinearitySpec::separable(double gamma, std::function<double(double)> g,
                                             std::string name) {
  NonlinearitySpec s;
  s.gamma = gamma;
  s.g = std::move(g);
  s.name = std::move(name);
  return s;
}

NonlinearitySpec NonlinearitySpec::general(std::function<double(double, double)> f,
                                           std::string name) {
  NonlinearitySpec s;
  s.form = Form::General;
  s.f_general = std::move(f);
  s.name = std::move(name);
  return s;
}

NonlinearitySpec NonlinearitySpec::power(double coefficient, double exponent, double gamma) {
  return separable(
      gamma, [coefficient, exponent](double t) { return coefficient * std::pow(t, exponent); },
      "power");
}

NonlinearitySpec NonlinearitySpec::cf1b(const FracParams& p) {
  if (!(p.n() > 2.0 * p.s())) throw ConfigError("cf1b needs n > 2s");
  const double e = p.n() / (p.n() - 2.0 * p.s());
  auto s = separable(
      0.0,
      [e](double t) {
        if (t <= 1.0) return 2.5 * std::pow(t, e);
        return std::cos(2.0 * std::numbers::pi * t) + 1.0 + 1.0 / t;
      },
      "cf1b");
  s.warnings.push_back("jump at t = 1: left value 2.5, right limit 3 (continuity in (f1) fails)");
  return s;
}

NonlinearitySpec NonlinearitySpec::from_json(const nlohmann::json& j, const FracParams& p) {
  try {
    const std::string form = j.value("form", "separable");
    if (form != "separable") throw ConfigError("only separable specs can be read from JSON");
    const auto& gj = j.at("g");
    const std::string type = gj.at("type").get<std::string>();
    NonlinearitySpec s;
    if (type == "power") {
      s = power(gj.value("coefficient", 1.0), gj.at("exponent").get<double>());
    } else if (type == "exponential") {
      const double c = gj.value("coefficient", 1.0), b = gj.at("rate").get<double>();
      s = separable(0.0, [c, b](double t) { return c * std::exp(b * t); }, "exponential");
    } else if (type == "cf1b") {
      s = cf1b(p);
    } else if (type == "piecewise") {
      // pieces {upto, coefficient, exponent}; the last one has no "upto"
      std::vector<std::array<double, 3>> pieces;
      for (const auto& q : gj.at("pieces"))
        pieces.push_back({q.contains("upto") && !q["upto"].is_null() ? q["upto"].get<double>() : kInf,
                          q.value("coefficient", 1.0), q.at("exponent").get<double>()});
      if (pieces.empty()) throw ConfigError("piecewise g needs pieces");
      for (std::size_t i = 1; i < pieces.size(); ++i)
        if (!(pieces[i][0] > pieces[i - 1][0])) throw ConfigError("piece breakpoints must increase");
      s = separable(
          0.0,
          [pieces](double t) {
            for (const auto& q : pieces)
              if (t <= q[0]) return q[1] * std::pow(t, q[2]);
            return pieces.back()[1] * std::pow(t, pieces.back()[2]);
          },
          "piecewise");
    } else {
      throw ConfigError("unknown g type '" + type + "'");
    }
    s.gamma = j.value("gamma", 0.0);
    s.mu_lower = j.value("mu_lower", 1.0);
    s.mu_upper = j.value("mu_upper", 1.0);
    s.r0 = j.value("r0", 2.0);
    if (j.contains("name")) s.name = j["name"].get<std::string>();
    s.validate(p);
    return s;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("malformed nonlinearity spec: ") + e.what());
  }
}

double alpha_tilde_star(const FracParams& p, double gamma) {
  if (p.sigma_star() == 0.0) throw DomainError("alpha~* is undefined when sigma* = 0");
  return 1.0 + (2.0 * p.s() - gamma) / (-p.sigma_star());
}

std::string to_string(Trend t) {
  switch (t) {
    case Trend::Increasing: return "INCREASING";
    case Trend::Decreasing: return "DECREASING";
    case Trend::Plateau: return "PLATEAU";
    case Trend::Irregular: return "IRREGULAR";
  }
  return "?";
}

std::string to_string(HypVerdict v) {
  switch (v) {
    case HypVerdict::Holds: return "HOLDS";
    case HypVerdict::Fails: return "FAILS";
    case HypVerdict::Inconclusive: return "INCONCLUSIVE";
  }
  return "?";
}

Trend classify_trend(const std::vector<double>& v, double plateau_tol) {
  if (v.size() < 5) return Trend::Irregular;
  const std::vector<double> w(v.end() - 5, v.end());
  const bool finite = std::all_of(w.begin(), w.end(), [](double x) { return std::isfinite(x); });
  if (finite) {
    const auto [lo, hi] = std::minmax_element(w.begin(), w.end());
    const double scale = std::max(std::abs(*lo), std::abs(*hi));
    if (scale == 0.0 || (*hi - *lo) <= plateau_tol * scale) return Trend::Plateau;
  }
  bool up = true, down = true;
  for (std::size_t i = 1; i < w.size(); ++i) {
    const bool both_inf = std::isinf(w[i]) && std::isinf(w[i - 1]) && w[i] == w[i - 1];
    if (!(w[i] > w[i - 1] || both_inf)) up = false;
    if (!(w[i] <= w[i - 1])) down = false;
  }
  if (up && w.back() > w.front()) return Trend::Increasing;
  if (up && std::isinf(w.front())) return Trend::Increasing;  // all +inf
  if (down && w.back() < w.front()) return Trend::Decreasing;
  return Trend::Irregular;
}

PsiValue psi_k(double xnorm, double k, const NonlinearitySpec& f, const FracParams& p,
               PsiVariant variant) {
  if (!(xnorm > 0.0) || !(k > 0.0)) throw ConfigError("psi_k needs |x| > 0 and k > 0");
  double lo = 0.0, hi = 0.0;
  if (variant == PsiVariant::F3) {
    lo = f.mu_lower;
    hi = k * make_fundamental(p, SignVariant::PhiTilde)(xnorm);
  } else {
    lo = k * make_fundamental(p, SignVariant::Phi)(xnorm);
    hi = f.mu_upper;
  }
  PsiValue out;
  if (!(lo > 0.0) || !(hi >= lo)) {
    out.value = kInf;
    out.empty = true;
    return out;
  }
  auto ratio = [&](double t) {
    const double v = f(t, xnorm);
    if (!(v > 0.0)) out.violation = true;
    return v / t;
  };
  auto t = log_grid(lo, hi, 400);
  std::size_t best = 0;
  double m = kInf;
  for (std::size_t i = 0; i < t.size(); ++i) {
    const double r = ratio(t[i]);
    if (r < m) m = r, best = i;
  }
  double arg = t[best];
  if (t.size() > 1) {
    const double a = t[best == 0 ? 0 : best - 1], b = t[std::min(best + 1, t.size() - 1)];
    for (double u : log_grid(a, b, 400)) {
      const double r = ratio(u);
      if (r < m) m = r, arg = u;
    }
  }
  out.value = std::pow(xnorm, 2.0 * p.s()) * m;
  out.argmin = arg;
  return out;
}

HEstimate h_of_k(double k, const NonlinearitySpec& f, const FracParams& p, PsiVariant variant) {
  HEstimate h;
  h.k = k;
  // beyond 10^6 r0 only while fewer than five nonempty ranges have been seen
  int finite = 0;
  for (int j = 1; j <= 40 && (j <= 6 || (finite > 0 && finite < 5)); ++j) {
    const double x = std::pow(10.0, j) * f.r0;
    const auto v = psi_k(x, k, f, p, variant);
    h.radii.push_back(x);
    h.psi.push_back(v.value);
    h.violation = h.violation || v.violation;
    if (std::isfinite(v.value)) ++finite;
  }
  h.all_empty = std::all_of(h.psi.begin(), h.psi.end(), [](double v) { return std::isinf(v); });
  if (h.all_empty) {
    h.value = kInf;
    h.trend = Trend::Increasing;
    h.positive = true;
    return h;
  }
  // empty ranges at small |x| say nothing about the liminf; use the finite tail
  auto first = std::find_if(h.psi.begin(), h.psi.end(), [](double v) { return std::isfinite(v); });
  std::vector<double> tail(first, h.psi.end());
  const double lo = *std::min_element(tail.begin(), tail.end());
  bool steady_up = tail.size() >= 2, steady_down = tail.size() >= 2;
  for (std::size_t i = 1; i < tail.size(); ++i) {
    steady_up = steady_up && tail[i] >= 1.05 * tail[i - 1];
    steady_down = steady_down && tail[i] <= 0.99 * tail[i - 1];
  }
  if (tail.size() >= 5) {
    h.trend = classify_trend(tail, 0.05);
  } else if (steady_up) {
    h.trend = Trend::Increasing;
  } else if (steady_down) {
    h.trend = Trend::Decreasing;
  } else {
    const auto [a, b] = std::minmax_element(tail.begin(), tail.end());
    h.trend = (*b - *a) <= 0.05 * std::abs(*b) ? Trend::Plateau : Trend::Irregular;
  }
  switch (h.trend) {
    case Trend::Increasing: h.value = kInf; h.positive = true; break;
    case Trend::Plateau: h.value = lo; h.positive = lo > 0.0; break;
    case Trend::Decreasing:
      // steady geometric decay: the liminf is 0
      h.value = steady_down ? 0.0 : lo;
      h.positive = false;
      break;
    case Trend::Irregular: h.value = lo; h.positive = false; break;
  }
  return h;
}

namespace {

std::optional<double> fit_exponent(const std::vector<double>& k, const std::vector<double>& h) {
  std::vector<double> X, Y;
  for (std::size_t i = 0; i < k.size(); ++i)
    if (std::isfinite(h[i]) && h[i] > 0.0) {
      X.push_back(std::log(k[i]));
      Y.push_back(std::log(h[i]));
    }
  if (X.size() < 3) return std::nullopt;
  const double n = X.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < X.size(); ++i) {
    sx += X[i];
    sy += Y[i];
    sxx += X[i] * X[i];
    sxy += X[i] * Y[i];
  }
  const double den = n * sxx - sx * sx;
  if (den == 0.0) return std::nullopt;
  return (n * sxy - sx * sy) / den;
}

HypothesisReport check_h_family(const NonlinearitySpec& f, const FracParams& p, PsiVariant variant) {
  HypothesisReport r;
  r.condition = variant == PsiVariant::F3 ? "f3prime" : "f4prime";
  r.parameter = "k";
  r.notes = f.warnings;
  f.validate(p);
  if (variant == PsiVariant::F3 && p.sigma_star() < 0.0)
    throw ConfigError("(f3') is stated for sigma* >= 0");
  if (variant == PsiVariant::F4 && p.sigma_star() >= 0.0)
    throw ConfigError("(f4') is stated for sigma* < 0");
  std::vector<HEstimate> hs(13);
#pragma omp parallel for schedule(dynamic)
  for (int j = 0; j <= 12; ++j) {
    const double k = variant == PsiVariant::F3 ? std::pow(2.0, -j) : std::pow(2.0, j);
    hs[j] = h_of_k(k, f, p, variant);
  }
  bool all_positive = true, violation = false, vanishing = false;
  for (const auto& h : hs) {
    r.samples.push_back(h.k);
    r.quantity.push_back(h.value);
    all_positive = all_positive && h.positive;
    vanishing = vanishing || (h.trend == Trend::Decreasing && h.value == 0.0);
    violation = violation || h.violation;
    if (!h.positive)
      r.notes.push_back("positivity of h(" + std::to_string(h.k) + ") not established (psi trend " +
                        to_string(h.trend) + ")");
  }
  r.trend = classify_trend(r.quantity, 0.05);
  r.k_exponent = fit_exponent(r.samples, r.quantity);
  if (violation) {
    r.verdict = HypVerdict::Fails;
    r.notes.push_back("f is not positive at some sample");
    return r;
  }
  if (vanishing) {
    r.verdict = HypVerdict::Fails;
    r.notes.push_back("h(k) = 0 for some sampled k (psi decays geometrically in |x|)");
  } else if (r.trend == Trend::Plateau || r.trend == Trend::Decreasing)
    r.verdict = HypVerdict::Fails;
  else if (r.trend == Trend::Increasing && all_positive)
    r.verdict = HypVerdict::Holds;
  else
    r.verdict = HypVerdict::Inconclusive;
  if (r.trend == Trend::Plateau) r.plateau = r.quantity.back();
  return r;
}

}  // namespace

HypothesisReport check_f2(const NonlinearitySpec& f, const FracParams& p) {
  if (!(p.n() > 2.0 * p.s())) throw ConfigError("(f2) needs n > 2s");
  f.validate(p);
  HypothesisReport r;
  r.condition = "f2";
  r.parameter = "t";
  r.notes = f.warnings;
  if (f.form == NonlinearitySpec::Form::Separable && f.gamma != 0.0)
    r.notes.push_back("x-dependent f evaluated at |x| = r0");
  const double e = p.n() / (p.n() - 2.0 * p.s());
  for (int k = 1; k <= 40; ++k) {
    const double t = std::ldexp(1.0, -k);
    const double v = f(t, f.r0);
    if (!std::isfinite(v)) throw DomainError("f is not evaluable at t = " + std::to_string(t));
    r.samples.push_back(t);
    r.quantity.push_back(std::pow(t, -e) * v);
    if (!(v > 0.0)) r.notes.push_back("f <= 0 at t = " + std::to_string(t));
  }
  r.trend = classify_trend(r.quantity);
  const std::vector<double> w(r.quantity.end() - 5, r.quantity.end());
  switch (r.trend) {
    case Trend::Increasing:
      r.verdict = w.front() > 0.0 ? HypVerdict::Holds : HypVerdict::Inconclusive;
      break;
    case Trend::Plateau:
      r.plateau = w.back();
      r.verdict = w.back() > 0.0 ? HypVerdict::Holds : HypVerdict::Fails;
      break;
    case Trend::Decreasing: {
      // steady geometric decay means the liminf is 0
      bool geometric = true;
      for (std::size_t i = 1; i < w.size(); ++i) geometric = geometric && w[i] <= 0.99 * w[i - 1];
      r.verdict = geometric ? HypVerdict::Fails : HypVerdict::Inconclusive;
      break;
    }
    case Trend::Irregular: r.verdict = HypVerdict::Inconclusive; break;
  }
  return r;
}

HypothesisReport check_f2prime(const NonlinearitySpec& f, const FracParams& p) {
  f.validate(p);
  HypothesisReport r;
  r.condition = "f2prime";
  r.parameter = "|x|";
  r.notes = f.warnings;
  const std::vector<std::pair<double, double>> boxes{{0.01, 0.1}, {0.1, 1.0}, {1.0, 10.0}, {10.0, 100.0}};
  bool all_up = true, any_down = false;
  std::vector<double> worst(6, kInf);
  for (const auto& [a, b] : boxes) {
    std::vector<double> q;
    for (int j = 1; j <= 6; ++j) {
      const double x = std::pow(10.0, j) * f.r0;
      double m = kInf;
      for (double t : log_grid(a, b, 50)) m = std::min(m, nan_to_inf(f(t, x)));
      q.push_back(std::pow(x, 2.0 * p.s()) * m);
    }
    const Trend t = classify_trend(q);
    bool steep = t == Trend::Increasing;
    for (std::size_t i = 2; i < q.size() && steep; ++i) steep = q[i] >= 1.05 * q[i - 1];
    all_up = all_up && steep;
    any_down = any_down || t == Trend::Decreasing || t == Trend::Plateau;
    for (std::size_t i = 0; i < q.size(); ++i) worst[i] = std::min(worst[i], q[i]);
  }
  for (int j = 1; j <= 6; ++j) r.samples.push_back(std::pow(10.0, j) * f.r0);
  r.quantity = worst;
  r.trend = classify_trend(worst);
  r.verdict = all_up ? HypVerdict::Holds : any_down ? HypVerdict::Fails : HypVerdict::Inconclusive;
  return r;
}

HypothesisReport check_f3prime(const NonlinearitySpec& f, const FracParams& p) {
  auto r = check_h_family(f, p, PsiVariant::F3);
  // the constant is a free choice; report whether the verdict depends on it
  for (double scale : {0.5, 2.0}) {
    NonlinearitySpec g = f;
    g.mu_lower = f.mu_lower * scale;
    const auto alt = check_h_family(g, p, PsiVariant::F3);
    if (alt.verdict != r.verdict)
      r.notes.push_back("verdict changes to " + to_string(alt.verdict) + " with mu_lower = " +
                        std::to_string(g.mu_lower));
  }
  return r;
}

HypothesisReport check_f4prime(const NonlinearitySpec& f, const FracParams& p) {
  auto r = check_h_family(f, p, PsiVariant::F4);
  for (double scale : {0.5, 2.0}) {
    NonlinearitySpec g = f;
    g.mu_upper = f.mu_upper * scale;
    const auto alt = check_h_family(g, p, PsiVariant::F4);
    if (alt.verdict != r.verdict)
      r.notes.push_back("verdict changes to " + to_string(alt.verdict) + " with mu_upper = " +
                        std::to_string(g.mu_upper));
  }
  return r;
}

HypothesisReport check_condition(const std::string& condition, const NonlinearitySpec& f,
                                 const FracParams& p) {
  if (condition == "f2") return check_f2(f, p);
  if (condition == "f2prime") return check_f2prime(f, p);
  if (condition == "f3prime") return check_f3prime(f, p);
  if (condition == "f4prime") return check_f4prime(f, p);
  throw ConfigError("unknown condition '" + condition + "'");
}

nlohmann::json to_json(const HypothesisReport& r) {
  nlohmann::json j;
  j["condition"] = r.condition;
  j["parameter"] = r.parameter;
  j["samples"] = r.samples;
  nlohmann::json q = nlohmann::json::array();
  for (double v : r.quantity) q.push_back(number(v));
  j["quantity"] = q;
  j["trend"] = to_string(r.trend);
  j["verdict"] = to_string(r.verdict);
  j["plateau"] = r.plateau ? nlohmann::json(*r.plateau) : nlohmann::json(nullptr);
  j["k_exponent"] = r.k_exponent ? nlohmann::json(*r.k_exponent) : nlohmann::json(nullptr);
  j["notes"] = r.notes;
  return j;
}

}  // namespace fraclap
