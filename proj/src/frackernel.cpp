#include "fraclap/frackernel.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <exception>
#include <limits>
#include <numbers>

namespace fraclap {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
// The near field is integrated down to cutoff * delta; below that a two-term
// power model of the integrand replaces quadrature of cancelling differences.
constexpr double kCutoff = 1e-3;
constexpr int kMaxTailBlocks = 31;
constexpr int kMaxChunks = 1 << 15;

double nearest_distance(double r, std::span<const double> kinks) {
  double d = std::numeric_limits<double>::infinity();
  for (double k : kinks) d = std::min(d, std::abs(r - k));
  return d;
}

std::vector<double> merged_kinks(std::vector<double> a, const std::vector<double>& b) {
  a.insert(a.end(), b.begin(), b.end());
  std::sort(a.begin(), a.end());
  a.erase(std::unique(a.begin(), a.end()), a.end());
  return a;
}

OperatorValue to_value(const quad::Result& r, double c) {
  return {c * r.value, c * r.error, r.panels, r.converged && std::isfinite(r.value)};
}

// \int_0^delta I(t) dt for I(t) ~ A t^{1-2s} + B t^{2-2s} at small t.
// noise: expected roundoff size of I at the cutoff.
quad::Result near_field(const quad::Integrand& I, double delta, double s, const QuadSpec& q,
                        const std::function<double(double)>& noise) {
  const double e = 1.0 - 2.0 * s;
  const double qexp = 1.0 / (2.0 - 2.0 * s);
  const double tc = kCutoff * delta;
  const double vc = std::pow(kCutoff, 2.0 - 2.0 * s);
  // t = delta v^qexp flattens the t^{1-2s} behaviour in v.
  auto g = [&](double v) {
    const double t = delta * std::pow(v, qexp);
    return I(t) * delta * qexp * std::pow(v, qexp - 1.0);
  };
  quad::Result res = quad::adaptive(g, vc, 1.0, q.rel_tol, 0.5 * q.abs_tol, q.max_subdivisions);

  const double x1 = I(tc) * std::pow(tc, -e);
  const double x2 = I(0.5 * tc) * std::pow(0.5 * tc, -e);
  const double B = 2.0 * (x1 - x2) / tc;
  const double A = 2.0 * x2 - x1;
  const double lead = A * std::pow(tc, 2.0 - 2.0 * s) / (2.0 - 2.0 * s);
  const double next = B * std::pow(tc, 3.0 - 2.0 * s) / (3.0 - 2.0 * s);
  res.value += lead + next;
  res.error += std::abs(next) + 10.0 * noise(tc) * tc / (2.0 * s);
  return res;
}

// \int_T^inf g over blocks [T 2^j, T 2^{j+1}]; stops once a geometric bound on
// the remainder is below tolerance. chunk > 0 caps the panel width (oscillation).
quad::Result far_tail(const quad::Integrand& g, double T, double chunk, double scale,
                      const QuadSpec& q) {
  quad::Result total;
  double prev = std::numeric_limits<double>::quiet_NaN();
  double prev_ratio = 1.0;
  int zeros = 0, flat = 0;
  for (int j = 0; j < kMaxTailBlocks; ++j) {
    const double a = T * std::ldexp(1.0, j), b = 2.0 * a;
    quad::Result block;
    if (chunk > 0.0) {
      const int m = std::clamp(static_cast<int>(std::ceil((b - a) / chunk)), 1, kMaxChunks);
      const double w = (b - a) / m;
      for (int i = 0; i < m; ++i) block += quad::gk15(g, a + i * w, a + (i + 1) * w);
    } else {
      block = quad::adaptive(g, a, b, q.rel_tol, 0.1 * q.abs_tol, q.max_subdivisions);
    }
    total += block;
    const double mag = std::abs(block.value);
    zeros = mag == 0.0 ? zeros + 1 : 0;
    if (zeros >= 2) return total;
    if (j > 0) {
      const double ratio = prev > 0.0 ? mag / prev : 1.0;
      flat = ratio >= 0.97 ? flat + 1 : 0;
      if (flat >= 4 && j >= 6) throw DivergenceError("far field does not decay");
      const double rho = std::max(ratio, prev_ratio);
      if (rho < 0.9) {
        const double rem = mag * rho / (1.0 - rho);
        if (rem <= std::max(0.1 * q.abs_tol, q.rel_tol * std::max(scale, std::abs(total.value)))) {
          total.error += rem + block.error;
          return total;
        }
      }
      prev_ratio = ratio;
    }
    prev = mag;
  }
  total.converged = false;
  return total;
}

// Growth exponent of |f(rho) - c| from samples far out; rejects f that the
// kernel rho^{-1-2s} cannot absorb.
void check_growth(const std::function<double(double)>& f, double c, double T, double s) {
  std::array<double, 6> lr{}, lf{};
  int m = 0;
  for (int j = 10; j < 16; ++j) {
    const double rho = T * std::pow(4.0, j);
    const double v = std::abs(f(rho) - c);
    if (!std::isfinite(v)) throw DivergenceError("profile is not finite far out");
    if (v == 0.0) return;
    lr[m] = std::log(rho);
    lf[m] = std::log(v);
    ++m;
  }
  double slope = 0.0;
  for (int i = 1; i < m; ++i) slope = std::max(slope, (lf[i] - lf[i - 1]) / (lr[i] - lr[i - 1]));
  if (slope >= 2.0 * s - 1e-3) throw DivergenceError("profile grows like |x|^{2s} or faster");
}

void orthonormal_frame(std::span<const double> x, int n, std::array<std::array<double, 3>, 3>& e) {
  double R = 0.0;
  for (int i = 0; i < n; ++i) R += x[i] * x[i];
  R = std::sqrt(R);
  e = {};
  if (R == 0.0) {
    for (int i = 0; i < 3; ++i) e[i][i] = 1.0;
    return;
  }
  for (int i = 0; i < n; ++i) e[0][i] = x[i] / R;
  // Gram-Schmidt against the coordinate axis least aligned with x.
  int pick = 0;
  for (int i = 1; i < n; ++i)
    if (std::abs(e[0][i]) < std::abs(e[0][pick])) pick = i;
  std::array<double, 3> v{};
  v[pick] = 1.0;
  double d = v[pick] * e[0][pick];
  double nrm = 0.0;
  for (int i = 0; i < 3; ++i) {
    v[i] -= d * e[0][i];
    nrm += v[i] * v[i];
  }
  for (int i = 0; i < 3; ++i) e[1][i] = v[i] / std::sqrt(nrm);
  e[2] = {e[0][1] * e[1][2] - e[0][2] * e[1][1], e[0][2] * e[1][0] - e[0][0] * e[1][2],
          e[0][0] * e[1][1] - e[0][1] * e[1][0]};
}

template <class F>
std::vector<OperatorValue> run_batch(std::size_t count, Exec exec, F&& one) {
  std::vector<OperatorValue> out(count);
  std::vector<std::exception_ptr> errors(count);
  const long long m = static_cast<long long>(count);
  if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(dynamic)
    for (long long i = 0; i < m; ++i) {
      try {
        out[i] = one(static_cast<std::size_t>(i));
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  } else {
    for (long long i = 0; i < m; ++i) {
      try {
        out[i] = one(static_cast<std::size_t>(i));
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

}  // namespace

RadialFunction RadialFunction::from_profile(const RadialProfile& p) {
  RadialFunction f;
  f.u = [p](double r) { return p(r); };
  f.kinks = p.breakpoints();
  f.outer = p.outer_piece();
  f.name = p.name();
  return f;
}

RadialFunction RadialFunction::generic(std::function<double(double)> u, std::vector<double> kinks,
                                       std::string name) {
  std::sort(kinks.begin(), kinks.end());
  return RadialFunction{std::move(u), std::move(kinks), std::nullopt, std::move(name)};
}

Field radial_field(const RadialFunction& f) {
  return [u = f.u](std::span<const double> x) {
    double r2 = 0.0;
    for (double v : x) r2 += v * v;
    return u(std::sqrt(r2));
  };
}

RadialEvaluator::RadialEvaluator(const FracParams& p, QuadSpec q)
    : params_(p), quad_(std::move(q)), kernel_(p) {
  quad_.validate();
}

OperatorValue RadialEvaluator::operator()(const RadialProfile& p, double r) const {
  return (*this)(RadialFunction::from_profile(p), r);
}

OperatorValue RadialEvaluator::operator()(const RadialFunction& f, double r) const {
  if (!(r > 0.0) || !std::isfinite(r)) throw EvaluationPointError("radius must be positive");
  const auto kinks = merged_kinks(f.kinks, quad_.kink_radii);
  const double dk = nearest_distance(r, kinks);
  if (dk < quad_.near_radius) throw EvaluationPointError("evaluation radius sits on a kink");

  const double s = params_.s();
  const double delta = std::min(0.5 * r, 0.5 * dk);
  const double Ur = f(r);
  const double max_kink = kinks.empty() ? 0.0 : kinks.back();
  const double T = std::max({quad_.tail_radius, 10.0 * r, 2.0 * max_kink});
  const RadialKernel& J = kernel_;

  auto paired = [&](double t) {
    return (Ur - f(r + t)) * J(r, r + t) + (Ur - f(r - t)) * J(r, r - t);
  };
  auto noise = [&](double t) {
    return kEps * (std::abs(Ur) + std::abs(f(r + t))) * (J(r, r + t) + J(r, r - t));
  };
  quad::Result total = near_field(paired, delta, s, quad_, noise);

  auto outer = [&](double rho) { return (Ur - f(rho)) * J(r, rho); };

  // Left of the near field: geometric points towards 0 plus kinks.
  std::vector<double> left{0.0};
  for (double d = delta; r - d > 0.0; d *= 2.0) left.push_back(r - d);
  for (double k : kinks)
    if (k < r - delta) left.push_back(k);
  std::sort(left.begin(), left.end());
  left.erase(std::unique(left.begin(), left.end()), left.end());
  if (left.size() >= 2) {
    // rho = b w^3 tames integrable singularities of the profile at the origin.
    const double b = left[1];
    auto cubic = [&](double w) { return outer(b * w * w * w) * 3.0 * b * w * w; };
    total += quad::adaptive(cubic, 0.0, 1.0, quad_.rel_tol, 0.25 * quad_.abs_tol,
                            quad_.max_subdivisions);
    total += quad::adaptive_panels(outer, std::span(left).subspan(1), quad_.rel_tol,
                                   0.25 * quad_.abs_tol, quad_.max_subdivisions);
  }

  std::vector<double> right;
  for (double d = delta; r + d < T; d *= 2.0) right.push_back(r + d);
  for (double k : kinks)
    if (k > r + delta && k < T) right.push_back(k);
  right.push_back(T);
  std::sort(right.begin(), right.end());
  right.erase(std::unique(right.begin(), right.end()), right.end());
  total += quad::adaptive_panels(outer, right, quad_.rel_tol, 0.25 * quad_.abs_tol,
                                 quad_.max_subdivisions);

  if (f.outer) {
    const quad::Result base = J.tail(r, T, Term::constant(1.0));
    total.value += Ur * base.value;
    total.error += std::abs(Ur) * base.error;
    for (const auto& t : f.outer->terms) {
      const quad::Result part = J.tail(r, T, t);
      total.value -= part.value;
      total.error += part.error;
    }
  } else {
    check_growth(f.u, Ur, T, s);
    // w = (T / rho)^{2s} maps [T, inf) onto (0, 1].
    const double scale = std::pow(T, -2.0 * s) / (2.0 * s);
    auto tail = [&](double w) {
      if (w <= 0.0) return 0.0;
      const double rho = T * std::pow(w, -1.0 / (2.0 * s));
      if (!std::isfinite(rho)) return 0.0;
      return (Ur - f(rho)) * J(r, rho) * std::pow(rho, 1.0 + 2.0 * s) * scale;
    };
    total += quad::adaptive(tail, 0.0, 1.0, quad_.rel_tol, 0.25 * quad_.abs_tol,
                            quad_.max_subdivisions);
  }
  return to_value(total, params_.c_ns());
}

std::vector<OperatorValue> RadialEvaluator::batch(const RadialFunction& f,
                                                  std::span<const double> radii,
                                                  Exec exec) const {
  return run_batch(radii.size(), exec, [&](std::size_t i) { return (*this)(f, radii[i]); });
}

OperatorValue eval_radial(const RadialProfile& profile, double r, const FracParams& p,
                          const QuadSpec& q) {
  return RadialEvaluator(p, q)(profile, r);
}

OperatorValue eval_radial(const RadialFunction& f, double r, const FracParams& p,
                          const QuadSpec& q) {
  return RadialEvaluator(p, q)(f, r);
}

OperatorValue eval_pointwise_1d(const std::function<double(double)>& u, double x,
                                const FracParams& p, const QuadSpec& q,
                                std::span<const double> kinks) {
  if (p.n() != 1) throw ConfigError("eval_pointwise_1d needs n = 1");
  q.validate();
  const double s = p.s();
  const double dk = nearest_distance(x, kinks);
  if (dk < q.near_radius) throw EvaluationPointError("evaluation point sits on a kink");
  const double delta = std::min(0.5, 0.5 * dk);
  double reach = std::abs(x);
  for (double k : kinks) reach = std::max(reach, std::abs(k) + std::abs(x));
  const double T = std::max(q.tail_radius, 2.0 * reach);
  const double ux = u(x);

  auto I = [&](double y) {
    return (2.0 * ux - u(x + y) - u(x - y)) * std::pow(y, -1.0 - 2.0 * s);
  };
  auto noise = [&](double y) { return 4.0 * kEps * std::abs(ux) * std::pow(y, -1.0 - 2.0 * s); };
  quad::Result total = near_field(I, delta, s, q, noise);

  std::vector<double> breaks;
  for (double d = delta; d < T; d *= 2.0) breaks.push_back(d);
  for (double k : kinks) {
    const double y = std::abs(x - k);
    if (y > delta && y < T) breaks.push_back(y);
  }
  breaks.push_back(T);
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());
  total += quad::adaptive_panels(I, breaks, q.rel_tol, 0.25 * q.abs_tol, q.max_subdivisions);

  total.value += 2.0 * ux * std::pow(T, -2.0 * s) / (2.0 * s);
  auto g = [&](double y) { return -(u(x + y) + u(x - y)) * std::pow(y, -1.0 - 2.0 * s); };
  total += far_tail(g, T, 1.0, std::abs(total.value), q);
  return to_value(total, p.c_ns());
}

OperatorValue eval_pointwise(const Field& u, std::span<const double> x, const FracParams& p,
                             const QuadSpec& q) {
  const int n = p.n();
  if (static_cast<int>(x.size()) != n) throw ConfigError("point dimension does not match n");
  q.validate();
  if (n == 1) {
    std::vector<double> pts;
    for (double k : q.kink_radii) {
      pts.push_back(-k);
      pts.push_back(k);
    }
    std::sort(pts.begin(), pts.end());
    auto u1 = [&](double y) { return u(std::span<const double>(&y, 1)); };
    return eval_pointwise_1d(u1, x[0], p, q, pts);
  }

  const double s = p.s();
  double R = 0.0;
  for (double v : x) R += v * v;
  R = std::sqrt(R);
  const auto& kinks = q.kink_radii;
  const double dk = nearest_distance(R, kinks);
  if (dk < q.near_radius) throw EvaluationPointError("evaluation point sits on a kink");
  const double delta = std::min(0.5, 0.5 * dk);
  const double reach = R + (kinks.empty() ? 0.0 : kinks.back());
  const double T = std::max(q.tail_radius, 2.0 * reach);
  const double ux = u(x);

  std::array<std::array<double, 3>, 3> e;
  orthonormal_frame(x, n, e);
  const double inner_tol = 0.1 * q.rel_tol;
  const int inner_budget = std::min(q.max_subdivisions, 400);
  constexpr int kPhi = 32;

  // Sum u(x + t w) + u(x - t w) for the direction at polar angle theta (azimuth phi).
  auto pair_sum = [&](double t, double theta, double phi) {
    std::array<double, 3> w{};
    const double c = std::cos(theta), sn = std::sin(theta);
    for (int i = 0; i < n; ++i) {
      w[i] = c * e[0][i] + sn * (n == 2 ? e[1][i] : std::cos(phi) * e[1][i] + std::sin(phi) * e[2][i]);
    }
    std::array<double, 3> yp{}, ym{};
    for (int i = 0; i < n; ++i) {
      yp[i] = x[i] + t * w[i];
      ym[i] = x[i] - t * w[i];
    }
    return u(std::span<const double>(yp.data(), n)) + u(std::span<const double>(ym.data(), n));
  };

  // \int_S (u(x+tw) + u(x-tw)) dw, using the symmetry w -> -w.
  auto sphere_sum = [&](double t) {
    std::vector<double> th;
    if (R > 0.0) {
      for (double k : kinks) {
        const double c = (k * k - R * R - t * t) / (2.0 * R * t);
        if (std::abs(c) < 1.0) th.push_back(std::acos(std::abs(c)));
      }
    }
    const double hp = 0.5 * std::numbers::pi;
    quad::Result res;
    if (n == 2) {
      std::vector<double> br{-hp, hp};
      for (double a : th) {
        br.push_back(a);
        br.push_back(-a);
      }
      std::sort(br.begin(), br.end());
      br.erase(std::unique(br.begin(), br.end()), br.end());
      auto f = [&](double theta) { return pair_sum(t, theta, 0.0); };
      res = quad::adaptive_panels(f, br, inner_tol, 1e-300, inner_budget);
      res.value *= 2.0;
    } else {
      std::vector<double> br{0.0, hp};
      br.insert(br.end(), th.begin(), th.end());
      std::sort(br.begin(), br.end());
      br.erase(std::unique(br.begin(), br.end()), br.end());
      auto f = [&](double theta) {
        double acc = 0.0;
        for (int k = 0; k < kPhi; ++k) acc += pair_sum(t, theta, 2.0 * std::numbers::pi * k / kPhi);
        return acc * (2.0 * std::numbers::pi / kPhi) * std::sin(theta);
      };
      res = quad::adaptive_panels(f, br, inner_tol, 1e-300, inner_budget);
      res.value *= 2.0;
    }
    return res.value;
  };

  const double area = p.sphere_area();
  auto I = [&](double t) { return (2.0 * ux * area - sphere_sum(t)) * std::pow(t, -1.0 - 2.0 * s); };
  auto noise = [&](double t) {
    return 8.0 * area * kEps * std::abs(ux) * std::pow(t, -1.0 - 2.0 * s);
  };
  quad::Result total = near_field(I, delta, s, q, noise);

  std::vector<double> breaks;
  for (double d = delta; d < T; d *= 2.0) breaks.push_back(d);
  std::vector<double> special{R};
  for (double k : kinks) {
    special.push_back(std::abs(R - k));
    special.push_back(R + k);
  }
  for (double y : special)
    if (y > delta && y < T) breaks.push_back(y);
  breaks.push_back(T);
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());
  total += quad::adaptive_panels(I, breaks, q.rel_tol, 0.25 * q.abs_tol, q.max_subdivisions);

  total.value += 2.0 * ux * area * std::pow(T, -2.0 * s) / (2.0 * s);
  auto g = [&](double t) { return -sphere_sum(t) * std::pow(t, -1.0 - 2.0 * s); };
  total += far_tail(g, T, 0.0, std::abs(total.value), q);
  return to_value(total, 0.5 * p.c_ns());
}

std::vector<OperatorValue> eval_pointwise_batch(const Field& u,
                                                const std::vector<std::vector<double>>& points,
                                                const FracParams& p, const QuadSpec& q,
                                                Exec exec) {
  return run_batch(points.size(), exec,
                   [&](std::size_t i) { return eval_pointwise(u, points[i], p, q); });
}

ScalingCheck scaling_identity_check(const Field& u, double lambda, std::span<const double> x,
                                    const FracParams& p, const QuadSpec& q) {
  if (!(lambda > 0.0)) throw DomainError("scaling factor must be positive");
  QuadSpec ql = q;
  for (double& k : ql.kink_radii) k /= lambda;
  Field scaled = [&](std::span<const double> y) {
    std::array<double, 3> z{};
    for (std::size_t i = 0; i < y.size(); ++i) z[i] = lambda * y[i];
    return u(std::span<const double>(z.data(), y.size()));
  };
  std::vector<double> lx(x.begin(), x.end());
  for (double& v : lx) v *= lambda;

  ScalingCheck out;
  out.lhs = eval_pointwise(lambda == 1.0 ? u : scaled, x, p, lambda == 1.0 ? q : ql);
  const OperatorValue base = eval_pointwise(u, lx, p, q);
  const double f = std::pow(lambda, 2.0 * p.s());
  out.rhs = {f * base.value, f * base.error_estimate, base.panels_used, base.converged};
  out.deviation = std::abs(out.lhs.value - out.rhs.value) / std::max(1.0, std::abs(out.rhs.value));
  return out;
}

}  // namespace fraclap
