// One line per acceptance criterion; exit status is the number of failures.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "fraclap/estimates.hpp"
#include "fraclap/frackernel.hpp"
#include "fraclap/fundamentals.hpp"
#include "fraclap/hypotheses.hpp"
#include "fraclap/liouville.hpp"
#include "fraclap/maxprinciple.hpp"

using namespace fraclap;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

std::vector<double> logspace(double a, double b, int n) {
  std::vector<double> v;
  for (int i = 0; i < n; ++i) v.push_back(a * std::pow(b / a, i / double(n - 1)));
  return v;
}

Outcome annihilation() {
  const std::vector<std::pair<int, double>> pairs{{1, 0.5}, {1, 0.75}, {2, 0.4}, {3, 0.5}};
  const auto radii = logspace(1.0, 100.0, 10);
  double worst = 0.0;
  for (auto [n, s] : pairs) {
    const FracParams p(n, s);
    const auto phi = RadialFunction::from_profile(make_fundamental(p));
    const auto vals = RadialEvaluator(p).batch(phi, radii);
    for (std::size_t i = 0; i < radii.size(); ++i)
      worst = std::max(worst, std::abs(vals[i].value) / std::max(1.0, std::abs(phi(radii[i]))));
  }
  return {worst <= 1e-4, fmt("worst |op Phi|/max(1,|Phi|) = %.2e", worst)};
}

Outcome fourier_symbol() {
  double w1 = 0.0, w2 = 0.0;
  for (double s : {0.3, 0.5, 0.7}) {
    const FracParams p(1, s);
    const double a = eval_pointwise_1d([](double x) { return std::cos(x); }, 0.0, p).value;
    const double b = eval_pointwise_1d([](double x) { return std::cos(2 * x); }, 0.0, p).value;
    w1 = std::max(w1, std::abs(a - 1.0));
    w2 = std::max(w2, std::abs(b - std::pow(4.0, s)) / std::pow(4.0, s));
  }
  return {w1 <= 1e-3 && w2 <= 2e-3, fmt("cos: %.2e, cos(2x) rel: %.2e", w1, w2)};
}

Outcome scaling() {
  const FracParams p(1, 0.5);
  const Field bump = [](std::span<const double> x) { return std::exp(-x[0] * x[0]); };
  double worst = 0.0;
  for (double lambda : {0.5, 2.0, 10.0})
    for (double x0 : {0.0, 0.3, 1.1}) {
      const double x[1]{x0};
      worst = std::max(worst, scaling_identity_check(bump, lambda, x, p).deviation);
    }
  return {worst <= 1e-3, fmt("max relative deviation %.2e", worst)};
}

Outcome sign_chains() {
  struct Preset {
    int n;
    double s;
    std::vector<ChainId> chains;
  };
  const std::vector<Preset> presets{{1, 0.75, {ChainId::LVC}},
                                    {1, 0.5, {ChainId::NBBN}},
                                    {3, 0.5, {ChainId::VASK, ChainId::NITU, ChainId::RI}}};
  std::string detail;
  bool ok = true;
  for (const auto& pr : presets) {
    const FracParams p(pr.n, pr.s);
    for (ChainId id : pr.chains) {
      const auto choice = choose_constants(id, p, 2.0);
      const auto rep = verify_chain(id, p, choice.constants, Sampling{200});
      const Verdict v = combine(rep.verdict, choice.status);
      ok = ok && v == Verdict::Pass && rep.samples.size() >= 200;
      detail += to_string(id) + "=" + to_string(v) + " ";
    }
  }
  return {ok, detail};
}

Outcome rate_fits() {
  const std::vector<double> radii{10, 20, 50, 100, 200, 500, 1000};
  const auto base = BarrierConstants::with_radii(2.0);
  const auto d = rate_study(ChainId::CA3D, FracParams(1, 0.75), base, radii, Sampling{60});
  const auto q = rate_study(ChainId::CA3Q, FracParams(3, 0.5), base, radii, Sampling{60});
  const auto l = rate_study(ChainId::CAR3PP, FracParams(1, 0.5), base, radii, Sampling{60});
  const bool ok = std::abs(d.fit.slope + 1.0) <= 0.15 && std::abs(q.fit.slope + 1.0) <= 0.15 &&
                  l.fit.rate_spread <= 2.0;
  return {ok, fmt("CA3D slope %.3f, CA3Q slope %.3f (target -1), CAR3PP spread %.3f", d.fit.slope,
                  q.fit.slope, l.fit.rate_spread)};
}

Outcome comparison() {
  const auto b = comparison_battery(20260101, 100);
  return {b.cases == 100 && b.violations == 0,
          fmt("%d pairs, %d violations, worst %.2e", b.cases, b.violations, b.worst)};
}

Outcome hopf() {
  DirichletSpec spec;
  spec.domain = {{-1.0, 1.0}};
  spec.s = 0.5;
  spec.rhs = indicator({{-0.1, 0.1}});
  const auto r = verify_hopf_ratio(spec, 1.0 / 128);
  const bool ok = r.min_ratio > 0 && r.stability >= 0.8 && r.stability <= 1.2;
  return {ok, fmt("min v/delta^s %.4f, C_Omega %.4f -> %.4f", r.min_ratio, r.c_omega, r.c_omega_fine)};
}

Outcome kslap_qsmp() {
  const double h = 1.0 / 64;
  const auto a = verify_kslap(kslap_battery(), h, 0.5);
  const auto b = verify_kslap(kslap_battery(), h / 2, 0.5);
  const double kr = b.c_bar / a.c_bar;
  const auto q1 = verify_qsmp({{-2.0, 2.0}}, {{-0.5, 0.5}}, {{1.0, 1.5}}, QsmpVariant::I, 0.5, h);
  // the second variant needs a finite, nonnegative exterior fundamental solution in 1D
  const auto q2 = verify_qsmp({{1.0, 4.0}}, {{2.0, 3.0}}, {{3.25, 3.5}}, QsmpVariant::II, 0.75, h);
  auto within2 = [](double x) { return x >= 0.5 && x <= 2.0; };
  const bool ok = a.c_bar > 0 && within2(kr) && q1.c0 > 0 && within2(q1.stability) && q2.c0 > 0 &&
                  within2(q2.stability);
  return {ok, fmt("c_bar %.4f (x%.3f), c0 I %.4f (x%.3f), c0 II %.4f (x%.3f)", a.c_bar, kr, q1.c0,
                  q1.stability, q2.c0, q2.stability)};
}

Outcome measure_lemma() {
  std::vector<int> ks;
  for (double h : {1.0 / 64, 1.0 / 128}) {
    DirichletSpec spec;
    spec.domain = kslap_domain();
    spec.s = 0.5;
    spec.rhs = indicator(kslap_battery().front());
    const auto g = discretize(spec, h);
    const auto m = verify_measure_lemma(g, solve_dirichlet(g), 0.5);
    ks.push_back(m.found ? m.k : -100);
  }
  const bool ok = ks[0] >= 0 && ks[1] >= 0 && std::abs(ks[0] - ks[1]) <= 1;
  return {ok, fmt("C_bar = 1.25^%d -> 1.25^%d", ks[0], ks[1])};
}

Outcome hypotheses() {
  const FracParams p(3, 0.5);
  const auto a = check_f2(NonlinearitySpec::power(1, 1.4), p);
  const auto b = check_f2(NonlinearitySpec::power(1, 2.0), p);
  const auto c = check_f2(NonlinearitySpec::cf1b(p), p);
  bool ok = a.verdict == HypVerdict::Holds && b.verdict == HypVerdict::Fails &&
            c.verdict == HypVerdict::Holds && c.plateau && std::abs(*c.plateau - 2.5) <= 0.05;
  std::string detail = "t^1.4 " + to_string(a.verdict) + ", t^2 " + to_string(b.verdict) +
                       ", cf1b " + to_string(c.verdict) + fmt(" plateau %.4f;", c.plateau.value_or(NAN));
  // separable presets with g = t^{alpha~*}: h~(k) ~ k^{-1 + alpha~*}
  struct Preset {
    int n;
    double s;
    bool f3;
  };
  for (auto [n, s, f3] : {Preset{1, 0.75, true}, Preset{3, 0.5, false}}) {
    const FracParams pp(n, s);
    const double a = alpha_tilde_star(pp, 0.0);
    const auto f = NonlinearitySpec::power(1.0, a, 0.0);
    const auto r = f3 ? check_f3prime(f, pp) : check_f4prime(f, pp);
    const bool hit = r.verdict == HypVerdict::Holds && r.k_exponent &&
                     std::abs(*r.k_exponent - (a - 1.0)) <= 0.2;
    ok = ok && hit;
    detail += fmt(" (n=%d,s=%.2f) kexp %.3f want %.2f;", n, s, r.k_exponent.value_or(NAN), a - 1.0);
  }
  return {ok, detail};
}

Outcome scan() {
  const FracParams p(3, 0.5);
  const auto sub = nonexistence_scan(CandidateFamily::standard(), NonlinearitySpec::power(1, 1.4), p,
                                     1.0, 100.0);
  const auto ctl = supercritical_control(3.0, p);
  const auto sup = nonexistence_scan(CandidateFamily{{}, {}}, NonlinearitySpec::power(1, 3.0), p, 1.0,
                                     100.0, {ctl});
  const bool ok = sub.entries.size() == 400 && sub.certified == 0 && sup.certified >= 1;
  return {ok, fmt("subcritical %d/400 certified; control eps=%.4f tau=%.3f certified %d", sub.certified,
                  ctl.eps, ctl.tau, sup.certified)};
}

Outcome trace() {
  const FracParams p(3, 0.5);
  const auto u = CandidateFamily::member(1.0, 1.0);
  const auto grid = default_r_grid(2.0);
  const auto a = proof_quantity_trace(u, NonlinearitySpec::power(1, 1.4), p, grid);
  const auto zero = NonlinearitySpec::separable(0.0, [](double) { return 0.0; }, "zero");
  const auto b = proof_quantity_trace(u, zero, p, grid);
  const bool ok = a.contradiction_radius.has_value() && !b.contradiction_radius.has_value();
  return {ok, fmt("flag at r = %.1f for t^1.4; f = 0 flagged: %s", a.contradiction_radius.value_or(NAN),
                  b.contradiction_radius ? "yes" : "no")};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"fundamental-solution annihilation", annihilation},
      {"Fourier-symbol oracle", fourier_symbol},
      {"scaling identity", scaling},
      {"sign chains with auto constants", sign_chains},
      {"rate fits", rate_fits},
      {"discrete comparison principle", comparison},
      {"Hopf ratio", hopf},
      {"kslap/qsmp constants", kslap_qsmp},
      {"measure lemma", measure_lemma},
      {"hypothesis suite", hypotheses},
      {"nonexistence scan", scan},
      {"proof-quantity trace", trace}};
  int failed = 0, k = 0;
  for (const auto& [name, fn] : criteria) {
    ++k;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("[%s] %2d %-36s %s (%.1fs)\n", o.pass ? "PASS" : "FAIL", k, name, o.detail.c_str(), dt);
    std::fflush(stdout);
    if (!o.pass) ++failed;
  }
  std::printf("%d/%zu criteria passed\n", int(criteria.size()) - failed, criteria.size());
  return failed;
}
