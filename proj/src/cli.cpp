#include "fraclap/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include "fraclap/estimates.hpp"
#include "fraclap/hypotheses.hpp"
#include "fraclap/liouville.hpp"
#include "fraclap/maxprinciple.hpp"
#include "fraclap/report.hpp"

namespace fraclap::cli {

namespace {

using nlohmann::json;

struct RunConfig {
  int n = 1;
  double s = 0.5;
  double r0 = 2.0;
  double r = 0.0;  // 0 means 10 r0
  double tol = 1e-8;
  int samples = 0;  // 0 means the per-command default
  std::uint64_t seed = 1;
  std::string out = "json";
  std::string output;  // file; stdout when empty
  std::string spec;

  // command selectors
  std::string profile = "fundamental";
  std::vector<double> at;
  double tau = 1.0;
  double freq = 1.0;
  std::string barrier;
  std::string chain = "all";
  std::string domain = "-1:1";
  std::string rhs_interval;
  std::string exterior = "zero";
  double h = 1.0 / 64;
  std::string check = "all";
  std::string condition = "f2";
  double exponent = 1.4;
  double gamma = 0.0;
  double lo = 1.0;
  double hi = 100.0;
  std::vector<double> control;
  double c = 1.0;
  double beta = 1.0;

  FracParams params() const { return FracParams(n, s); }
  QuadSpec quad() const {
    QuadSpec q;
    q.rel_tol = tol;
    q.validate();
    return q;
  }
  double outer() const { return r > 0.0 ? r : 10.0 * r0; }
  int samples_or(int d) const { return samples > 0 ? samples : d; }
};

/// What a subcommand produced: a JSON result, optional CSV rows, a verdict.
struct Outcome {
  json result;
  std::vector<std::array<double, 3>> rows;  // radius, value, err
  bool has_csv = false;
  Verdict verdict = Verdict::Pass;
};

json valued(const OperatorValue& v) {
  return {{"value", number(v.value)}, {"error", number(v.error_estimate)}, {"converged", v.converged}};
}

Verdict from(HypVerdict v) {
  switch (v) {
    case HypVerdict::Holds: return Verdict::Pass;
    case HypVerdict::Fails: return Verdict::Fail;
    case HypVerdict::Inconclusive: return Verdict::Inconclusive;
  }
  return Verdict::Inconclusive;
}

int exit_code(Verdict v) {
  switch (v) {
    case Verdict::Pass: return kPass;
    case Verdict::Fail: return kFail;
    case Verdict::Inconclusive: return kInconclusive;
  }
  return kInconclusive;
}

IntervalSet parse_intervals(const std::string& text) {
  IntervalSet set;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto colon = item.find(':');
    if (colon == std::string::npos) throw ConfigError("interval '" + item + "' is not a:b");
    Interval iv;
    try {
      iv = {std::stod(item.substr(0, colon)), std::stod(item.substr(colon + 1))};
    } catch (const std::exception&) {
      throw ConfigError("interval '" + item + "' is not numeric");
    }
    if (!(iv.b > iv.a)) throw ConfigError("interval '" + item + "' is empty");
    set.push_back(iv);
  }
  if (set.empty()) throw ConfigError("no intervals given");
  return set;
}

NonlinearitySpec load_nonlinearity(const RunConfig& cfg, const FracParams& p) {
  if (cfg.spec.empty()) return NonlinearitySpec::power(1.0, cfg.exponent, cfg.gamma);
  std::ifstream in(cfg.spec);
  if (!in) throw ConfigError("cannot open spec file " + cfg.spec);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("malformed spec file " + cfg.spec + ": " + e.what());
  }
  return NonlinearitySpec::from_json(j, p);
}

// ---------------------------------------------------------------- eval

Outcome cmd_eval(const RunConfig& cfg) {
  const FracParams p = cfg.params();
  const QuadSpec q = cfg.quad();
  const std::vector<double> at = cfg.at.empty() ? std::vector<double>{2.0} : cfg.at;
  Outcome o;
  o.has_csv = true;
  json pts = json::array();
  std::vector<OperatorValue> vals;
  std::vector<double> u;
  if (cfg.profile == "cos") {
    if (p.n() != 1) throw ConfigError("profile cos needs --n 1");
    const double k = cfg.freq;
    for (double x : at) {
      vals.push_back(eval_pointwise_1d([k](double y) { return std::cos(k * y); }, x, p, q));
      u.push_back(std::cos(k * x));
    }
  } else {
    RadialProfile prof;
    if (cfg.profile == "fundamental")
      prof = make_fundamental(p, SignVariant::Phi);
    else if (cfg.profile == "phitilde")
      prof = make_fundamental(p, SignVariant::PhiTilde);
    else if (cfg.profile == "power")
      prof = RadialProfile::single(Piece{{Term::power(1.0, -cfg.tau)}}, "power");
    else
      throw ConfigError("unknown profile '" + cfg.profile + "'");
    const RadialEvaluator ev(p, q);
    vals = ev.batch(RadialFunction::from_profile(prof), at);
    for (double x : at) u.push_back(prof(x));
  }
  for (std::size_t i = 0; i < at.size(); ++i) {
    json e = valued(vals[i]);
    e["x"] = at[i];
    e["u"] = number(u[i]);
    pts.push_back(e);
    o.rows.push_back({at[i], vals[i].value, vals[i].error_estimate});
    if (!vals[i].converged) o.verdict = Verdict::Inconclusive;
  }
  o.result = {{"n", p.n()}, {"s", p.s()}, {"profile", cfg.profile}, {"points", pts}};
  if (cfg.profile == "power") o.result["tau"] = cfg.tau;
  if (cfg.profile == "cos") o.result["freq"] = cfg.freq;
  return o;
}

// ---------------------------------------------------------------- barrier

Outcome cmd_barrier(const RunConfig& cfg) {
  const FracParams p = cfg.params();
  const auto id = barrier_from_string(cfg.barrier);
  if (!id) throw ConfigError("unknown barrier '" + cfg.barrier + "'");
  if (required_branch(*id) != p.branch())
    throw ConfigError("barrier " + cfg.barrier + " needs the " + to_string(required_branch(*id)) +
                      " branch");
  const auto constants = BarrierConstants::with_radii(cfg.r0, cfg.outer());
  constants.validate();
  const RadialProfile prof = make_barrier(*id, constants, p);
  const std::vector<double> radii =
      cfg.at.empty() ? sample_radii({0.5 * cfg.r0, 4.0 * constants.r}, cfg.samples_or(60)) : cfg.at;
  const RadialEvaluator ev(p, cfg.quad());
  const auto f = RadialFunction::from_profile(prof);
  Outcome o;
  o.has_csv = true;
  json pts = json::array();
  for (double x : radii) {
    json e{{"x", x}, {"u", number(prof(x))}};
    try {
      const auto v = ev(f, x);
      e["operator"] = valued(v);
      o.rows.push_back({x, v.value, v.error_estimate});
      if (!v.converged) o.verdict = Verdict::Inconclusive;
    } catch (const EvaluationPointError& ex) {
      e["operator"] = nullptr;
      e["skipped"] = ex.what();
    }
    pts.push_back(e);
  }
  o.result = {{"n", p.n()}, {"s", p.s()}, {"barrier", to_string(*id)},
              {"constants", to_json(constants)}, {"points", pts}};
  return o;
}

// ---------------------------------------------------------------- verify-chain

Outcome cmd_verify_chain(const RunConfig& cfg) {
  const FracParams p = cfg.params();
  const QuadSpec q = cfg.quad();
  const Sampling sampling{cfg.samples_or(200)};
  std::vector<ChainId> ids;
  if (cfg.chain == "all") {
    for (ChainId id : all_chains())
      if (required_branch(chain_info(id).barrier) == p.branch()) ids.push_back(id);
  } else {
    const auto id = chain_from_string(cfg.chain);
    if (!id) throw ConfigError("unknown chain '" + cfg.chain + "'");
    ids.push_back(*id);
  }
  Outcome o;
  o.has_csv = ids.size() == 1;
  json reports = json::array();
  for (ChainId id : ids) {
    const auto choice = choose_constants(id, p, cfg.r0, cfg.outer(), q, sampling);
    auto rep = verify_chain(id, p, choice.constants, sampling, q);
    rep.verdict = combine(rep.verdict, choice.status);
    json j = to_json(rep);
    j["constant_choice"] = {{"status", to_string(choice.status)},
                            {"worst_ratio", number(choice.worst_ratio)},
                            {"note", choice.note}};
    reports.push_back(j);
    o.verdict = combine(o.verdict, rep.verdict);
    if (o.has_csv)
      for (const auto& sp : rep.samples) o.rows.push_back({sp.x, sp.value, sp.err});
  }
  o.result = {{"n", p.n()}, {"s", p.s()}, {"r0", cfg.r0}, {"r", cfg.outer()}, {"chains", reports},
              {"verdict", to_string(o.verdict)}};
  return o;
}

// ---------------------------------------------------------------- solve

Outcome cmd_solve(const RunConfig& cfg) {
  DirichletSpec spec;
  spec.domain = parse_intervals(cfg.domain);
  spec.s = cfg.s;
  if (cfg.rhs_interval.empty())
    spec.rhs = [](double) { return 1.0; };
  else
    spec.rhs = indicator(parse_intervals(cfg.rhs_interval));
  if (cfg.exterior == "zero")
    spec.exterior = Exterior::Zero;
  else if (cfg.exterior == "phistar")
    spec.exterior = Exterior::PhiStar;
  else
    throw ConfigError("exterior must be zero or phistar");
  if (!(cfg.h > 0.0)) throw ConfigError("--step must be positive");
  const auto coarse = solve_dirichlet(spec, cfg.h);
  const auto fine = solve_dirichlet(spec, 0.5 * cfg.h);
  // difference to the half-step solution at shared nodes
  Outcome o;
  o.has_csv = true;
  json pts = json::array();
  double worst = 0.0;
  std::size_t k = 0;
  for (std::size_t i = 0; i < coarse.x.size(); ++i) {
    while (k < fine.x.size() && fine.x[k] < coarse.x[i] - 0.25 * cfg.h) ++k;
    const double err = k < fine.x.size() ? std::abs(fine.value[k] - coarse.value[i]) : NAN;
    worst = std::max(worst, err);
    pts.push_back({{"x", coarse.x[i]}, {"value", coarse.value[i]}, {"error", number(err)}});
    o.rows.push_back({coarse.x[i], coarse.value[i], err});
  }
  const bool ok = coarse.residual_norm <= 1e-8 * std::max(1.0, coarse.rhs_norm);
  o.verdict = ok ? Verdict::Pass : Verdict::Fail;
  o.result = {{"s", cfg.s},
              {"h", cfg.h},
              {"exterior", to_string(spec.exterior)},
              {"residual_norm", coarse.residual_norm},
              {"rhs_norm", coarse.rhs_norm},
              {"max_refinement_difference", number(worst)},
              {"nodes", pts}};
  return o;
}

// ---------------------------------------------------------------- maxprinciple

Outcome cmd_maxprinciple(const RunConfig& cfg) {
  const std::vector<std::string> known{"comparison", "maximum", "hopf", "kslap", "qsmp", "measure"};
  std::vector<std::string> checks;
  if (cfg.check == "all")
    checks = known;
  else if (std::find(known.begin(), known.end(), cfg.check) != known.end())
    checks = {cfg.check};
  else
    throw ConfigError("unknown check '" + cfg.check + "'");
  Outcome o;
  json res;
  auto record = [&](const std::string& name, json j, Verdict v) {
    j["verdict"] = to_string(v);
    res[name] = std::move(j);
    o.verdict = combine(o.verdict, v);
  };
  for (const auto& c : checks) {
    if (c == "comparison" || c == "maximum") {
      const int cases = cfg.samples_or(c == "comparison" ? 100 : 50);
      const auto b = c == "comparison" ? comparison_battery(cfg.seed, cases, cfg.h)
                                       : max_principle_battery(cfg.seed, cases, cfg.h);
      record(c,
             {{"seed", cfg.seed}, {"cases", b.cases}, {"violations", b.violations},
              {"worst", number(b.worst)}},
             b.violations == 0 ? Verdict::Pass : Verdict::Fail);
    } else if (c == "hopf") {
      DirichletSpec spec;
      spec.domain = {{-1.0, 1.0}};
      spec.s = cfg.s;
      spec.rhs = indicator({{-0.1, 0.1}});
      const auto r = verify_hopf_ratio(spec, cfg.h);
      record(c,
             {{"min_ratio", r.min_ratio}, {"c_omega", r.c_omega}, {"c_omega_fine", r.c_omega_fine},
              {"stability", r.stability}},
             r.positive && r.stable ? Verdict::Pass : Verdict::Fail);
    } else if (c == "kslap") {
      const auto a = verify_kslap(kslap_battery(), cfg.h, cfg.s);
      const auto b = verify_kslap(kslap_battery(), 0.5 * cfg.h, cfg.s);
      const double ratio = b.c_bar / a.c_bar;
      record(c,
             {{"c_bar", a.c_bar}, {"c_bar_fine", b.c_bar}, {"ratios", a.ratios},
              {"notices", a.notices}, {"stability", number(ratio)}},
             a.c_bar > 0 && ratio >= 0.5 && ratio <= 2.0 ? Verdict::Pass : Verdict::Fail);
    } else if (c == "qsmp") {
      json j;
      Verdict v = Verdict::Pass;
      for (auto variant : {QsmpVariant::I, QsmpVariant::II}) {
        const std::string name = variant == QsmpVariant::I ? "I" : "II";
        try {
          const IntervalSet omega = variant == QsmpVariant::I ? IntervalSet{{-2.0, 2.0}}
                                                              : IntervalSet{{1.0, 4.0}};
          const IntervalSet K = variant == QsmpVariant::I ? IntervalSet{{-0.5, 0.5}}
                                                          : IntervalSet{{2.0, 3.0}};
          const IntervalSet A = variant == QsmpVariant::I ? IntervalSet{{1.0, 1.5}}
                                                          : IntervalSet{{3.25, 3.5}};
          const auto r = verify_qsmp(omega, K, A, variant, cfg.s, cfg.h);
          const bool ok = r.positive && r.stable;
          j[name] = {{"c0", r.c0}, {"c0_fine", r.c0_fine}, {"stability", r.stability},
                     {"verdict", ok ? "PASS" : "FAIL"}};
          v = combine(v, ok ? Verdict::Pass : Verdict::Fail);
        } catch (const ConfigError& e) {
          j[name] = {{"verdict", "INCONCLUSIVE"}, {"note", e.what()}};
          v = combine(v, Verdict::Inconclusive);
        }
      }
      record(c, j, v);
    } else if (c == "measure") {
      json j;
      std::vector<int> ks;
      for (double h : {cfg.h, 0.5 * cfg.h}) {
        DirichletSpec spec;
        spec.domain = kslap_domain();
        spec.s = cfg.s;
        spec.rhs = indicator(kslap_battery().front());
        const auto g = discretize(spec, h);
        const auto m = verify_measure_lemma(g, solve_dirichlet(g), 0.5);
        j[h == cfg.h ? "coarse" : "fine"] = {{"k", m.k}, {"c_bar", m.c_bar}, {"found", m.found}};
        ks.push_back(m.found ? m.k : -100);
      }
      const bool ok = ks[0] >= 0 && ks[1] >= 0 && std::abs(ks[0] - ks[1]) <= 1;
      record(c, j, ok ? Verdict::Pass : Verdict::Fail);
    }
  }
  o.result = {{"s", cfg.s}, {"h", cfg.h}, {"checks", res}, {"verdict", to_string(o.verdict)}};
  return o;
}

// ---------------------------------------------------------------- check-f

Outcome cmd_check_f(const RunConfig& cfg) {
  const FracParams p = cfg.params();
  const auto f = load_nonlinearity(cfg, p);
  f.validate(p);
  const auto rep = check_condition(cfg.condition, f, p);
  Outcome o;
  o.has_csv = true;
  for (std::size_t i = 0; i < rep.samples.size(); ++i)
    o.rows.push_back({rep.samples[i], rep.quantity[i], 0.0});
  o.verdict = from(rep.verdict);
  o.result = to_json(rep);
  o.result["nonlinearity"] = f.name;
  o.result["warnings"] = f.warnings;
  o.result["n"] = p.n();
  o.result["s"] = p.s();
  return o;
}

// ---------------------------------------------------------------- scan

Outcome cmd_scan(const RunConfig& cfg) {
  const FracParams p = cfg.params();
  const QuadSpec q = cfg.quad();
  const auto f = load_nonlinearity(cfg, p);
  f.validate(p);
  std::vector<ControlMember> controls;
  for (double pe : cfg.control) controls.push_back(supercritical_control(pe, p, q));
  const auto scan =
      nonexistence_scan(CandidateFamily::standard(), f, p, cfg.lo, cfg.hi, controls,
                        cfg.samples_or(100), q);
  const auto grid = default_r_grid(f.r0);
  const auto bad = cross_check(scan, p, grid);
  int family_certified = 0;
  for (const auto& e : scan.entries)
    if (!e.control && e.verdict == MemberVerdict::Supersolution) ++family_certified;
  Outcome o;
  o.result = to_json(scan);
  o.result["family_certified"] = family_certified;
  o.result["cross_check_failures"] = bad;
  o.result["controls"] = json::array();
  for (const auto& c : controls)
    o.result["controls"].push_back(
        {{"p", c.p}, {"tau", c.tau}, {"lambda", c.lambda}, {"eps", c.eps}});
  // a certified member contradicts nonexistence only when f passed its hypothesis
  if (!scan.exploratory && (family_certified > 0 || !bad.empty()))
    o.verdict = Verdict::Fail;
  else if (scan.inconclusive > 0)
    o.verdict = Verdict::Inconclusive;
  o.result["verdict"] = to_string(o.verdict);
  return o;
}

// ---------------------------------------------------------------- trace

Outcome cmd_trace(const RunConfig& cfg) {
  const FracParams p = cfg.params();
  const auto f = load_nonlinearity(cfg, p);
  const auto u = CandidateFamily::member(cfg.c, cfg.beta);
  const auto grid = default_r_grid(f.r0);
  const auto t = proof_quantity_trace(u, f, p, grid);
  Outcome o;
  o.has_csv = true;
  for (const auto& row : t.rows) o.rows.push_back({row.r, row.m, 0.0});
  o.result = to_json(t);
  o.result["candidate"] = u.name;
  o.result["nonlinearity"] = f.name;
  return o;
}

// ---------------------------------------------------------------- report

Outcome cmd_report(const RunConfig& cfg) {
  const FracParams p = cfg.params();
  Outcome o;
  json items;
  auto add = [&](const std::string& name, Verdict v, json detail) {
    detail["verdict"] = to_string(v);
    items[name] = std::move(detail);
    o.verdict = combine(o.verdict, v);
  };
  {
    const auto phi = RadialFunction::from_profile(make_fundamental(p, SignVariant::Phi));
    const std::vector<double> radii{1.5, 3.0, 10.0, 30.0};
    const auto vals = RadialEvaluator(p, cfg.quad()).batch(phi, radii);
    double worst = 0.0;
    for (std::size_t i = 0; i < radii.size(); ++i)
      worst = std::max(worst, std::abs(vals[i].value) / std::max(1.0, std::abs(phi(radii[i]))));
    add("annihilation", worst <= 1e-4 ? Verdict::Pass : Verdict::Fail, {{"worst", worst}});
  }
  {
    RunConfig c = cfg;
    c.check = "comparison";
    c.samples = 20;
    const auto r = cmd_maxprinciple(c);
    add("comparison", r.verdict, r.result["checks"]["comparison"]);
  }
  if (p.n() > 2.0 * p.s()) {
    const auto f = load_nonlinearity(cfg, p);
    const auto h = check_f2(f, p);
    add("f2", from(h.verdict), {{"nonlinearity", f.name}, {"trend", to_string(h.trend)}});
  }
  o.result = {{"n", p.n()}, {"s", p.s()}, {"seed", cfg.seed}, {"items", items},
              {"verdict", to_string(o.verdict)}};
  return o;
}

void emit(std::ostream& os, const RunConfig& cfg, const std::string& kind, const Outcome& o) {
  if (cfg.out == "csv") {
    os << "radius,value,err\n";
    os.precision(17);
    for (const auto& r : o.rows) os << r[0] << ',' << r[1] << ',' << r[2] << '\n';
  } else {
    os << dump(envelope(kind, o.result));
  }
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"fraclap: numerical checks for fractional Liouville-type estimates"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto common = [&](CLI::App* sc) {
    sc->add_option("--n", cfg.n, "dimension")->check(CLI::Range(1, 3));
    sc->add_option("--s", cfg.s, "order s in (0, 1)");
    sc->add_option("--r0", cfg.r0, "inner radius");
    sc->add_option("--r", cfg.r, "outer radius (default 10 r0)");
    sc->add_option("--tol", cfg.tol, "relative quadrature tolerance");
    sc->add_option("--samples", cfg.samples, "sample count");
    sc->add_option("--seed", cfg.seed, "seed of randomized batteries");
    sc->add_option("--out", cfg.out, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    sc->add_option("--output", cfg.output, "write the report to a file");
    sc->add_option("--spec", cfg.spec, "nonlinearity spec (JSON)");
  };

  auto* eval = app.add_subcommand("eval", "operator of a radial profile");
  common(eval);
  eval->add_option("--profile", cfg.profile, "fundamental, phitilde, power or cos");
  eval->add_option("--at", cfg.at, "evaluation radii");
  eval->add_option("--tau", cfg.tau, "exponent of |x|^-tau");
  eval->add_option("--freq", cfg.freq, "frequency for cos");

  auto* barrier = app.add_subcommand("barrier", "barrier values and operator");
  common(barrier);
  barrier->add_option("--name", cfg.barrier, "barrier id")->required();
  barrier->add_option("--at", cfg.at, "evaluation radii");

  auto* chain = app.add_subcommand("verify-chain", "sign and bound chains");
  common(chain);
  chain->add_option("--chain", cfg.chain, "chain id or all");

  auto* solve = app.add_subcommand("solve", "1D nonlocal Dirichlet problem");
  common(solve);
  solve->add_option("--domain", cfg.domain, "intervals a:b,c:d");
  solve->add_option("--rhs-interval", cfg.rhs_interval, "rhs = indicator of these intervals");
  solve->add_option("--exterior", cfg.exterior, "zero or phistar");
  solve->add_option("--step", cfg.h, "lattice step");

  auto* mp = app.add_subcommand("maxprinciple", "discrete maximum principle checks");
  common(mp);
  mp->add_option("--check", cfg.check, "comparison, maximum, hopf, kslap, qsmp, measure or all");
  mp->add_option("--step", cfg.h, "lattice step");

  auto* chf = app.add_subcommand("check-f", "hypotheses on the nonlinearity");
  common(chf);
  chf->add_option("--condition", cfg.condition, "f2, f2prime, f3prime or f4prime");
  chf->add_option("--exponent", cfg.exponent, "g(t) = t^exponent without --spec");
  chf->add_option("--gamma", cfg.gamma, "weight |x|^-gamma without --spec");

  auto* scan = app.add_subcommand("scan", "supersolution residual scan");
  common(scan);
  scan->add_option("--exponent", cfg.exponent, "g(t) = t^exponent without --spec");
  scan->add_option("--gamma", cfg.gamma, "weight |x|^-gamma without --spec");
  scan->add_option("--lo", cfg.lo, "inner radius of the residual region");
  scan->add_option("--hi", cfg.hi, "outer radius of the residual region");
  scan->add_option("--control", cfg.control, "exponents p of eps|x|^-tau controls");

  auto* trace = app.add_subcommand("trace", "proof quantities along r");
  common(trace);
  trace->add_option("--exponent", cfg.exponent, "g(t) = t^exponent without --spec");
  trace->add_option("--gamma", cfg.gamma, "weight |x|^-gamma without --spec");
  trace->add_option("--c", cfg.c, "candidate amplitude");
  trace->add_option("--beta", cfg.beta, "candidate decay");

  auto* rep = app.add_subcommand("report", "short cross-module summary");
  common(rep);
  rep->add_option("--exponent", cfg.exponent, "g(t) = t^exponent without --spec");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kUsage;
  }

  auto* sub = app.get_subcommands().front();
  const std::string kind = sub->get_name();
  try {
    Outcome o;
    if (sub == eval) o = cmd_eval(cfg);
    else if (sub == barrier) o = cmd_barrier(cfg);
    else if (sub == chain) o = cmd_verify_chain(cfg);
    else if (sub == solve) o = cmd_solve(cfg);
    else if (sub == mp) o = cmd_maxprinciple(cfg);
    else if (sub == chf) o = cmd_check_f(cfg);
    else if (sub == scan) o = cmd_scan(cfg);
    else if (sub == trace) o = cmd_trace(cfg);
    else o = cmd_report(cfg);

    if (cfg.out == "csv" && !o.has_csv) throw ConfigError(kind + " has no CSV output");
    if (cfg.output.empty()) {
      emit(out, cfg, kind, o);
    } else {
      std::ofstream f(cfg.output);
      if (!f) throw ConfigError("cannot write " + cfg.output);
      emit(f, cfg, kind, o);
    }
    return exit_code(o.verdict);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
  } catch (const DomainError& e) {
    err << "domain error: " << e.what() << '\n';
  } catch (const EvaluationPointError& e) {
    err << "evaluation point error: " << e.what() << '\n';
  } catch (const std::invalid_argument& e) {
    err << "invalid argument: " << e.what() << '\n';
  }
  return kUsage;
}

int run(int argc, const char* const* argv) { return run(argc, argv, std::cout, std::cerr); }

}  // namespace fraclap::cli
