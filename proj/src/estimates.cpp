#include "fraclap/estimates.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>

namespace fraclap {

namespace {

using R = Relation;

constexpr std::array<ChainInfo, 16> kChains{{
    {ChainId::CA3D, "CA3D", BarrierId::VTilde, R::UpperBound, Rate::InvR, "<= 2 C1 / r"},
    {ChainId::CA3PR, "CA3PR", BarrierId::GTilde, R::NegativeBound, Rate::InvR, "<= -C~ C2 / r"},
    {ChainId::LVC, "LVC", BarrierId::HHat, R::SignNegative, Rate::None, "(v~ + g~) < 0"},
    {ChainId::CA1_00, "CA1_00", BarrierId::WCheck, R::SignNegative, Rate::None, "w^ < 0 outside B_r"},
    {ChainId::CAR3PP, "CAR3PP", BarrierId::VCheck, R::UpperBound, Rate::LogOverR, "<= 2 C5 log(2r) / r"},
    {ChainId::CAR3PR, "CAR3PR", BarrierId::GCheck, R::NegativeBound, Rate::LogOverR, "<= -C^ C7 log(2r) / r"},
    {ChainId::NBBN, "NBBN", BarrierId::HCheck, R::SignNegative, Rate::None, "(v^ + g^) < 0"},
    {ChainId::CA1F, "CA1F", BarrierId::PsiHat, R::UpperBound, Rate::InvDistOne, "<= C9 / (|x|-1)^{n+2s}"},
    {ChainId::CA1AA, "CA1AA", BarrierId::GammaTilde, R::NegativeBound, Rate::InvSumOne, "<= -Cg / (1+|x|)^{n+2s}"},
    {ChainId::VASK, "VASK", BarrierId::PsiHatGamma, R::SignNegative, Rate::None, "Psi^_gamma < 0 beyond R0"},
    {ChainId::CA3Q, "CA3Q", BarrierId::Psi, R::UpperBound, Rate::RMinus2s, "<= C11 r^{-2s}"},
    {ChainId::CA3P, "CA3P", BarrierId::G, R::NegativeBound, Rate::RMinus2s, "<= -C_g C12 r^{-2s}"},
    {ChainId::NITU, "NITU", BarrierId::PsiG, R::SignNegative, Rate::None, "(Psi + g) < 0"},
    {ChainId::CA10, "CA10", BarrierId::WHat, R::UpperBound, Rate::R2sOverDist, "<= C14 r^{2s} / (|x|-r)^{n+2s}"},
    {ChainId::CA10L, "CA10L", BarrierId::GammaHat, R::NegativeBound, Rate::MuR2sOverSum, "<= -C16 mu r^{2s} / (|x|+2r)^{n+2s}"},
    {ChainId::RI, "RI", BarrierId::WGamma, R::SignNegative, Rate::None, "w_gamma < 0 beyond max(2r, R0)"},
}};

struct Eval {
  std::vector<double> x;
  std::vector<OperatorValue> v;
};

Eval evaluate(const RadialProfile& prof, Region region, int points, const FracParams& p,
              const QuadSpec& q, Exec exec) {
  Eval e;
  e.x = sample_radii(region, points);
  RadialEvaluator ev(p, q);
  e.v = ev.batch(RadialFunction::from_profile(prof), e.x, exec);
  return e;
}

// The cited displays with explicit constants: C9 and C14 = C|S|/(2s), C_gamma = C|B_1|.
std::optional<double> cited_constant(ChainId id, const FracParams& p) {
  switch (id) {
    case ChainId::CA1F:
    case ChainId::CA10: return p.c_ns() * p.sphere_area() / (2.0 * p.s());
    case ChainId::CA1AA: return p.c_ns() * p.ball_volume();
    default: return std::nullopt;
  }
}

BarrierConstants scaled_out(BarrierConstants c) {
  c.r *= 10.0;
  if (c.R0 > 0.0) c.R0 *= 10.0;
  return c;
}

}  // namespace

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "PASS";
    case Verdict::Fail: return "FAIL";
    case Verdict::Inconclusive: return "INCONCLUSIVE";
  }
  return "?";
}

Verdict combine(Verdict a, Verdict b) {
  if (a == Verdict::Fail || b == Verdict::Fail) return Verdict::Fail;
  if (a == Verdict::Inconclusive || b == Verdict::Inconclusive) return Verdict::Inconclusive;
  return Verdict::Pass;
}

const ChainInfo& chain_info(ChainId id) {
  for (const auto& c : kChains)
    if (c.id == id) return c;
  throw ConfigError("unknown chain");
}

std::string to_string(ChainId id) { return chain_info(id).name; }

std::optional<ChainId> chain_from_string(std::string_view name) {
  for (const auto& c : kChains)
    if (name == c.name) return c.id;
  return std::nullopt;
}

const std::vector<ChainId>& all_chains() {
  static const std::vector<ChainId> ids = [] {
    std::vector<ChainId> v;
    for (const auto& c : kChains) v.push_back(c.id);
    return v;
  }();
  return ids;
}

std::string to_string(Rate r) {
  switch (r) {
    case Rate::None: return "none";
    case Rate::InvR: return "1/r";
    case Rate::LogOverR: return "log(2r)/r";
    case Rate::RMinus2s: return "r^-2s";
    case Rate::InvDistOne: return "(|x|-1)^-(n+2s)";
    case Rate::InvSumOne: return "(|x|+1)^-(n+2s)";
    case Rate::R2sOverDist: return "r^2s (|x|-r)^-(n+2s)";
    case Rate::MuR2sOverSum: return "mu r^2s (|x|+2r)^-(n+2s)";
  }
  return "?";
}

Region chain_region(ChainId id, const BarrierConstants& c, const FracParams& p) {
  const double r0 = c.r0, r = c.r;
  switch (id) {
    case ChainId::CA1_00: return {r, 10 * r};
    case ChainId::VASK: return {c.R0 > 0.0 ? c.R0 : vask_radius(p), 10 * r};
    case ChainId::CA10:
    case ChainId::CA10L: return {2 * r, 20 * r};
    case ChainId::RI: return {std::max(2 * r, c.R0), 50 * r};
    default: return {r0, r};
  }
}

double rate_value(Rate rate, double x, const BarrierConstants& c, const FracParams& p) {
  const double r = c.r, s = p.s(), a = p.n() + 2.0 * s;
  switch (rate) {
    case Rate::None: return 1.0;
    case Rate::InvR: return 1.0 / r;
    case Rate::LogOverR: return std::log(2.0 * r) / r;
    case Rate::RMinus2s: return std::pow(r, -2.0 * s);
    case Rate::InvDistOne: return std::pow(x - 1.0, -a);
    case Rate::InvSumOne: return std::pow(x + 1.0, -a);
    case Rate::R2sOverDist: return std::pow(r, 2.0 * s) * std::pow(x - r, -a);
    case Rate::MuR2sOverSum: return c.mu * std::pow(r, 2.0 * s) * std::pow(x + 2.0 * r, -a);
  }
  return 1.0;
}

std::vector<double> sample_radii(Region region, int points) {
  if (!(region.lo > 0.0) || !(region.hi > region.lo)) throw ConfigError("sampling region is empty");
  if (points < 1) throw ConfigError("need at least one sample point");
  std::vector<double> x(points);
  const double l = std::log(region.lo), h = std::log(region.hi);
  for (int i = 0; i < points; ++i) x[i] = std::exp(l + (h - l) * (i + 0.5) / points);
  return x;
}

VerificationReport verify_chain(ChainId id, const FracParams& p, const BarrierConstants& c,
                                const Sampling& sampling, const QuadSpec& q, Exec exec) {
  const ChainInfo& info = chain_info(id);
  VerificationReport rep;
  rep.chain = id;
  rep.n = p.n();
  rep.s = p.s();
  rep.constants = c;

  const Region region = chain_region(id, c, p);
  const Eval e = evaluate(make_barrier(info.barrier, c, p), region, sampling.points, p, q, exec);
  int unconverged = 0;
  for (std::size_t i = 0; i < e.x.size(); ++i) {
    rep.samples.push_back({e.x[i], e.v[i].value, e.v[i].error_estimate, e.v[i].converged});
    if (!e.v[i].converged) ++unconverged;
  }
  const bool too_many_unconverged = unconverged > 0.05 * static_cast<double>(e.x.size());

  if (info.relation == Relation::SignNegative) {
    int fails = 0, near_zero = 0;
    double margin = std::numeric_limits<double>::infinity();
    for (const auto& sp : rep.samples) {
      const double slack = -sp.value - 2.0 * sp.err;
      margin = std::min(margin, slack);
      if (slack > 0.0) continue;
      if (sp.value > 2.0 * sp.err) ++fails;
      else ++near_zero;
    }
    rep.worst_margin = margin;
    if (fails > 0) {
      rep.verdict = Verdict::Fail;
      rep.note = std::to_string(fails) + " sample(s) nonnegative";
    } else if (near_zero > 0 || unconverged > 0) {
      rep.verdict = Verdict::Inconclusive;
      rep.note = std::to_string(near_zero) + " value(s) within error of zero, " +
                 std::to_string(unconverged) + " unconverged";
    } else {
      rep.verdict = Verdict::Pass;
    }
    return rep;
  }

  // Rate chains: fit the constant at r and at 10 r, demand +-30% agreement.
  auto fit_constant = [&](const Eval& ev, const BarrierConstants& cc) {
    double extreme = info.relation == Relation::UpperBound ? -std::numeric_limits<double>::infinity()
                                                           : std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < ev.x.size(); ++i) {
      const double ratio = ev.v[i].value / rate_value(info.rate, ev.x[i], cc, p);
      extreme = info.relation == Relation::UpperBound ? std::max(extreme, ratio)
                                                      : std::min(extreme, -ratio);
    }
    return info.relation == Relation::UpperBound ? 1.1 * extreme : 0.9 * extreme;
  };
  const BarrierConstants outer = scaled_out(c);
  const Eval e2 = evaluate(make_barrier(info.barrier, outer, p), chain_region(id, outer, p),
                           sampling.points, p, q, exec);
  ConstantFit fit;
  fit.constant = fit_constant(e, c);
  fit.constant_outer = fit_constant(e2, outer);
  fit.stability = fit.constant_outer / fit.constant;
  rep.fit = fit;

  const double sign = info.relation == Relation::UpperBound ? 1.0 : -1.0;
  double margin = std::numeric_limits<double>::infinity();
  int sign_violations = 0;
  for (const auto& sp : rep.samples) {
    const double bound = sign * fit.constant * rate_value(info.rate, sp.x, c, p);
    margin = std::min(margin, bound - sp.value - 2.0 * sp.err);
    if (info.relation == Relation::NegativeBound && !(sp.value < -2.0 * sp.err)) ++sign_violations;
  }
  rep.worst_margin = margin;

  if (auto pc = cited_constant(id, p)) {
    rep.cited_constant = *pc;
    for (const auto& sp : rep.samples) {
      const double bound = sign * *pc * rate_value(info.rate, sp.x, c, p);
      if (sp.value - 2.0 * sp.err > bound) rep.cited_constant_ok = false;
    }
  }

  const bool stable = fit.constant > 0.0 && std::isfinite(fit.constant) &&
                      fit.constant_outer > 0.0 && std::abs(fit.stability - 1.0) <= 0.3;
  if (sign_violations > 0 || !rep.cited_constant_ok || fit.constant <= 0.0) {
    rep.verdict = Verdict::Fail;
    rep.note = sign_violations > 0 ? "values not strictly negative"
               : !rep.cited_constant_ok ? "cited constant violated"
                                        : "no positive constant fits";
  } else if (!stable || too_many_unconverged || margin < 0.0) {
    rep.verdict = Verdict::Inconclusive;
    rep.note = !stable ? "constant not stable between r and 10r" : "quadrature error too large";
  } else {
    rep.verdict = Verdict::Pass;
  }
  return rep;
}

ConstantChoice choose_constants(ChainId id, const FracParams& p, double r0, double r,
                                const QuadSpec& q, const Sampling& sampling, Exec exec) {
  ConstantChoice out;
  out.constants = BarrierConstants::with_radii(r0, r);
  if (r > 0.0 && r <= r0) throw ConfigError("outer radius must exceed r0");
  out.constants.validate();
  BarrierConstants& c = out.constants;

  BarrierId base, corr;
  double BarrierConstants::*slot;
  switch (id) {
    case ChainId::LVC: base = BarrierId::VTilde, corr = BarrierId::GTilde, slot = &BarrierConstants::c_tilde_g; break;
    case ChainId::NBBN: base = BarrierId::VCheck, corr = BarrierId::GCheck, slot = &BarrierConstants::c_check_g; break;
    case ChainId::NITU: base = BarrierId::Psi, corr = BarrierId::G, slot = &BarrierConstants::c_g; break;
    case ChainId::RI: base = BarrierId::WHat, corr = BarrierId::GammaHat, slot = &BarrierConstants::mu; break;
    case ChainId::VASK:
      c.R0 = vask_radius(p);
      out.note = "R0 from the explicit upper bounds of the two pieces";
      return out;
    default:
      out.note = "chain has no free constant";
      return out;
  }
  if (id == ChainId::RI) c.R0 = 2.0 * c.r;

  double worst = -std::numeric_limits<double>::infinity();
  for (const BarrierConstants& cc : {c, scaled_out(c)}) {
    BarrierConstants unit = cc;
    unit.*slot = 1.0;
    const Region region = chain_region(id, cc, p);
    const Eval eb = evaluate(make_barrier(base, unit, p), region, sampling.points, p, q, exec);
    const Eval ec = evaluate(make_barrier(corr, unit, p), region, sampling.points, p, q, exec);
    for (std::size_t i = 0; i < eb.x.size(); ++i) {
      const double neg = -ec.v[i].value;
      if (!(neg > 2.0 * ec.v[i].error_estimate)) {
        out.status = Verdict::Inconclusive;
        out.note = "correction term not strictly negative at x = " + std::to_string(eb.x[i]);
        return out;
      }
      worst = std::max(worst, (eb.v[i].value + 2.0 * eb.v[i].error_estimate) / neg);
    }
  }
  out.worst_ratio = worst;
  if (worst > 0.0) {
    c.*slot = 2.0 * worst;
  } else {
    c.*slot = 1.0;
    out.note = "base term already negative; constant left at 1";
  }
  return out;
}

RateFit fit_rate(std::span<const double> r, std::span<const double> values, Rate rate, double s) {
  if (r.size() != values.size() || r.size() < 2) throw ConfigError("fit needs matching samples");
  const std::size_t m = r.size();
  std::vector<double> lx(m), ly(m);
  for (std::size_t i = 0; i < m; ++i) {
    if (!(r[i] > 0.0) || values[i] == 0.0) throw ConfigError("fit needs positive r and nonzero values");
    lx[i] = std::log(r[i]);
    ly[i] = std::log(std::abs(values[i]));
  }
  const double mx = std::accumulate(lx.begin(), lx.end(), 0.0) / m;
  const double my = std::accumulate(ly.begin(), ly.end(), 0.0) / m;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
  }
  RateFit f;
  f.slope = sxy / sxx;
  const double icpt = my - f.slope * mx;
  f.constant = std::exp(icpt);
  double ss = 0.0;
  for (std::size_t i = 0; i < m; ++i) ss += std::pow(ly[i] - icpt - f.slope * lx[i], 2);
  f.residual = std::sqrt(ss / m);
  if (rate != Rate::None) {
    const FracParams p(1, s);
    double lo = std::numeric_limits<double>::infinity(), hi = 0.0, lsum = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      BarrierConstants c;
      c.r = r[i];
      const double k = std::abs(values[i]) / rate_value(rate, r[i], c, p);
      lo = std::min(lo, k);
      hi = std::max(hi, k);
      lsum += std::log(k);
    }
    f.rate_constant = std::exp(lsum / m);
    f.rate_spread = hi / lo;
  }
  return f;
}

RateStudy rate_study(ChainId id, const FracParams& p, const BarrierConstants& base,
                     std::span<const double> radii, const Sampling& sampling, const QuadSpec& q,
                     Exec exec) {
  const ChainInfo& info = chain_info(id);
  RateStudy st{id, {radii.begin(), radii.end()}, {}, {}, {}};
  for (double r : radii) {
    BarrierConstants c = base;
    c.r = r;
    const Eval e = evaluate(make_barrier(info.barrier, c, p), chain_region(id, c, p),
                            sampling.points, p, q, exec);
    std::size_t k = 0;
    for (std::size_t i = 1; i < e.v.size(); ++i)
      if (e.v[i].value > e.v[k].value) k = i;
    st.maxima.push_back(e.v[k].value);
    st.errors.push_back(e.v[k].error_estimate);
  }
  st.fit = fit_rate(st.radii, st.maxima, info.rate, p.s());
  return st;
}

nlohmann::json to_json(const BarrierConstants& c) {
  return {{"c_tilde_g", c.c_tilde_g}, {"c_check_g", c.c_check_g}, {"c_g", c.c_g},
          {"mu", c.mu}, {"r0", c.r0}, {"r", c.r}, {"R0", c.R0}};
}

nlohmann::json to_json(const VerificationReport& r) {
  nlohmann::json j;
  j["chain"] = to_string(r.chain);
  j["claim"] = chain_info(r.chain).claim;
  j["params"] = {{"n", r.n}, {"s", r.s}};
  j["constants"] = to_json(r.constants);
  auto& samples = j["samples"] = nlohmann::json::array();
  for (const auto& sp : r.samples)
    samples.push_back({{"x", sp.x}, {"value", sp.value}, {"err", sp.err}, {"converged", sp.converged}});
  j["worst_margin"] = r.worst_margin;
  if (r.fit) {
    j["fit"] = {{"rate", to_string(chain_info(r.chain).rate)},
                {"constant", r.fit->constant},
                {"constant_at_10r", r.fit->constant_outer},
                {"stability", r.fit->stability}};
  } else {
    j["fit"] = nullptr;
  }
  if (r.cited_constant) {
    j["cited_constant"] = {{"value", *r.cited_constant}, {"holds", r.cited_constant_ok}};
  }
  j["verdict"] = to_string(r.verdict);
  j["note"] = r.note;
  return j;
}

nlohmann::json to_json(const RateStudy& r) {
  nlohmann::json j;
  j["chain"] = to_string(r.chain);
  j["radii"] = r.radii;
  j["maxima"] = r.maxima;
  j["errors"] = r.errors;
  j["fit"] = {{"constant", r.fit.constant},       {"slope", r.fit.slope},
              {"residual", r.fit.residual},       {"rate_constant", r.fit.rate_constant},
              {"rate_spread", r.fit.rate_spread}};
  return j;
}

}  // namespace fraclap
