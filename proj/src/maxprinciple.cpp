#include "fraclap/maxprinciple.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <random>

#include "fraclap/quadrature.hpp"

namespace fraclap {

double measure(const IntervalSet& set) {
  double m = 0.0;
  for (const auto& i : set) m += std::max(0.0, i.length());
  return m;
}

bool contains_open(const IntervalSet& set, double x) {
  return std::any_of(set.begin(), set.end(), [x](const Interval& i) { return i.contains_open(x); });
}

bool contains_closed(const IntervalSet& set, double x) {
  return std::any_of(set.begin(), set.end(),
                     [x](const Interval& i) { return i.contains_closed(x); });
}

std::function<double(double)> indicator(const IntervalSet& set) {
  return [set](double x) { return contains_closed(set, x) ? 1.0 : 0.0; };
}

std::string to_string(Exterior e) {
  switch (e) {
    case Exterior::Zero: return "zero";
    case Exterior::PhiStar: return "phi_star";
    case Exterior::Custom: return "custom";
  }
  return "?";
}

namespace {

// Antiderivatives with G'' = z^{-1-2s}.
double G(double s, double z) {
  if (s == 0.5) return -std::log(z);
  return std::pow(z, 1.0 - 2.0 * s) / (2.0 * s * (2.0 * s - 1.0));
}
double dG(double s, double z) { return -std::pow(z, -2.0 * s) / (2.0 * s); }

// Weight of the inner half of a hat at distance k, used at the truncation node.
double half_weight(double s, long k) {
  const double z = static_cast<double>(k);
  if (k >= 1000) {
    const double a = 1.0 + 2.0 * s;
    return std::pow(z, -1.0 - 2.0 * s) *
           (0.5 + a / (6.0 * z) + a * (2.0 + 2.0 * s) / (24.0 * z * z));
  }
  return dG(s, z) - G(s, z) + G(s, z - 1.0);
}

void check_grid(const DirichletSpec& spec, double h) {
  if (!(h > 0.0) || !std::isfinite(h)) throw ConfigError("grid step must be positive");
  if (!(spec.s > 0.0 && spec.s < 1.0)) throw DomainError("s must lie in (0,1)");
  if (spec.domain.empty()) throw ConfigError("empty domain");
  for (const auto& i : spec.domain)
    if (!(i.b > i.a)) throw ConfigError("domain interval with b <= a");
  if (spec.exterior == Exterior::Custom && !spec.exterior_fn)
    throw ConfigError("custom exterior needs a function");
}

double extent(const IntervalSet& set) {
  double m = 0.0;
  for (const auto& i : set) m = std::max({m, std::abs(i.a), std::abs(i.b)});
  return m;
}

RadialProfile phi_star(const DirichletSpec& spec) {
  return make_fundamental(FracParams(1, spec.s), spec.phi_variant);
}

}  // namespace

std::vector<double> lattice_weights(double s, long kmax) {
  std::vector<double> w(static_cast<std::size_t>(std::max(kmax, 1L)) + 1, 0.0);
  w[1] = G(s, 2.0) - G(s, 1.0) - dG(s, 1.0);
  const double a = 1.0 + 2.0 * s;
  for (long k = 2; k <= kmax; ++k) {
    const double z = static_cast<double>(k);
    if (k >= 100) {
      // second difference of G expanded in even derivatives
      const double z2 = 1.0 / (z * z);
      w[k] = std::pow(z, -a) *
             (1.0 + a * (a + 1.0) * z2 / 12.0 + a * (a + 1.0) * (a + 2.0) * (a + 3.0) * z2 * z2 / 360.0);
    } else {
      w[k] = G(s, z + 1.0) - 2.0 * G(s, z) + G(s, z - 1.0);
    }
  }
  return w;
}

double GridProblem::exterior_value(long j) const {
  const double x = j * h;
  switch (spec.exterior) {
    case Exterior::Zero: return 0.0;
    case Exterior::Custom: return std::abs(j) <= truncation_index ? spec.exterior_fn(x) : 0.0;
    case Exterior::PhiStar: {
      const double v = phi_star(spec)(std::abs(x));
      if (!std::isfinite(v)) throw ConfigError("fundamental solution is singular at an exterior node");
      return v;
    }
  }
  return 0.0;
}

GridProblem discretize(const DirichletSpec& spec, double h) {
  check_grid(spec, h);
  GridProblem g;
  g.spec = spec;
  g.h = h;
  const double L = spec.truncation > 0.0 ? spec.truncation : 4.0 * extent(spec.domain) + 2.0;
  const long jmax = static_cast<long>(std::ceil(extent(spec.domain) / h)) + 1;
  g.truncation_index = std::max(static_cast<long>(std::ceil(L / h)), jmax + 2);
  const double tol = 1e-9 * h;
  for (long j = -jmax; j <= jmax; ++j) {
    const double x = j * h;
    for (const auto& i : spec.domain)
      if (x > i.a + tol && x < i.b - tol) {
        g.interior.push_back(j);
        break;
      }
  }
  if (g.interior.empty()) throw ConfigError("no lattice node inside the domain; refine h");
  g.rhs.reserve(g.interior.size());
  for (long j : g.interior) g.rhs.push_back(spec.rhs(j * h));
  return g;
}

namespace {

bool aligned(const GridProblem& g) {
  for (const auto& i : g.spec.domain)
    for (double e : {i.a, i.b})
      if (std::abs(e / g.h - std::round(e / g.h)) > 1e-9) return false;
  return true;
}

// Near-field coefficient for the local model u_i (1 - y/h)^s.
double boundary_near(double s) {
  auto f = [s](double t) {
    if (t <= 0.0) return 0.0;
    double core = 0.0;
    if (t < 0.125) {
      // even binomial terms; the odd ones cancel
      double b = 1.0, tm = 1.0;
      for (int m = 1; m <= 24; ++m) {
        b *= (s - m + 1.0) / m;
        tm *= t;
        if (m % 2 == 0) core -= 2.0 * b * tm;
      }
    } else {
      core = 2.0 - std::pow(1.0 - t, s) - std::pow(1.0 + t, s);
    }
    return core * std::pow(t, -1.0 - 2.0 * s);
  };
  return quad::adaptive(f, 0.0, 1.0, 1e-12, 1e-15, 4000).value;
}

// Extra weight of a delta^s-shaped cell over the linear one; the cell is
// [k, k+1] with the boundary at k+1 (far) or [k-1, k] with it at k-1.
double cell_excess(double s, long k, bool far) {
  const double z0 = far ? k : k - 1.0;
  const double edge = far ? k + 1.0 : k - 1.0;
  auto f = [=](double z) {
    const double d = std::abs(z - edge);
    return (std::pow(d, s) - d) * std::pow(z, -1.0 - 2.0 * s);
  };
  return quad::adaptive(f, z0, z0 + 1.0, 1e-11, 1e-16, 2000).value;
}

}  // namespace

Eigen::MatrixXd assemble(const GridProblem& g, Exec exec) {
  const double s = g.spec.s;
  const long N = static_cast<long>(g.size());
  const long j0 = g.interior.front();
  const long span = g.interior.back() - j0;
  const auto w = lattice_weights(s, span + 1);
  const double kappa = normalization_constant(1, s) * std::pow(g.h, -2.0 * s);
  const double diag = 2.0 / (2.0 - 2.0 * s) + 1.0 / s;
  const double near = 1.0 / (2.0 - 2.0 * s);
  Eigen::MatrixXd A(N, N);
#pragma omp parallel for schedule(static) if (exec == Exec::Parallel)
  for (long i = 0; i < N; ++i) {
    for (long m = 0; m < N; ++m) {
      const long k = std::abs(g.interior[i] - g.interior[m]);
      double a = 0.0;
      if (k == 0) a = diag;
      else if (k == 1) a = -(near + w[1]);
      else a = -w[k];
      A(i, m) = kappa * a;
    }
  }

  if (g.spec.boundary_correction && g.spec.exterior == Exterior::Zero && aligned(g)) {
    std::vector<char> inside(static_cast<std::size_t>(span + 3), 0);
    for (long j : g.interior) inside[j - j0 + 1] = 1;
    auto is_in = [&](long j) { return j >= j0 && j <= j0 + span && inside[j - j0 + 1]; };
    // +1 / -1: exterior neighbour on the right / left only
    std::vector<int> side(N, 0);
    std::vector<long> where;
    for (long i = 0; i < N; ++i) {
      const long j = g.interior[i];
      const bool l = is_in(j - 1), r = is_in(j + 1);
      if (l != r) {
        side[i] = r ? -1 : 1;
        where.push_back(i);
      }
    }
    if (!where.empty()) {
      std::vector<double> dfar(span + 2, 0.0), dnear(span + 2, 0.0);
#pragma omp parallel for schedule(dynamic) if (exec == Exec::Parallel)
      for (long k = 1; k <= span + 1; ++k) {
        dfar[k] = cell_excess(s, k, true);
        if (k >= 2) dnear[k] = cell_excess(s, k, false);
      }
      const double bn = boundary_near(s);
      for (long m : where) {
        const long jm = g.interior[m];
        const long edge = jm + side[m];
#pragma omp parallel for schedule(static) if (exec == Exec::Parallel)
        for (long i = 0; i < N; ++i) {
          if (i == m) continue;
          const long ji = g.interior[i];
          const long k = std::abs(jm - ji);
          const bool far = std::abs(edge - ji) > k;
          A(i, m) -= kappa * (far ? dfar[k] : dnear[k]);
        }
      }
      for (long i : where) {
        A(i, i) = kappa * (bn + 1.0 / s);
        const long nb = i - side[i];
        A(i, nb) += kappa * near;
      }
    }
  }
  return A;
}

Eigen::VectorXd exterior_load(const GridProblem& g, Exec exec) {
  const long N = static_cast<long>(g.size());
  Eigen::VectorXd b = Eigen::VectorXd::Zero(N);
  if (g.spec.exterior == Exterior::Zero) return b;
  const double s = g.spec.s;
  const long J = g.truncation_index;
  const auto w = lattice_weights(s, 2 * J + 1);
  const double C = normalization_constant(1, s);
  const double kappa = C * std::pow(g.h, -2.0 * s);
  const double near = 1.0 / (2.0 - 2.0 * s);

  // exterior nodal data, evaluated once
  std::vector<double> ext(static_cast<std::size_t>(2 * J + 1), 0.0);
  std::vector<char> is_int(ext.size(), 0);
  for (long j : g.interior) is_int[j + J] = 1;
  for (long j = -J; j <= J; ++j)
    if (!is_int[j + J]) ext[j + J] = g.exterior_value(j);

  const bool exact_tail = g.spec.exterior == Exterior::PhiStar;
  const RadialProfile phi = exact_tail ? phi_star(g.spec) : RadialProfile{};
  const double L = J * g.h;

#pragma omp parallel for schedule(dynamic) if (exec == Exec::Parallel)
  for (long i = 0; i < N; ++i) {
    const long ji = g.interior[i];
    double acc = 0.0;
    for (long j = -J; j <= J; ++j) {
      if (is_int[j + J] || ext[j + J] == 0.0) continue;
      const long k = std::abs(j - ji);
      double c = 0.0;
      if (std::abs(j) == J) c = k == 1 ? near : half_weight(s, k);
      else c = k == 1 ? near + w[1] : w[k];
      acc += c * ext[j + J];
    }
    double tail = 0.0;
    if (exact_tail) {
      const double x = ji * g.h;
      for (int side : {1, -1}) {
        const double d = L - side * x;
        // z = x + side * d t^{-1/(2s)} so |z| = L + d (t^{-1/(2s)} - 1)
        auto fz = [&](double t) {
          if (t <= 0.0) return 0.0;
          return phi(L + d * (std::pow(t, -1.0 / (2.0 * s)) - 1.0));
        };
        const auto r = quad::adaptive(fz, 0.0, 1.0, 1e-10, 1e-14, 2000);
        tail += std::pow(d, -2.0 * s) / (2.0 * s) * r.value;
      }
    }
    b(i) = kappa * acc + C * tail;
  }
  return b;
}

namespace {

void check_m_matrix(const Eigen::MatrixXd& A) {
  const double tol = 1e-12 * A.diagonal().cwiseAbs().maxCoeff();
  for (long i = 0; i < A.rows(); ++i) {
    if (!(A(i, i) > 0.0)) throw ConfigError("assembled operator has a nonpositive diagonal");
    double off = 0.0;
    for (long m = 0; m < A.cols(); ++m) {
      if (m == i) continue;
      if (A(i, m) > tol) throw ConfigError("assembled operator has a positive off-diagonal");
      off -= A(i, m);
    }
    if (A(i, i) - off < -tol) throw ConfigError("assembled operator is not diagonally dominant");
  }
}

DiscreteSolution finish(const GridProblem& g, const Eigen::MatrixXd& A, const Eigen::VectorXd& rhs,
                        const Eigen::VectorXd& u) {
  DiscreteSolution out;
  out.h = g.h;
  out.x.reserve(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) out.x.push_back(g.node(i));
  out.value.assign(u.data(), u.data() + u.size());
  out.residual_norm = (A * u - rhs).lpNorm<Eigen::Infinity>();
  out.rhs_norm = rhs.lpNorm<Eigen::Infinity>();
  return out;
}

}  // namespace

DiscreteSolution solve_dirichlet(const GridProblem& g, Exec exec) {
  const Eigen::MatrixXd A = assemble(g, exec);
  Eigen::VectorXd rhs = Eigen::Map<const Eigen::VectorXd>(g.rhs.data(), g.rhs.size());
  rhs += exterior_load(g, exec);
  check_m_matrix(A);
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(A);
  const Eigen::VectorXd u = lu.solve(rhs);
  if (!u.allFinite()) throw std::runtime_error("linear solve failed");
  return finish(g, A, rhs, u);
}

DiscreteSolution solve_dirichlet(const DirichletSpec& spec, double h, Exec exec) {
  return solve_dirichlet(discretize(spec, h), exec);
}

Eigen::VectorXd apply_operator(const GridProblem& g, const Eigen::VectorXd& u) {
  if (static_cast<std::size_t>(u.size()) != g.size()) throw ConfigError("size mismatch");
  return assemble(g) * u - exterior_load(g);
}

ComparisonReport verify_comparison(const GridProblem& p1, const GridProblem& p2) {
  if (p1.h != p2.h || p1.interior != p2.interior || p1.spec.s != p2.spec.s)
    throw ConfigError("comparison needs the same grid and order");
  for (std::size_t i = 0; i < p1.size(); ++i)
    if (p1.rhs[i] > p2.rhs[i]) throw ConfigError("right-hand sides are not ordered");
  const auto v1 = solve_dirichlet(p1);
  const auto v2 = solve_dirichlet(p2);
  ComparisonReport r;
  r.max_violation = -std::numeric_limits<double>::infinity();
  double scale = 1.0, gap = 0.0;
  for (std::size_t i = 0; i < v1.value.size(); ++i) {
    r.max_violation = std::max(r.max_violation, v1.value[i] - v2.value[i]);
    gap = std::max(gap, std::abs(v1.value[i] - v2.value[i]));
    scale = std::max({scale, std::abs(v1.value[i]), std::abs(v2.value[i])});
  }
  r.holds = r.max_violation <= 1e-10 * scale;
  r.identical = gap <= 1e-12 * scale;
  return r;
}

namespace {

struct RandomData {
  std::vector<double> breaks;
  std::vector<double> levels;
  double operator()(double x) const {
    const auto it = std::upper_bound(breaks.begin(), breaks.end(), x);
    return levels[static_cast<std::size_t>(it - breaks.begin())];
  }
};

RandomData random_steps(std::mt19937_64& rng, double lo, double hi) {
  std::uniform_real_distribution<double> pos(-3.0, 3.0), lev(lo, hi);
  RandomData d;
  for (int i = 0; i < 4; ++i) d.breaks.push_back(pos(rng));
  std::sort(d.breaks.begin(), d.breaks.end());
  for (int i = 0; i < 5; ++i) d.levels.push_back(lev(rng));
  return d;
}

std::function<double(double)> random_bump(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> amp(0.0, 1.0), ctr(-4.0, 4.0);
  const double a = amp(rng), c = ctr(rng);
  return [a, c](double x) { return a * std::exp(-(x - c) * (x - c)); };
}

DirichletSpec random_spec(std::mt19937_64& rng) {
  static const std::vector<IntervalSet> domains{
      {{-1.0, 1.0}}, {{-1.0, -0.25}, {0.25, 1.0}}, {{0.5, 2.0}}};
  std::uniform_int_distribution<std::size_t> pick(0, domains.size() - 1);
  std::uniform_real_distribution<double> order(0.2, 0.9);
  DirichletSpec spec;
  spec.domain = domains[pick(rng)];
  spec.s = order(rng);
  spec.exterior = Exterior::Custom;
  spec.truncation = 6.0;
  return spec;
}

}  // namespace

BatteryReport comparison_battery(std::uint64_t seed, int pairs, double h) {
  std::mt19937_64 rng(seed);
  BatteryReport rep;
  for (int c = 0; c < pairs; ++c) {
    DirichletSpec a = random_spec(rng);
    DirichletSpec b = a;
    const auto f1 = random_steps(rng, -1.0, 1.0);
    const auto df = random_steps(rng, 0.0, 1.0);
    const auto e1 = random_bump(rng);
    const auto de = random_bump(rng);
    a.rhs = f1;
    b.rhs = [f1, df](double x) { return f1(x) + df(x); };
    a.exterior_fn = e1;
    b.exterior_fn = [e1, de](double x) { return e1(x) + de(x); };
    const auto r = verify_comparison(discretize(a, h), discretize(b, h));
    ++rep.cases;
    if (!r.holds) ++rep.violations;
    rep.worst = c == 0 ? r.max_violation : std::max(rep.worst, r.max_violation);
  }
  return rep;
}

BatteryReport max_principle_battery(std::uint64_t seed, int cases, double h) {
  std::mt19937_64 rng(seed);
  BatteryReport rep;
  for (int c = 0; c < cases; ++c) {
    DirichletSpec spec = random_spec(rng);
    spec.rhs = random_steps(rng, 0.0, 1.0);
    spec.exterior_fn = random_bump(rng);
    const auto u = solve_dirichlet(spec, h);
    const double lo = *std::min_element(u.value.begin(), u.value.end());
    ++rep.cases;
    if (lo < -1e-12) ++rep.violations;
    rep.worst = c == 0 ? lo : std::min(rep.worst, lo);
  }
  return rep;
}

double distance_to_complement(const IntervalSet& domain, double x) {
  double d = 0.0;
  for (const auto& i : domain)
    if (i.contains_open(x)) d = std::max(d, std::min(x - i.a, i.b - x));
  return d;
}

namespace {

std::pair<double, double> hopf_at(const DirichletSpec& spec, double h) {
  const auto g = discretize(spec, h);
  const auto u = solve_dirichlet(g);
  double ratio = std::numeric_limits<double>::infinity(), mass = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double ds = std::pow(distance_to_complement(spec.domain, u.x[i]), spec.s);
    ratio = std::min(ratio, u.value[i] / ds);
    mass += h * g.rhs[i] * ds;
  }
  return {ratio, mass > 0.0 ? ratio / mass : 0.0};
}

}  // namespace

HopfReport verify_hopf_ratio(const DirichletSpec& spec, double h) {
  if (spec.exterior != Exterior::Zero) throw ConfigError("boundary ratio needs zero exterior data");
  {
    const auto g = discretize(spec, h);
    if (std::any_of(g.rhs.begin(), g.rhs.end(), [](double v) { return v < 0.0; }))
      throw ConfigError("boundary ratio needs rhs >= 0");
    if (std::all_of(g.rhs.begin(), g.rhs.end(), [](double v) { return v == 0.0; }))
      throw ConfigError("rhs vanishes on the grid; both sides of the ratio are zero");
  }
  HopfReport r;
  const auto [m0, c0] = hopf_at(spec, h);
  const auto [m1, c1] = hopf_at(spec, h / 2.0);
  (void)m1;
  r.min_ratio = m0;
  r.c_omega = c0;
  r.c_omega_fine = c1;
  r.stability = c0 > 0.0 ? c1 / c0 : 0.0;
  r.positive = c0 > 0.0 && c1 > 0.0;
  r.stable = r.positive && r.stability >= 0.5 && r.stability <= 2.0;
  return r;
}

IntervalSet kslap_domain() { return {{-3.0, -0.5}, {0.5, 3.0}}; }
IntervalSet kslap_annulus() { return {{-2.0, -1.0}, {1.0, 2.0}}; }

std::vector<IntervalSet> kslap_battery() {
  return {
      {{-1.625, -1.375}, {1.375, 1.625}},
      {{0.75, 1.0}},
      {{2.25, 2.75}},
      {{-2.5, -2.0}, {1.0, 1.5}},
      {{-2.875, -0.625}, {0.625, 2.875}},
      {{1.5, 1.5625}},
  };
}

KslapReport verify_kslap(const std::vector<IntervalSet>& battery, double h, double s,
                         const std::function<double(double)>& rhs) {
  if (battery.empty()) throw ConfigError("empty battery");
  if (!(h > 0.0)) throw ConfigError("grid step must be positive");
  const IntervalSet annulus = kslap_annulus();
  KslapReport rep;
  rep.c_bar = std::numeric_limits<double>::infinity();
  for (const auto& A : battery) {
    const double mA = measure(A);
    if (!(mA > 0.0)) throw ConfigError("battery set of zero measure");
    DirichletSpec spec;
    spec.domain = kslap_domain();
    spec.s = s;
    spec.rhs = rhs ? rhs : indicator(A);
    const auto g = discretize(spec, h);
    const auto u = solve_dirichlet(g);
    double inf_u = std::numeric_limits<double>::infinity();
    double inf_h = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < g.size(); ++i) {
      if (contains_closed(annulus, u.x[i])) inf_u = std::min(inf_u, u.value[i]);
      if (contains_closed(A, u.x[i])) inf_h = std::min(inf_h, g.rhs[i]);
    }
    if (!std::isfinite(inf_h) || !(inf_h > 0.0)) {
      rep.notices.push_back("skipped battery set " + std::to_string(rep.notices.size() + rep.ratios.size()) +
                            ": inf of rhs over A is zero");
      continue;
    }
    const double ratio = inf_u / (mA * inf_h);
    rep.ratios.push_back(ratio);
    rep.c_bar = std::min(rep.c_bar, ratio);
  }
  if (rep.ratios.empty()) throw ConfigError("every battery set was degenerate");
  return rep;
}

namespace {

double qsmp_at(const IntervalSet& omega, const IntervalSet& K, const IntervalSet& A,
               QsmpVariant variant, double s, double h) {
  DirichletSpec spec;
  spec.domain = omega;
  spec.s = s;
  spec.rhs = indicator(A);
  RadialProfile phi;
  if (variant == QsmpVariant::II) {
    const FracParams p(1, s);
    spec.exterior = Exterior::PhiStar;
    spec.phi_variant = p.branch() == Branch::PowerNeg ? SignVariant::Phi : SignVariant::PhiTilde;
    phi = phi_star(spec);
  }
  const auto g = discretize(spec, h);
  if (variant == QsmpVariant::II)
    for (long j = -g.truncation_index; j <= g.truncation_index; ++j)
      if (!contains_open(omega, j * h) && g.exterior_value(j) < 0.0)
        throw ConfigError("fundamental solution is negative outside the domain");
  const auto u = solve_dirichlet(g);
  double c0 = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (!contains_closed(K, u.x[i])) continue;
    const double base = variant == QsmpVariant::II ? phi(std::abs(u.x[i])) : 0.0;
    c0 = std::min(c0, u.value[i] - base);
  }
  if (!std::isfinite(c0)) throw ConfigError("compact set K contains no lattice node");
  return c0;
}

}  // namespace

QsmpReport verify_qsmp(const IntervalSet& omega, const IntervalSet& K, const IntervalSet& A,
                       QsmpVariant variant, double s, double h) {
  if (!(measure(A) > 0.0)) throw ConfigError("A must have positive measure");
  for (const auto* set : {&K, &A})
    for (const auto& i : *set)
      if (!contains_open(omega, i.a) || !contains_open(omega, i.b) || i.b < i.a)
        throw ConfigError("K and A must be compact subsets of the domain");
  if (variant == QsmpVariant::II && contains_closed(omega, 0.0))
    throw ConfigError("variant II needs the origin outside the domain");
  QsmpReport r;
  r.c0 = qsmp_at(omega, K, A, variant, s, h);
  r.c0_fine = qsmp_at(omega, K, A, variant, s, h / 2.0);
  r.stability = r.c0 > 0.0 ? r.c0_fine / r.c0 : 0.0;
  r.positive = r.c0 > 0.0 && r.c0_fine > 0.0;
  r.stable = r.positive && r.stability >= 0.5 && r.stability <= 2.0;
  return r;
}

MeasureLemmaReport verify_measure_lemma(const GridProblem& g, const DiscreteSolution& u, double nu) {
  if (!(nu > 0.0 && nu < 1.0)) throw ConfigError("nu must lie in (0,1)");
  if (u.value.size() != g.size()) throw ConfigError("solution does not match the grid");
  const IntervalSet annulus = kslap_annulus();
  const Eigen::VectorXd v = Eigen::Map<const Eigen::VectorXd>(u.value.data(), u.value.size());
  const Eigen::VectorXd Lu = apply_operator(g, v);
  std::vector<double> vals;
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (u.value[i] < -1e-12) throw ConfigError("function must be nonnegative");
    if (!contains_closed(annulus, g.node(i))) continue;
    if (Lu(static_cast<long>(i)) < -1e-8 * std::max(1.0, std::abs(g.rhs[i])))
      throw ConfigError("function is not a supersolution on the annulus");
    vals.push_back(u.value[i]);
  }
  if (vals.empty()) throw ConfigError("annulus contains no lattice node");
  std::sort(vals.begin(), vals.end());
  // the smallest sample value is the hardest base point
  const double base = vals.front();
  const std::size_t need = static_cast<std::size_t>(std::ceil(nu * vals.size()));
  MeasureLemmaReport r;
  for (int k = 0; k <= 400; ++k) {
    const double C = std::pow(1.25, k);
    const auto cnt = static_cast<std::size_t>(
        std::upper_bound(vals.begin(), vals.end(), C * base) - vals.begin());
    if (cnt >= need) {
      r.k = k;
      r.c_bar = C;
      r.found = true;
      break;
    }
  }
  return r;
}

nlohmann::json to_json(const GridProblem& g) {
  nlohmann::json j;
  j["s"] = g.spec.s;
  j["h"] = g.h;
  nlohmann::json dom = nlohmann::json::array();
  for (const auto& i : g.spec.domain) dom.push_back({i.a, i.b});
  j["domain"] = dom;
  j["exterior"] = to_string(g.spec.exterior);
  j["truncation"] = g.truncation_index * g.h;
  std::vector<double> x;
  for (std::size_t i = 0; i < g.size(); ++i) x.push_back(g.node(i));
  j["nodes"] = x;
  j["rhs"] = g.rhs;
  return j;
}

nlohmann::json to_json(const DiscreteSolution& u) {
  return {{"h", u.h},
          {"x", u.x},
          {"value", u.value},
          {"residual_norm", u.residual_norm},
          {"rhs_norm", u.rhs_norm}};
}

void write_csv(std::ostream& out, const DiscreteSolution& u) {
  out << "x,value\n";
  const auto old = out.precision(17);
  for (std::size_t i = 0; i < u.x.size(); ++i) out << u.x[i] << ',' << u.value[i] << '\n';
  out.precision(old);
}

}  // namespace fraclap
