#include <doctest.h>

#include <cmath>
#include <map>
#include <sstream>

#include "fraclap/frackernel.hpp"
#include "fraclap/maxprinciple.hpp"

using namespace fraclap;

namespace {

DirichletSpec unit_problem(double s, double rhs = 1.0) {
  DirichletSpec spec;
  spec.domain = {{-1.0, 1.0}};
  spec.s = s;
  spec.rhs = [rhs](double) { return rhs; };
  return spec;
}

double max_error_vs(const DiscreteSolution& u, const std::function<double(double)>& exact) {
  double e = 0.0;
  for (std::size_t i = 0; i < u.x.size(); ++i) e = std::max(e, std::abs(u.value[i] - exact(u.x[i])));
  return e;
}

}  // namespace

TEST_SUITE("maxprinciple") {

TEST_CASE("lattice weights telescope to 1/(2s) + G(K+1) - G(K)") {
  for (double s : {0.25, 0.6, 0.9}) {
    const long K = 2000;
    const auto w = lattice_weights(s, K);
    double sum = 0.0;
    for (long k = 1; k <= K; ++k) {
      CHECK(w[k] > 0.0);
      sum += w[k];
    }
    auto G = [s](double z) { return std::pow(z, 1 - 2 * s) / (2 * s * (2 * s - 1)); };
    CHECK(sum == doctest::Approx(1 / (2 * s) + G(K + 1) - G(K)).epsilon(1e-10));
  }
}

TEST_CASE("zero data gives the zero solution") {
  const auto u = solve_dirichlet(unit_problem(0.4, 0.0), 1.0 / 64);
  for (double v : u.value) CHECK(std::abs(v) <= 1e-12);
}

TEST_CASE("solution is linear in the data") {
  const auto a = solve_dirichlet(unit_problem(0.6, 1.0), 1.0 / 64);
  const auto b = solve_dirichlet(unit_problem(0.6, 2.0), 1.0 / 64);
  for (std::size_t i = 0; i < a.value.size(); ++i) CHECK(std::abs(b.value[i] - 2 * a.value[i]) <= 1e-10);
  CHECK(a.residual_norm <= 1e-10 * a.rhs_norm);
}

TEST_CASE("torsion problem matches c (1 - x^2)^s with c from the quadrature") {
  const FracParams p(1, 0.5);
  const auto cand = RadialFunction::generic(
      [](double r) { return r < 1 ? std::sqrt(1 - r * r) : 0.0; }, {1.0}, "candidate");
  const double c = 1.0 / eval_radial(cand, 0.3, p).value;
  const auto u = solve_dirichlet(unit_problem(0.5), 1.0 / 512);
  CHECK(max_error_vs(u, [c](double x) { return c * std::sqrt(1 - x * x); }) <= 5e-3);
}

TEST_CASE("max-norm order under refinement" * doctest::may_fail()) {
  // boundary layer of width h carries an O(h^{1/2}) error
  const auto exact = [](double x) { return std::sqrt(1 - x * x); };
  const double e1 = max_error_vs(solve_dirichlet(unit_problem(0.5), 1.0 / 128), exact);
  const double e2 = max_error_vs(solve_dirichlet(unit_problem(0.5), 1.0 / 256), exact);
  const double order = std::log2(e1 / e2);
  MESSAGE("observed max-norm order " << order);
  CHECK(order >= 1.0);
}

TEST_CASE("assembled matrix has the M-matrix sign pattern") {
  for (bool corr : {false, true}) {
    auto spec = unit_problem(0.7);
    spec.boundary_correction = corr;
    const auto g = discretize(spec, 1.0 / 32);
    const auto A = assemble(g, Exec::Serial);
    for (Eigen::Index i = 0; i < A.rows(); ++i) {
      CHECK(A(i, i) > 0.0);
      double off = 0.0;
      for (Eigen::Index j = 0; j < A.cols(); ++j)
        if (j != i) {
          CHECK(A(i, j) <= 1e-14);
          off += std::abs(A(i, j));
        }
      CHECK(A(i, i) >= off);
    }
    if (!corr) CHECK((A - A.transpose()).cwiseAbs().maxCoeff() <= 1e-12);
    CHECK((A - assemble(g, Exec::Parallel)).cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("seeded batteries") {
  const auto c = comparison_battery(7, 30);
  CHECK(c.cases == 30);
  CHECK(c.violations == 0);
  const auto m = max_principle_battery(7, 20);
  CHECK(m.violations == 0);
  const auto again = comparison_battery(7, 30);
  CHECK(again.worst == c.worst);
}

TEST_CASE("comparison rejects mismatched or unordered problems") {
  const auto a = discretize(unit_problem(0.5, 1.0), 1.0 / 32);
  const auto b = discretize(unit_problem(0.5, 2.0), 1.0 / 32);
  CHECK(verify_comparison(a, b).holds);
  CHECK(verify_comparison(a, a).identical);
  CHECK_THROWS_AS(verify_comparison(b, a), ConfigError);
  CHECK_THROWS_AS(verify_comparison(a, discretize(unit_problem(0.5), 1.0 / 64)), ConfigError);
}

TEST_CASE("nonzero exterior data raises the solution") {
  auto spec = unit_problem(0.5, 0.0);
  spec.exterior = Exterior::Custom;
  spec.exterior_fn = [](double) { return 1.0; };
  spec.truncation = 8.0;
  const auto u = solve_dirichlet(spec, 1.0 / 32);
  for (double v : u.value) CHECK((v > 0.0 && v <= 1.0 + 1e-10));
}

TEST_CASE("Hopf ratio is stable") {
  DirichletSpec spec = unit_problem(0.5);
  spec.rhs = indicator({{-0.1, 0.1}});
  const auto r = verify_hopf_ratio(spec, 1.0 / 64);
  CHECK(r.positive);
  CHECK(r.stable);
  spec.rhs = [](double x) { return x; };
  CHECK_THROWS_AS(verify_hopf_ratio(spec, 1.0 / 64), ConfigError);
  spec.rhs = [](double) { return 0.0; };
  CHECK_THROWS_AS(verify_hopf_ratio(spec, 1.0 / 64), ConfigError);
}

TEST_CASE("kslap battery constant and notices") {
  const auto r = verify_kslap(kslap_battery(), 1.0 / 64, 0.5);
  CHECK(r.c_bar > 0.0);
  CHECK(r.ratios.size() == kslap_battery().size());
  const auto skip = verify_kslap(kslap_battery(), 1.0 / 64, 0.5,
                                 [](double x) { return x > 2.0 ? 1.0 : 0.0; });
  CHECK_FALSE(skip.notices.empty());
}

TEST_CASE("qsmp preconditions") {
  const IntervalSet omega{{-2.0, 2.0}};
  CHECK_THROWS_AS(verify_qsmp(omega, {{-0.5, 0.5}}, {{1.0, 1.0}}, QsmpVariant::I, 0.5, 1.0 / 32), ConfigError);
  CHECK_THROWS_AS(verify_qsmp(omega, {{-0.5, 0.5}}, {{1.5, 2.5}}, QsmpVariant::I, 0.5, 1.0 / 32), ConfigError);
  CHECK_THROWS_AS(verify_qsmp(omega, {{-0.5, 0.5}}, {{1.0, 1.5}}, QsmpVariant::II, 0.75, 1.0 / 32), ConfigError);
  const auto r = verify_qsmp(omega, {{-0.5, 0.5}}, {{1.0, 1.5}}, QsmpVariant::I, 0.5, 1.0 / 32);
  CHECK(r.c0 > 0.0);
}

TEST_CASE("measure lemma needs a nonnegative supersolution") {
  DirichletSpec spec;
  spec.domain = kslap_domain();
  spec.s = 0.5;
  spec.rhs = indicator(kslap_battery().front());
  const auto g = discretize(spec, 1.0 / 64);
  auto u = solve_dirichlet(g);
  const auto m = verify_measure_lemma(g, u, 0.5);
  CHECK(m.found);
  CHECK(m.c_bar == doctest::Approx(std::pow(1.25, m.k)));
  for (auto& v : u.value) v = -v;
  CHECK_THROWS_AS(verify_measure_lemma(g, u, 0.5), ConfigError);
}

TEST_CASE("distance to the complement") {
  const IntervalSet d{{-1.0, 1.0}, {2.0, 4.0}};
  CHECK(distance_to_complement(d, 0.25) == doctest::Approx(0.75));
  CHECK(distance_to_complement(d, 3.5) == doctest::Approx(0.5));
  CHECK(distance_to_complement(d, 1.5) == 0.0);
  CHECK(measure(d) == doctest::Approx(4.0));
}

TEST_CASE("csv and json output") {
  const auto u = solve_dirichlet(unit_problem(0.5), 1.0 / 8);
  std::ostringstream os;
  write_csv(os, u);
  CHECK(os.str().rfind("x,value\n", 0) == 0);
  const auto j = to_json(u);
  CHECK(j.at("value").size() == u.value.size());
}

}
