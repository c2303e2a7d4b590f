#include <doctest.h>

#include <cmath>
#include <sstream>

#include "fraclap/fundamentals.hpp"
#include "fraclap/liouville.hpp"

using namespace fraclap;

TEST_SUITE("liouville") {

TEST_CASE("lambda(tau) against frozen gamma-ratio values") {
  // mpmath at n = 3, s = 1/2
  const FracParams p(3, 0.5);
  struct Case {
    double tau, value;
  };
  for (auto c : {Case{0.5, 0.5}, Case{1.0, 0.63661977236758134308}, Case{1.5, 0.5}}) {
    const auto v = lambda_tau(c.tau, p);
    CHECK(v.value == doctest::Approx(c.value).epsilon(1e-7));
    CHECK(lambda_tau_closed(c.tau, p) == doctest::Approx(c.value).epsilon(1e-12));
  }
  CHECK_THROWS_AS(lambda_tau(3.5, p), DomainError);
}

TEST_CASE("annulus infimum of monotone profiles") {
  const FracParams p(3, 0.5);
  const auto phi = RadialFunction::from_profile(make_fundamental(p));
  const auto m = annulus_inf(phi, 5.0);
  CHECK(m.value == doctest::Approx(0.01));
  CHECK(m.argmin == doctest::Approx(10.0));
  const auto field = radial_field(phi);
  CHECK(annulus_inf(field, 3, 5.0).value == doctest::Approx(0.01).epsilon(1e-6));
  const auto up = RadialFunction::from_profile(make_fundamental(FracParams(1, 0.75), SignVariant::PhiTilde));
  CHECK(annulus_inf(up, 4.0).value == doctest::Approx(2.0));
  CHECK_THROWS_AS(annulus_inf(phi, 0.0), ConfigError);
}

TEST_CASE("growth bounds") {
  const FracParams p3(3, 0.5);
  const auto phi = RadialFunction::from_profile(make_fundamental(p3));
  CHECK(verify_growth_bounds(phi, GrowthCase::Sub, default_r_grid(2.0), p3).verdict == Verdict::Pass);
  // faster decay than the envelope
  const auto fast = RadialFunction::generic([](double r) { return std::pow(r, -3.0); }, {}, "fast");
  CHECK(verify_growth_bounds(fast, GrowthCase::Sub, default_r_grid(2.0), p3).verdict == Verdict::Fail);
  const FracParams p1(1, 0.75);
  const auto tilde = RadialFunction::from_profile(make_fundamental(p1, SignVariant::PhiTilde));
  CHECK(verify_growth_bounds(tilde, growth_case(p1), default_r_grid(2.0), p1).verdict == Verdict::Pass);
  const std::vector<double> narrow{10, 20, 40};
  CHECK_THROWS_AS(verify_growth_bounds(phi, GrowthCase::Sub, narrow, p3), ConfigError);
}

TEST_CASE("fundamental solution has zero residual for f = 0") {
  const FracParams p(3, 0.5);
  const auto phi = RadialFunction::from_profile(make_fundamental(p));
  const auto zero = NonlinearitySpec::separable(0.0, [](double) { return 0.0; }, "zero");
  const auto r = supersolution_residual(phi, zero, p, 1.0, 100.0, 30);
  CHECK(r.verdict != MemberVerdict::FailsAt);
  for (std::size_t i = 0; i < r.residual.size(); ++i) CHECK(std::abs(r.residual[i]) <= 1e-8);
  std::ostringstream os;
  write_residual_csv(os, r);
  CHECK(os.str().rfind("radius,residual,error\n", 0) == 0);
}

TEST_CASE("subcritical scan certifies nothing; the control is certified") {
  const FracParams p(3, 0.5);
  const CandidateFamily fam{{0.1, 1.0, 10.0}, {0.5, 1.5, 2.5, 4.0}};
  const auto sub = nonexistence_scan(fam, NonlinearitySpec::power(1, 1.4), p, 1.0, 100.0, {}, 40);
  CHECK(sub.certified == 0);
  CHECK_FALSE(sub.exploratory);
  const auto ctl = supercritical_control(3.0, p);
  CHECK(ctl.tau == doctest::Approx(0.5));
  CHECK(ctl.eps == doctest::Approx(0.5).epsilon(1e-7));
  const auto sup = nonexistence_scan({}, NonlinearitySpec::power(1, 3.0), p, 1.0, 100.0, {ctl}, 40);
  CHECK(sup.certified == 1);
  CHECK(sup.exploratory);
  CHECK_THROWS_AS(supercritical_control(1.2, p), ConfigError);
}

TEST_CASE("scan is deterministic") {
  const FracParams p(3, 0.5);
  const CandidateFamily fam{{0.5, 2.0}, {1.0, 3.0}};
  const auto f = NonlinearitySpec::power(1, 1.4);
  const auto a = to_json(nonexistence_scan(fam, f, p, 1.0, 50.0, {}, 20)).dump();
  const auto b = to_json(nonexistence_scan(fam, f, p, 1.0, 50.0, {}, 20)).dump();
  CHECK(a == b);
}

TEST_CASE("trace flags a contradiction only with a nonlinearity") {
  const FracParams p(3, 0.5);
  const auto u = CandidateFamily::member(1.0, 1.0);
  const auto grid = default_r_grid(2.0);
  const auto t = proof_quantity_trace(u, NonlinearitySpec::power(1, 1.4), p, grid);
  CHECK(t.contradiction_radius.has_value());
  CHECK(t.c_bar > 0.0);
  CHECK(t.C_bar >= 1.0);
  CHECK(t.rows.front().rho.has_value());
  CHECK_FALSE(t.rows.front().eta.has_value());
  const auto zero = NonlinearitySpec::separable(0.0, [](double) { return 0.0; }, "zero");
  CHECK_FALSE(proof_quantity_trace(u, zero, p, grid).contradiction_radius.has_value());
}

}
