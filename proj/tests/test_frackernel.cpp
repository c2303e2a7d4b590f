#include <doctest.h>

#include <boost/math/special_functions/gamma.hpp>

#include <cmath>
#include <numbers>

#include "fraclap/frackernel.hpp"
#include "fraclap/fundamentals.hpp"

using namespace fraclap;

TEST_SUITE("frackernel") {

TEST_CASE("normalization constant against boost gamma and frozen values") {
  for (int n = 1; n <= 3; ++n)
    for (double s : {0.1, 0.3, 0.5, 0.75, 0.9}) {
      const double ref = std::pow(2.0, 2 * s) * std::pow(std::numbers::pi, -n / 2.0) * s *
                         boost::math::tgamma((n + 2 * s) / 2) / boost::math::tgamma(1 - s);
      CHECK(normalization_constant(n, s) == doctest::Approx(ref).epsilon(1e-13));
    }
  // mpmath, 30 digits
  CHECK(normalization_constant(1, 0.5) == doctest::Approx(0.31830988618379067154).epsilon(1e-14));
  CHECK(normalization_constant(1, 0.75) == doctest::Approx(0.29920671030107450845).epsilon(1e-14));
  CHECK(normalization_constant(2, 0.4) == doctest::Approx(0.13207971389562195025).epsilon(1e-14));
  CHECK(normalization_constant(3, 0.5) == doctest::Approx(0.10132118364233777144).epsilon(1e-14));
}

TEST_CASE("params reject bad input") {
  CHECK_THROWS_AS(FracParams(0, 0.5), DomainError);
  CHECK_THROWS_AS(FracParams(1, 1.0), DomainError);
  CHECK_THROWS_AS(FracParams(1, 0.0), DomainError);
  CHECK(FracParams(1, 0.5).branch() == Branch::Log);
  CHECK(FracParams(1, 0.75).branch() == Branch::PowerPos);
  CHECK(FracParams(3, 0.5).branch() == Branch::PowerNeg);
}

TEST_CASE("cos is an eigenfunction with eigenvalue |k|^{2s}") {
  for (double s : {0.3, 0.5, 0.7})
    for (double k : {1.0, 2.0}) {
      const FracParams p(1, s);
      for (double x : {0.0, 0.4}) {
        const auto v = eval_pointwise_1d([k](double y) { return std::cos(k * y); }, x, p);
        CHECK(v.value == doctest::Approx(std::pow(k, 2 * s) * std::cos(k * x)).epsilon(1e-6));
      }
    }
}

TEST_CASE("Poisson kernel at s = 1/2") {
  // (-Delta)^{1/2} (1 + x^2)^{-1} = (1 - x^2) / (1 + x^2)^2
  const FracParams p(1, 0.5);
  const auto u = RadialFunction::generic([](double r) { return 1.0 / (1.0 + r * r); }, {}, "poisson");
  for (double x : {0.25, 1.0, 2.0, 7.0}) {
    const auto v = eval_radial(u, x, p);
    CHECK(v.value == doctest::Approx((1 - x * x) / std::pow(1 + x * x, 2)).epsilon(1e-7));
    CHECK(v.converged);
  }
}

TEST_CASE("(1 - |x|^2)_+^s has constant operator inside the ball") {
  // 2^{2s} Gamma(1+s) Gamma(n/2+s) / Gamma(n/2), mpmath
  struct Case {
    int n;
    double s, value;
  };
  for (auto c : {Case{1, 0.75, 1.3293403881791370205}, Case{2, 0.4, 1.3706593701044561691},
                 Case{3, 0.5, 2.0}}) {
    const FracParams p(c.n, c.s);
    const double s = c.s;
    const auto u = RadialFunction::generic(
        [s](double r) { return r < 1 ? std::pow(1 - r * r, s) : 0.0; }, {1.0}, "ball");
    for (double r : {0.3, 0.7}) CHECK(eval_radial(u, r, p).value == doctest::Approx(c.value).epsilon(1e-7));
  }
}

TEST_CASE("fundamental solution is annihilated away from the origin") {
  for (auto [n, s] : {std::pair{1, 0.5}, {1, 0.75}, {2, 0.4}, {3, 0.5}, {1, 0.3}}) {
    const FracParams p(n, s);
    const auto phi = make_fundamental(p);
    for (double r : {1.5, 10.0, 80.0}) {
      const auto v = eval_radial(phi, r, p);
      CHECK(std::abs(v.value) <= 1e-6 * std::max(1.0, std::abs(phi(r))));
    }
  }
}

TEST_CASE("scaling identity for a Gaussian") {
  const FracParams p(1, 0.5);
  const Field g = [](std::span<const double> x) { return std::exp(-x[0] * x[0]); };
  for (double lambda : {0.5, 2.0, 10.0}) {
    const double x[1]{0.3};
    CHECK(scaling_identity_check(g, lambda, x, p).deviation <= 1e-6);
  }
}

TEST_CASE("serial and parallel batches agree bitwise") {
  const FracParams p(2, 0.4);
  const RadialEvaluator ev(p);
  const auto u = RadialFunction::generic([](double r) { return std::exp(-r); }, {}, "exp");
  std::vector<double> radii{0.5, 1.0, 2.0, 4.0, 8.0, 16.0};
  const auto a = ev.batch(u, radii, Exec::Serial);
  const auto b = ev.batch(u, radii, Exec::Parallel);
  for (std::size_t i = 0; i < radii.size(); ++i) CHECK(a[i].value == b[i].value);
}

TEST_CASE("evaluation point errors") {
  const FracParams p(3, 0.5);
  const auto phi = make_fundamental(p);
  CHECK_THROWS_AS(eval_radial(phi, 0.0, p), EvaluationPointError);
  CHECK_THROWS_AS(eval_radial(phi, -1.0, p), EvaluationPointError);
}

}
