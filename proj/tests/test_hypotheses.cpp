#include <doctest.h>

#include <cmath>
#include <fstream>
#include <limits>

#include "fraclap/hypotheses.hpp"

using namespace fraclap;

TEST_SUITE("hypotheses") {

TEST_CASE("alpha tilde star") {
  CHECK(alpha_tilde_star(FracParams(3, 0.5), 0.0) == doctest::Approx(1.5));
  CHECK(alpha_tilde_star(FracParams(1, 0.75), 0.0) == doctest::Approx(-2.0));
  CHECK(alpha_tilde_star(FracParams(3, 0.5), 1.0) == doctest::Approx(1.0));
}

TEST_CASE("trend classification") {
  const double inf = std::numeric_limits<double>::infinity();
  CHECK(classify_trend({1, 2, 3, 4, 5}) == Trend::Increasing);
  CHECK(classify_trend({1, 2, 3, inf, inf}) == Trend::Increasing);
  CHECK(classify_trend({5, 4, 3, 2, 1}) == Trend::Decreasing);
  CHECK(classify_trend({1, 0.5, 0, 0, 0}) == Trend::Decreasing);
  CHECK(classify_trend({2.5, 2.5, 2.5, 2.5, 2.5}) == Trend::Plateau);
  CHECK(classify_trend({1, 3, 2, 4, 1}) == Trend::Irregular);
  CHECK(classify_trend({9, 9, 1, 2, 3, 4, 5}) == Trend::Increasing);
}

TEST_CASE("f2 on powers and the jump example") {
  const FracParams p(3, 0.5);
  CHECK(check_f2(NonlinearitySpec::power(1, 1.4), p).verdict == HypVerdict::Holds);
  CHECK(check_f2(NonlinearitySpec::power(1, 1.2), p).verdict == HypVerdict::Holds);
  CHECK(check_f2(NonlinearitySpec::power(1, 2.0), p).verdict == HypVerdict::Fails);
  const auto critical = check_f2(NonlinearitySpec::power(0.5, 1.5), p);
  CHECK(critical.verdict == HypVerdict::Holds);
  REQUIRE(critical.plateau);
  CHECK(*critical.plateau == doctest::Approx(0.5).epsilon(1e-3));
  const auto f = NonlinearitySpec::cf1b(p);
  CHECK_FALSE(f.warnings.empty());
  const auto c = check_f2(f, p);
  CHECK(c.verdict == HypVerdict::Holds);
  REQUIRE(c.plateau);
  CHECK(*c.plateau == doctest::Approx(2.5).epsilon(0.02));
}

TEST_CASE("f3prime and f4prime k-exponents") {
  {
    const FracParams p(1, 0.75);
    const auto r = check_f3prime(NonlinearitySpec::power(1, -2.0), p);
    CHECK(r.verdict == HypVerdict::Holds);
    REQUIRE(r.k_exponent);
    CHECK(*r.k_exponent == doctest::Approx(-3.0).epsilon(0.05));
  }
  {
    const FracParams p(3, 0.5);
    const auto r = check_f4prime(NonlinearitySpec::power(1, 1.5), p);
    CHECK(r.verdict == HypVerdict::Holds);
    REQUIRE(r.k_exponent);
    CHECK(*r.k_exponent == doctest::Approx(0.5).epsilon(0.1));
    CHECK(check_f4prime(NonlinearitySpec::power(1, 2.0), p).verdict == HypVerdict::Fails);
  }
}

TEST_CASE("exponential decay violates the tail condition") {
  const FracParams p(1, 0.5);
  const auto f = NonlinearitySpec::separable(0.0, [](double t) { return std::exp(-t); }, "exp");
  CHECK(check_f3prime(f, p).verdict == HypVerdict::Fails);
}

TEST_CASE("f2prime separates separable from decaying x-dependence") {
  const FracParams p(3, 0.5);
  CHECK(check_f2prime(NonlinearitySpec::power(1, 1.4), p).verdict == HypVerdict::Holds);
  const auto g = NonlinearitySpec::general([](double t, double x) { return t * std::exp(-x); }, "decay");
  CHECK(check_f2prime(g, p).verdict == HypVerdict::Fails);
}

TEST_CASE("json specs") {
  const FracParams p(3, 0.5);
  std::ifstream in(FRACLAP_DATA_DIR "/cf1b.json");
  REQUIRE(in);
  const auto f = NonlinearitySpec::from_json(nlohmann::json::parse(in), p);
  CHECK(f.name == "cf1b");
  CHECK(f(0.5, 10.0) == doctest::Approx(2.5 * std::pow(0.5, 1.5)));

  const auto e = NonlinearitySpec::from_json(
      {{"form", "separable"}, {"gamma", 0.5}, {"g", {{"type", "exponential"}, {"coefficient", 2.0}, {"rate", 1.0}}}}, p);
  CHECK(e(1.0, 4.0) == doctest::Approx(2.0 * std::exp(1.0) / 2.0));

  CHECK_THROWS_AS(NonlinearitySpec::from_json({{"g", {{"type", "nope"}}}}, p), ConfigError);
  CHECK_THROWS_AS(NonlinearitySpec::from_json({{"gamma", "x"}}, p), ConfigError);
  CHECK_THROWS_AS(NonlinearitySpec::power(1, 1, 1.5).validate(p), ConfigError);
}

TEST_CASE("dispatch by name") {
  const FracParams p(3, 0.5);
  const auto f = NonlinearitySpec::power(1, 1.4);
  CHECK(check_condition("f2", f, p).condition == "f2");
  CHECK_THROWS_AS(check_condition("f9", f, p), ConfigError);
  const auto j = to_json(check_condition("f2", f, p));
  CHECK(j.at("verdict") == "HOLDS");
}

}
