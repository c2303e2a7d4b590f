#include <doctest.h>

#include <cmath>
#include <sstream>

#include "fraclap/frackernel.hpp"
#include "fraclap/fundamentals.hpp"

using namespace fraclap;

TEST_SUITE("fundamentals") {

TEST_CASE("fundamental branches and signs") {
  CHECK(make_fundamental(FracParams(3, 0.5))(2.0) == doctest::Approx(0.25));
  CHECK(make_fundamental(FracParams(1, 0.5))(std::exp(1.0)) == doctest::Approx(-1.0));
  CHECK(make_fundamental(FracParams(1, 0.75))(4.0) == doctest::Approx(-2.0));
  CHECK(make_fundamental(FracParams(1, 0.75), SignVariant::PhiTilde)(4.0) == doctest::Approx(2.0));
}

TEST_CASE("indicator of the unit ball outside the ball") {
  // 1D: -C/(2s) ((x-1)^{-2s} - (x+1)^{-2s})
  const FracParams p(1, 0.3);
  const auto c = BarrierConstants::with_radii(2.0);
  const auto chi = make_barrier(BarrierId::GammaTilde, c, p);
  for (double x : {1.5, 3.0, 10.0}) {
    const double want = -p.c_ns() / 0.6 * (std::pow(x - 1, -0.6) - std::pow(x + 1, -0.6));
    CHECK(eval_radial(chi, x, p).value == doctest::Approx(want).epsilon(1e-7));
  }
}

TEST_CASE("barriers need their branch") {
  const auto c = BarrierConstants::with_radii(2.0);
  CHECK_THROWS_AS(make_barrier(BarrierId::VTilde, c, FracParams(3, 0.5)), ConfigError);
  CHECK_THROWS_AS(make_barrier(BarrierId::WCheck, c, FracParams(1, 0.75)), ConfigError);
  CHECK_NOTHROW(make_barrier(BarrierId::WGamma, c, FracParams(3, 0.5)));
}

TEST_CASE("barrier names round trip") {
  for (BarrierId id : all_barriers()) {
    const auto back = barrier_from_string(to_string(id));
    REQUIRE(back);
    CHECK(*back == id);
  }
  CHECK_FALSE(barrier_from_string("nope"));
}

TEST_CASE("constants validation") {
  auto c = BarrierConstants::with_radii(2.0);
  CHECK(c.r == doctest::Approx(20.0));
  c.mu = -1.0;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  CHECK_THROWS_AS(BarrierConstants::with_radii(0.5).validate(), ConfigError);
}

TEST_CASE("vask radius and weight") {
  const FracParams p(3, 0.5);
  CHECK(psi_hat_gamma_weight(p) == doctest::Approx(6.0));
  const double R = vask_radius(p);
  for (double x : {R * 1.01, 2 * R, 10 * R})
    CHECK(std::pow(x - 1, -4.0) < 2 * std::pow(x + 1, -4.0));
  CHECK(std::pow(0.99 * R - 1, -4.0) > 2 * std::pow(0.99 * R + 1, -4.0));
}

TEST_CASE("gallery csv has a header and one row per point") {
  const FracParams p(3, 0.5);
  const auto c = BarrierConstants::with_radii(2.0);
  std::vector<RadialProfile> prof{make_barrier(BarrierId::Psi, c, p), make_barrier(BarrierId::WHat, c, p)};
  std::vector<double> radii{1.0, 5.0, 30.0};
  std::ostringstream os;
  write_gallery_csv(os, prof, radii);
  std::istringstream in(os.str());
  std::string line;
  int rows = 0;
  std::getline(in, line);
  CHECK(line == "barrier,radius,value");
  while (std::getline(in, line)) ++rows;
  CHECK(rows == 6);
}

}
