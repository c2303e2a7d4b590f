#include <doctest.h>

#include <cmath>

#include "fraclap/estimates.hpp"

using namespace fraclap;

TEST_SUITE("estimates") {

TEST_CASE("verdicts combine pessimistically") {
  CHECK(combine(Verdict::Pass, Verdict::Pass) == Verdict::Pass);
  CHECK(combine(Verdict::Pass, Verdict::Inconclusive) == Verdict::Inconclusive);
  CHECK(combine(Verdict::Inconclusive, Verdict::Fail) == Verdict::Fail);
}

TEST_CASE("chain names round trip") {
  CHECK(all_chains().size() == 16);
  for (ChainId id : all_chains()) CHECK(chain_from_string(to_string(id)) == id);
  CHECK_FALSE(chain_from_string("XYZ"));
}

TEST_CASE("fit recovers an exact power law") {
  std::vector<double> r{10, 20, 40, 80, 160}, v;
  for (double x : r) v.push_back(3.0 * std::pow(x, -1.5));
  const auto f = fit_rate(r, v);
  CHECK(f.slope == doctest::Approx(-1.5).epsilon(1e-12));
  CHECK(f.constant == doctest::Approx(3.0).epsilon(1e-10));
  CHECK(f.residual <= 1e-12);
}

TEST_CASE("sample radii stay strictly inside the region") {
  const auto x = sample_radii({2.0, 40.0}, 200);
  REQUIRE(x.size() == 200);
  for (double r : x) CHECK((r > 2.0 && r < 40.0));
  for (std::size_t i = 1; i < x.size(); ++i) CHECK(x[i] > x[i - 1]);
}

TEST_CASE("sign chains pass with auto constants") {
  struct Case {
    ChainId id;
    int n;
    double s;
  };
  for (auto c : {Case{ChainId::LVC, 1, 0.75}, Case{ChainId::NBBN, 1, 0.5}, Case{ChainId::NITU, 3, 0.5},
                 Case{ChainId::VASK, 3, 0.5}, Case{ChainId::RI, 3, 0.5}}) {
    const FracParams p(c.n, c.s);
    const auto choice = choose_constants(c.id, p, 2.0);
    CHECK(choice.status == Verdict::Pass);
    const auto rep = verify_chain(c.id, p, choice.constants);
    INFO(to_string(c.id));
    CHECK(rep.verdict == Verdict::Pass);
    CHECK(rep.samples.size() >= 200);
    CHECK(rep.worst_margin > 0.0);
  }
}

TEST_CASE("chains on the wrong branch are configuration errors") {
  const auto c = BarrierConstants::with_radii(2.0);
  CHECK_THROWS_AS(verify_chain(ChainId::LVC, FracParams(3, 0.5), c), ConfigError);
}

TEST_CASE("too small a constant breaks a sign chain") {
  const FracParams p(1, 0.75);
  auto c = BarrierConstants::with_radii(2.0);
  c.c_tilde_g = 1e-6;
  CHECK(verify_chain(ChainId::LVC, p, c).verdict == Verdict::Fail);
}

TEST_CASE("json report carries the verdict and errors") {
  const FracParams p(1, 0.75);
  const auto choice = choose_constants(ChainId::LVC, p, 2.0);
  const auto j = to_json(verify_chain(ChainId::LVC, p, choice.constants, Sampling{20}));
  CHECK(j.at("verdict") == "PASS");
  CHECK(j.at("samples").size() == 20);
  CHECK(j.at("samples")[0].contains("err"));
}

}
