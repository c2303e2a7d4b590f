#include <doctest.h>

#include <algorithm>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "fraclap/cli.hpp"

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "fraclap");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = fraclap::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("exit-code matrix") {
  struct Case {
    std::vector<std::string> args;
    int code;
  };
  const std::string cf1b = FRACLAP_DATA_DIR "/cf1b.json";
  const std::vector<Case> cases{
      {{"eval", "--n", "3", "--s", "0.5", "--profile", "fundamental", "--at", "2.0"}, 0},
      {{"verify-chain", "--chain", "LVC", "--n", "1", "--s", "0.75", "--r0", "2", "--r", "20"}, 0},
      {{"check-f", "--spec", cf1b, "--condition", "f2", "--n", "3", "--s", "0.5"}, 0},
      {{"check-f", "--exponent", "2", "--condition", "f2", "--n", "3", "--s", "0.5"}, 1},
      {{"maxprinciple", "--check", "qsmp", "--s", "0.5"}, 2},
      {{"maxprinciple", "--check", "comparison", "--samples", "10"}, 0},
      {{"bogus"}, 3},
      {{}, 3},
      {{"eval", "--n", "7"}, 3},
      {{"eval", "--profile", "nope"}, 3},
      {{"verify-chain", "--chain", "LVC", "--n", "3"}, 3},
      {{"check-f", "--spec", "/nonexistent.json"}, 3},
      {{"maxprinciple", "--out", "csv"}, 3},
      {{"barrier", "--name", "v_tilde", "--n", "3"}, 3},
  };
  for (const auto& c : cases) {
    std::string joined;
    for (const auto& a : c.args) joined += a + " ";
    INFO(joined);
    CHECK(run(c.args).code == c.code);
  }
}

TEST_CASE("malformed spec file is a usage error") {
  const std::string path = "/tmp/fraclap_bad_spec.json";
  {
    std::ofstream f(path);
    f << "{ not json";
  }
  const auto r = run({"check-f", "--spec", path});
  CHECK(r.code == 3);
  CHECK(r.err.find("malformed") != std::string::npos);
}

TEST_CASE("reports are versioned and byte-identical across runs") {
  const std::vector<std::string> args{"maxprinciple", "--check", "comparison", "--samples", "15", "--seed", "42"};
  const auto a = run(args);
  const auto b = run(args);
  CHECK(a.out == b.out);
  const auto j = nlohmann::json::parse(a.out);
  CHECK(j.at("schema_version") == 1);
  CHECK(j.at("kind") == "maxprinciple");
  const auto c = run({"maxprinciple", "--check", "comparison", "--samples", "15", "--seed", "43"});
  CHECK(c.out != a.out);
}

TEST_CASE("values carry error estimates") {
  const auto r = run({"eval", "--n", "1", "--s", "0.5", "--profile", "power", "--tau", "0.5", "--at", "1", "3"});
  const auto j = nlohmann::json::parse(r.out);
  for (const auto& pt : j["result"]["points"]) {
    CHECK(pt.contains("value"));
    CHECK(pt.contains("error"));
  }
}

TEST_CASE("csv output") {
  const auto r = run({"solve", "--s", "0.5", "--step", "0.125", "--out", "csv"});
  CHECK(r.code == 0);
  CHECK(r.out.rfind("radius,value,err\n", 0) == 0);
  CHECK(std::count(r.out.begin(), r.out.end(), '\n') == 16);
}

}
