#include "cli.hpp"
#include "pcfdyn/config.hpp"

#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

using namespace pcfdyn;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "pcfdyn");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("unknown flags fail with no output") {
  const auto r = run({"bottcher", "--frobnicate"});
  CHECK(r.code == 1);
  CHECK(r.out.empty());
  CHECK(!r.err.empty());
  CHECK(run({}).code == 1);
  CHECK(run({"nosuch"}).code == 1);
}

TEST_CASE("bottcher --order 4 --verify reports an all-zero residual") {
  const auto r = run({"bottcher", "--order", "4", "--verify"});
  REQUIRE(r.code == 0);
  const auto j = Json::parse(r.out);
  CHECK(j["verify"]["residual_all_zero"] == true);
  CHECK(j["coeffs"].size() == 4);
  CHECK(j["coeffs"][0]["poly"]["text"] == "-1/4*w*c^2");
  CHECK(j["seed"] == 20240601);
}

TEST_CASE("seed is recorded and output is stable") {
  const auto a = run({"--seed", "5", "classify", "--probe", "1,0", "--zeta", "0,1"});
  const auto b = run({"--seed", "5", "classify", "--probe", "1,0", "--zeta", "0,1"});
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(Json::parse(a.out)["seed"] == 5);
  CHECK(Json::parse(a.out)["kind"] == "finite");
}

TEST_CASE("equidist output does not depend on the thread count") {
  const auto a = run({"--threads", "1", "equidist", "--resolution", "64"});
  const auto b = run({"--threads", "3", "equidist", "--resolution", "64"});
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(Json::parse(a.out)["dictionary"] == "dict-v1");
}

TEST_CASE("pcf subcommand solves one system") {
  const auto r = run({"pcf", "--relation", "0,1,0,1"});
  REQUIRE(r.code == 0);
  const auto j = Json::parse(r.out);
  CHECK(j["points"].size() == 3);
  CHECK(j["certified"] == 3);
}

TEST_CASE("green returns 2 when undecided and 1 on bad input") {
  CHECK(run({"green", "--c", "x"}).code == 1);
  const auto r = run({"green", "--c", "0", "--a", "0"});
  CHECK(r.code == 0);
  CHECK(Json::parse(r.out)["G"]["value"] == 0.0);
  // A parameter near the bifurcation locus with a one-step iteration cap.
  const std::string cfg_path = "pcfdyn_test_cfg.json";
  {
    std::ofstream f(cfg_path);
    f << R"({"green_max_iterations": 1})";
  }
  CHECK(run({"--config", cfg_path, "green", "--c", "0", "--a", "0.6"}).code == 2);
  std::remove(cfg_path.c_str());
}

TEST_CASE("config files: round trip and rejection of unknown keys") {
  RunConfig cfg;
  cfg.seed = 99;
  cfg.caps = {2, 3};
  const RunConfig back = config_from_json(to_json(cfg));
  CHECK(back.seed == 99);
  CHECK(back.caps == std::vector<int>{2, 3});
  CHECK_THROWS_AS(config_from_json(Json{{"bogus", 1}}), Error);
  CHECK_THROWS_AS(config_from_json(Json{{"orbit_cap", 0}}), Error);
}

TEST_CASE("multiplier-valuations and selftest subset") {
  const auto r = run({"multiplier-valuations", "--d", "3", "--u-relation", "0,2", "--m", "1"});
  REQUIRE(r.code == 0);
  CHECK(Json::parse(r.out)["pass"] == true);
  const auto s = run({"selftest", "--only", "1,3"});
  CHECK(s.code == 0);
  CHECK(s.out.find("criterion 1: PASS") != std::string::npos);
  CHECK(run({"selftest", "--only", "4"}).code == 1);
  CHECK(run({"selftest", "--only", "4", "--known-discrepancy", "4"}).code == 0);
}

TEST_CASE("--out writes the document to a file") {
  const std::string path = "pcfdyn_test_out.json";
  const auto r = run({"--out", path, "perm", "--m", "1", "--lambda", "0"});
  REQUIRE(r.code == 0);
  CHECK(r.out.empty());
  std::ifstream f(path);
  const auto j = Json::parse(f);
  CHECK(j["poly"]["text"] == "-a^6 + 1/6*c^3*a^3 + c*a^3");
  std::remove(path.c_str());
}
