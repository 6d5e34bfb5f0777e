#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "cli.hpp"

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result run(std::vector<std::string> args) {
  std::vector<const char*> argv{"tms"};
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = tms::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("tms_cli_test_" + name);
}

}  // namespace

TEST_CASE("list-models names the built-in catalog") {
  const auto r = run({"list-models"});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("iceberg") != std::string::npos);
  CHECK(r.out.find("beach") != std::string::npos);
  CHECK(r.out.find("three_spin_ising") != std::string::npos);
}

TEST_CASE("outputs echo the config and are reproducible") {
  const auto a = run({"parry", "--model", "golden_mean"});
  const auto b = run({"parry", "--model", "golden_mean"});
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  const auto j = nlohmann::json::parse(a.out);
  CHECK(j["config"]["model"] == "golden_mean");
  CHECK(j["result"]["lambda"].get<double>() == doctest::Approx(1.618033988749895));

  const auto s1 = run({"gibbs", "--model", "iceberg(1)", "--size", "4", "--sweeps", "200", "--seed", "3"});
  const auto s2 = run({"gibbs", "--model", "iceberg(1)", "--size", "4", "--sweeps", "200", "--seed", "3"});
  REQUIRE(s1.code == 0);
  CHECK(s1.out == s2.out);
}

TEST_CASE("frontier of the L1 ball") {
  const auto r = run({"frontier", "--dim", "2", "--l1", "6"});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out)["result"];
  CHECK(j["interior"]["size"] == 41);
  CHECK(j["boundary"]["size"] == 44);
}

TEST_CASE("exit status 2 on malformed input") {
  const auto bad = temp_file("bad.json");
  {
    std::ofstream f(bad);
    f << R"({"dimension": 2, "alphabet": ["a", "b"], "constraint": {"type": "axis_pairs", "allowed": [[[1]]]}})";
  }
  const auto r = run({"enumerate", "--model", bad.string()});
  CHECK(r.code == 2);
  CHECK_FALSE(r.err.empty());
  std::filesystem::remove(bad);

  CHECK(run({"parry", "--model", "no_such_model"}).code == 2);
  CHECK(run({"gibbs", "--model", "iceberg(1)"}).code == 2);  // --seed is required
  CHECK(run({"spectrum", "--driver", "sturmian:7", "--seed", "1"}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
}

TEST_CASE("exit status 1 on negative verdicts") {
  CHECK(run({"check-maltese", "--model", "checkerboard"}).code == 1);
  CHECK(run({"check-maltese", "--model", "iceberg(1)"}).code == 0);
  CHECK(run({"check-irreducible", "--model", "checkerboard", "--mode", "strong", "--max-window", "2"}).code == 1);
}

TEST_CASE("--out writes atomically and leaves no partial file") {
  const auto path = temp_file("parry.json");
  std::filesystem::remove(path);
  const auto r = run({"parry", "--model", "golden_mean", "--out", path.string()});
  REQUIRE(r.code == 0);
  CHECK(std::filesystem::exists(path));
  CHECK_FALSE(std::filesystem::exists(path.string() + ".partial"));
  std::ifstream f(path);
  const auto j = nlohmann::json::parse(f);
  CHECK(j.contains("config"));
  std::filesystem::remove(path);
}

TEST_CASE("spectrum CSV carries the config as a comment") {
  const auto r = run({"spectrum", "--driver", "periodic:+-", "--lags", "32", "--replicas", "4", "--positions", "16",
                      "--seed", "2"});
  REQUIRE(r.code == 0);
  CHECK(r.out.rfind("# config:", 0) == 0);
}
