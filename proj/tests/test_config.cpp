#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cstdio>
#include <fstream>

#include "doctest.h"
#include "stdgt/config.hpp"

using namespace stdgt;

namespace {

struct TempFile {
  std::string path;
  explicit TempFile(const std::string& name, const std::string& content)
      : path(name) {
    std::ofstream os(path);
    os << content;
  }
  ~TempFile() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("defaults are a valid runnable description") {
  const RunConfig config;
  CHECK(config.scenario == "plane-wave");
  CHECK(config.p == 3);
  CHECK(config.h == 1.0);
  CHECK(config.tau == 0.0);  // resolved to h/2 downstream
  CHECK(config.T == 24.0);
  CHECK(config.bc == "transparent");
  CHECK(config.adapt);
  CHECK(config.beta_inflow == 1.0);
  CHECK(config.solver == "auto");
  CHECK(config.checkpoint == "off");
  CHECK_NOTHROW(config.validate());
}

TEST_CASE("single entries are parsed with strict types") {
  RunConfig config;
  apply_config_entry(config, "run.p", "2");
  CHECK(config.p == 2);
  apply_config_entry(config, "run.tau", "0.125");
  CHECK(config.tau == 0.125);
  apply_config_entry(config, "run.scenario", "cylindrical");
  CHECK(config.scenario == "cylindrical");
  apply_config_entry(config, "boundary.bc", "sm");
  CHECK(config.bc == "sm");
  apply_config_entry(config, "boundary.left", "pec");
  CHECK(config.bc_per_tag.at("left") == "pec");
  apply_config_entry(config, "basis.adapt", "off");
  CHECK_FALSE(config.adapt);
  apply_config_entry(config, "basis.adapt", "yes");
  CHECK(config.adapt);
  apply_config_entry(config, "basis.theta0", "3.9269908169872414");
  CHECK(config.theta0 == doctest::Approx(3.9269908169872414));
  apply_config_entry(config, "run.dump_matrix", "true");
  CHECK(config.dump_matrix);
  apply_config_entry(config, "convergence.h", "1, 0.5, 0.25");
  REQUIRE(config.h_list.size() == 3);
  CHECK(config.h_list[1] == 0.5);
  apply_config_entry(config, "convergence.p", "1,2");
  REQUIRE(config.p_list.size() == 2);
  CHECK(config.p_list[0] == 1);

  CHECK_THROWS_AS(apply_config_entry(config, "run.unknown", "1"),
                  std::invalid_argument);
  CHECK_THROWS_AS(apply_config_entry(config, "run.p", "two"),
                  std::invalid_argument);
  CHECK_THROWS_AS(apply_config_entry(config, "run.p", "2.5"),
                  std::invalid_argument);
  CHECK_THROWS_AS(apply_config_entry(config, "run.tau", "0.5x"),
                  std::invalid_argument);
  CHECK_THROWS_AS(apply_config_entry(config, "basis.adapt", "maybe"),
                  std::invalid_argument);
  CHECK_THROWS_AS(apply_config_entry(config, "convergence.h", "1,nope"),
                  std::invalid_argument);
}

TEST_CASE("config files: sections, comments and overrides") {
  const TempFile file("config_test_ok.cfg",
                      "# full example\n"
                      "[run]\n"
                      "scenario = cylindrical   ; trailing comment\n"
                      "p = 4\n"
                      "h = 0.5\n"
                      "tau = 0.25\n"
                      "T = 40\n"
                      "\n"
                      "[boundary]\n"
                      "bc = transparent\n"
                      "bottom = sm\n"
                      "\n"
                      "[basis]\n"
                      "adapt = true\n"
                      "\n"
                      "[material]\n"
                      "epsilon = 1.0\n"
                      "mu = 1.0\n");
  const RunConfig config = parse_config_file(file.path);
  CHECK(config.scenario == "cylindrical");
  CHECK(config.p == 4);
  CHECK(config.h == 0.5);
  CHECK(config.tau == 0.25);
  CHECK(config.T == 40.0);
  CHECK(config.bc == "transparent");
  CHECK(config.bc_per_tag.at("bottom") == "sm");
  CHECK(config.bc_per_tag.count("top") == 0);
  CHECK_NOTHROW(config.validate());
}

TEST_CASE("config files: malformed input is reported with a line number") {
  const TempFile no_section("config_test_nosect.cfg", "p = 3\n");
  CHECK_THROWS_WITH_AS(parse_config_file(no_section.path),
                       doctest::Contains("line 1"), std::invalid_argument);

  const TempFile bad_section("config_test_badsect.cfg", "[run\np = 3\n");
  CHECK_THROWS_WITH_AS(parse_config_file(bad_section.path),
                       doctest::Contains("line 1"), std::invalid_argument);

  const TempFile no_eq("config_test_noeq.cfg", "[run]\njust words\n");
  CHECK_THROWS_WITH_AS(parse_config_file(no_eq.path),
                       doctest::Contains("line 2"), std::invalid_argument);

  CHECK_THROWS_AS(parse_config_file("missing_file_92.cfg"),
                  std::invalid_argument);
}

TEST_CASE("validation rejects out-of-range runs") {
  RunConfig config;
  config.p = 6;
  CHECK_THROWS_AS(config.validate(), std::invalid_argument);
  config = RunConfig{};
  config.scenario = "unknown";
  CHECK_THROWS_AS(config.validate(), std::invalid_argument);
  config = RunConfig{};
  config.h = 0.0;
  CHECK_THROWS_AS(config.validate(), std::invalid_argument);
  config = RunConfig{};
  config.bc = "absorbing";
  CHECK_THROWS_AS(config.validate(), std::invalid_argument);
  config = RunConfig{};
  config.bc_per_tag["left"] = "weird";
  CHECK_THROWS_AS(config.validate(), std::invalid_argument);
  config = RunConfig{};
  config.bc = "pec-exact";
  CHECK_NOTHROW(config.validate());
  config.scenario = "cylindrical";
  CHECK_THROWS_AS(config.validate(), std::invalid_argument);
  config = RunConfig{};
  config.beta_inflow = -0.1;
  CHECK_THROWS_AS(config.validate(), std::invalid_argument);
  config = RunConfig{};
  config.epsilon = 0.0;
  CHECK_THROWS_AS(config.validate(), std::invalid_argument);
  config = RunConfig{};
  config.solver = "multigrid";
  CHECK_THROWS_AS(config.validate(), std::invalid_argument);
  config = RunConfig{};
  config.checkpoint = "sometimes";
  CHECK_THROWS_AS(config.validate(), std::invalid_argument);
  config = RunConfig{};
  config.raster = 0;
  CHECK_THROWS_AS(config.validate(), std::invalid_argument);
  config = RunConfig{};
  config.p_list = {1, 7};
  CHECK_THROWS_AS(config.validate(), std::invalid_argument);
  config = RunConfig{};
  config.h_list = {1.0, -0.5};
  CHECK_THROWS_AS(config.validate(), std::invalid_argument);
}
