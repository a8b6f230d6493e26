#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <stdexcept>
#include <string>

#include "doctest.h"
#include "stab/config.hpp"

using namespace stab;

TEST_CASE("config text round-trips exactly") {
  RunConfig c;
  c.subcommand = "threshold";
  c.profile = "exponential";
  c.p = 3;
  c.n_points = 192;
  c.map_scale = 12.5;
  c.re = 56375.0;
  c.alpha = 0.1452891234567;
  c.re_min = 1000.0;
  c.re_max = 1e5;
  c.steps = 17;
  c.branch = "lower";
  c.epsilon = 1e-3;
  c.nx = 48;
  c.workers = 8;
  c.seed = 424242;
  c.output = "out.csv";
  c.alpha_min = 0.05;
  c.alpha_max = 0.3;
  c.alpha_steps = 9;
  c.only = "re_c";

  const RunConfig back = from_config_text(to_config_text(c));
  CHECK(back == c);
}

TEST_CASE("default config round-trips") {
  const RunConfig c;
  CHECK(from_config_text(to_config_text(c)) == c);
}

TEST_CASE("parser tolerates comments and whitespace") {
  const std::string text =
      "# run configuration\n"
      "[eigen]\n"
      "  profile = quartic  \n"
      "\n"
      "re=5000\n"
      "# trailing comment\n"
      "alpha = 1.25\n";
  const RunConfig c = from_config_text(text);
  CHECK(c.subcommand == "eigen");
  CHECK(c.profile == "quartic");
  CHECK(c.re == doctest::Approx(5000.0));
  CHECK(c.alpha == doctest::Approx(1.25));
}

TEST_CASE("unknown keys are rejected") {
  CHECK_THROWS_AS((void)from_config_text("[eigen]\nbogus = 1\n"),
                  std::invalid_argument);
}

TEST_CASE("format_full preserves doubles bit for bit") {
  for (double v : {0.1, 1.0 / 3.0, 5772.2219134, -1e-17, 6.02214076e23}) {
    CHECK(std::stod(format_full(v)) == v);
  }
}
