#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"

namespace {

struct RunResult {
  int exit_code = -1;
  std::string stdout_text;
};

// Runs the installed tool with the given arguments; stderr is discarded so
// usage errors stay quiet in the test log.
RunResult run_tool(const std::string& args) {
  const std::string command =
      std::string(STABTOOL_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(command.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult result;
  std::array<char, 4096> buffer;
  while (std::fgets(buffer.data(), buffer.size(), pipe))
    result.stdout_text += buffer.data();
  const int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

}  // namespace

TEST_CASE("eigen solves one operating point and prints a CSV row") {
  const RunResult r =
      run_tool("eigen --profile poiseuille --re 10000 --alpha 1 --n-points 96");
  CHECK(r.exit_code == 0);
  std::istringstream in(r.stdout_text);
  std::string header, row;
  REQUIRE(std::getline(in, header));
  REQUIRE(std::getline(in, row));
  CHECK(header ==
        "profile,re,alpha,re_lambda,im_lambda,re_c_phase,im_c_phase,residual");
  // unstable point: growth column is positive
  std::istringstream fields(row);
  std::string field;
  for (int k = 0; k < 4; ++k) std::getline(fields, field, ',');
  CHECK(std::stod(field) > 0.0);
}

TEST_CASE("missing required flags exit with the usage code") {
  CHECK(run_tool("eigen --profile poiseuille --re 10000").exit_code == 1);
  CHECK(run_tool("eigen --profile poiseuille --alpha 1").exit_code == 1);
  CHECK(run_tool("neutral --re-min 6000 --re-max 7000 --steps 0").exit_code ==
        1);
  CHECK(run_tool("sweep --re-min 100 --re-max 50 --steps 2 --alpha-min 1 "
                 "--alpha-max 2 --alpha-steps 2")
            .exit_code == 1);
  CHECK(run_tool("landau --branch sideways --re 7000").exit_code == 1);
  CHECK(run_tool("bogus-subcommand").exit_code == 1);
}

TEST_CASE("config file values are overridden by flags") {
  const std::string path = "/tmp/stabtool_test_config.cfg";
  {
    std::ofstream out(path);
    out << "[eigen]\nprofile = poiseuille\nre = 10000\nalpha = 1\n"
           "n_points = 64\n";
  }
  const RunResult from_file = run_tool("eigen --config " + path);
  CHECK(from_file.exit_code == 0);
  const RunResult overridden =
      run_tool("eigen --config " + path + " --alpha 1.1");
  CHECK(overridden.exit_code == 0);
  CHECK(from_file.stdout_text != overridden.stdout_text);
  std::remove(path.c_str());
}

TEST_CASE("sweep writes its CSV to a file") {
  const std::string path = "/tmp/stabtool_test_sweep.csv";
  const RunResult r = run_tool(
      "sweep --profile poiseuille --re-min 4000 --re-max 8000 --steps 2 "
      "--alpha-min 0.9 --alpha-max 1.1 --alpha-steps 2 --n-points 64 "
      "--workers 2 --output " +
      path);
  CHECK(r.exit_code == 0);
  std::ifstream in(path);
  REQUIRE(in.good());
  std::string header;
  std::getline(in, header);
  CHECK(header ==
        "re,alpha,re_lambda,im_lambda,re_c_phase,im_c_phase,residual,status");
  int rows = 0;
  for (std::string line; std::getline(in, line);)
    if (!line.empty()) ++rows;
  CHECK(rows == 4);
  std::remove(path.c_str());
}
