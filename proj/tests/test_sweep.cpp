#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <sstream>
#include <stdexcept>
#include <string>

#include "doctest.h"
#include "stab/sweep.hpp"

using namespace stab;

namespace {

SweepRequest small_request(int workers) {
  SweepRequest req;
  req.profile = builtin_profile("poiseuille_family", 1);
  req.n_points = 64;
  req.res = {4000.0, 6000.0, 8000.0};
  req.alphas = {0.8, 1.0, 1.2};
  req.workers = workers;
  return req;
}

}  // namespace

TEST_CASE("sweep output is deterministic across worker counts") {
  const std::string serial = sweep_csv(small_request(1));
  const std::string parallel = sweep_csv(small_request(4));
  CHECK(serial == parallel);
}

TEST_CASE("sweep CSV has the documented schema and row order") {
  const std::string csv = sweep_csv(small_request(2));
  std::istringstream in(csv);
  std::string line;
  REQUIRE(std::getline(in, line));
  CHECK(line ==
        "re,alpha,re_lambda,im_lambda,re_c_phase,im_c_phase,residual,status");

  int rows = 0;
  double prev_re = 0.0, prev_alpha = 0.0;
  while (std::getline(in, line)) {
    REQUIRE(!line.empty());
    std::istringstream fields(line);
    std::string field;
    int count = 0;
    double re = 0.0, alpha = 0.0;
    while (std::getline(fields, field, ',')) {
      if (count == 0) re = std::stod(field);
      if (count == 1) alpha = std::stod(field);
      ++count;
    }
    CHECK(count == 8);
    // Re outer, alpha inner
    if (rows > 0) {
      CHECK(re >= prev_re);
      if (re == prev_re) CHECK(alpha > prev_alpha);
    }
    prev_re = re;
    prev_alpha = alpha;
    ++rows;
  }
  CHECK(rows == 9);
}

TEST_CASE("sweep growth rates carry the expected signs") {
  // Plane Poiseuille at alpha = 1: stable at Re = 4000, unstable at Re = 8000.
  const std::string csv = sweep_csv(small_request(1));
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);  // header
  while (std::getline(in, line)) {
    std::istringstream fields(line);
    std::string re_s, alpha_s, grow_s;
    std::getline(fields, re_s, ',');
    std::getline(fields, alpha_s, ',');
    std::getline(fields, grow_s, ',');
    const double re = std::stod(re_s);
    const double alpha = std::stod(alpha_s);
    const double growth = std::stod(grow_s);
    if (alpha == 1.0 && re == 4000.0) CHECK(growth < 0.0);
    if (alpha == 1.0 && re == 8000.0) CHECK(growth > 0.0);
  }
}

TEST_CASE("empty grids are rejected") {
  SweepRequest req = small_request(1);
  req.res.clear();
  CHECK_THROWS_AS((void)sweep_csv(req), std::invalid_argument);
  req = small_request(1);
  req.alphas.clear();
  CHECK_THROWS_AS((void)sweep_csv(req), std::invalid_argument);
}
