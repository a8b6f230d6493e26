#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "doctest.h"
#include "stab/orr_sommerfeld.hpp"
#include "stab/validation.hpp"

using namespace stab;

TEST_CASE("shooting oracle agrees with collocation to four significant digits") {
  const double re = 1.0e4;
  const double alpha = 1.0;

  const ShearProfile prof = profile_from_flag("poiseuille");
  const SpectralGrid grid = make_grid(Geometry::Strip, 128);
  const OSPencil pencil = assemble_direct(prof, grid, alpha, 1.0 / re);
  const auto mode = leading_eigenvalue(pencil);
  REQUIRE(mode.has_value());

  const Complex shot =
      shooting_eigenvalue_poiseuille(re, alpha, Complex(0.24, 0.004));

  // four significant digits relative to |c|
  CHECK(std::abs(shot - mode->c) <= 5e-4 * std::abs(mode->c));
}

TEST_CASE("oracle is stable under step refinement") {
  const Complex coarse = shooting_eigenvalue_poiseuille(
      1.0e4, 1.0, Complex(0.24, 0.004), 8000);
  const Complex fine = shooting_eigenvalue_poiseuille(
      1.0e4, 1.0, Complex(0.24, 0.004), 16000);
  CHECK(std::abs(coarse - fine) <= 1e-7);
}

TEST_CASE("oracle tracks a second operating point") {
  // Re = 8000, alpha = 1.1: still in the unstable neighborhood
  const double re = 8000.0;
  const double alpha = 1.1;
  const ShearProfile prof = profile_from_flag("poiseuille");
  const SpectralGrid grid = make_grid(Geometry::Strip, 128);
  const OSPencil pencil = assemble_direct(prof, grid, alpha, 1.0 / re);
  const auto mode = leading_eigenvalue(pencil);
  REQUIRE(mode.has_value());
  const Complex shot = shooting_eigenvalue_poiseuille(re, alpha, mode->c);
  CHECK(std::abs(shot - mode->c) <= 5e-4 * std::abs(mode->c));
}
