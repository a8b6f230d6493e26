#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <complex>

#include "doctest.h"
#include "stab/orr_sommerfeld.hpp"
#include "stab/profiles.hpp"
#include "stab/spectral.hpp"

using namespace stab;

namespace {

constexpr double kRe = 1.0e4;
constexpr double kAlpha = 1.0;
// Reference leading eigenvalue for plane Poiseuille at Re = 1e4, alpha = 1,
// converged to all printed digits on this discretization family.
const Complex kReferenceC{0.23752648881953375, 0.0037396706214110217};

}  // namespace

TEST_CASE("plane Poiseuille leading eigenvalue matches the reference") {
  const ShearProfile prof = profile_from_flag("poiseuille");
  const SpectralGrid grid = make_grid(Geometry::Strip, 128);
  const OSPencil pencil = assemble_direct(prof, grid, kAlpha, 1.0 / kRe);
  const auto mode = leading_eigenvalue(pencil);
  REQUIRE(mode.has_value());
  CHECK(std::abs(mode->c - kReferenceC) <= 1e-9);
  CHECK(mode->residual <= 1e-10);
}

TEST_CASE("adjoint spectrum is the conjugate of the direct spectrum") {
  const ShearProfile prof = profile_from_flag("poiseuille");
  const SpectralGrid grid = make_grid(Geometry::Strip, 96);
  const OSPencil direct = assemble_direct(prof, grid, kAlpha, 1.0 / kRe);
  const OSPencil adjoint = assemble_adjoint(prof, grid, kAlpha, 1.0 / kRe);
  const auto cs_direct = pencil_eigenvalues(direct);
  const auto cs_adjoint = pencil_eigenvalues(adjoint);
  REQUIRE(cs_direct.size() >= 5);
  // each of the five least-stable direct eigenvalues has a conjugate partner
  for (int k = 0; k < 5; ++k) {
    double best = 1e9;
    for (const Complex ca : cs_adjoint)
      best = std::min(best, std::abs(std::conj(ca) - cs_direct[k]));
    CHECK(best <= 1e-6);
  }
}

TEST_CASE("leading_mode pairs direct and adjoint with unit biorthogonality") {
  const ShearProfile prof = profile_from_flag("poiseuille");
  const SpectralGrid grid = make_grid(Geometry::Strip, 128);
  const OSPencil direct = assemble_direct(prof, grid, kAlpha, 1.0 / kRe);
  const OSPencil adjoint = assemble_adjoint(prof, grid, kAlpha, 1.0 / kRe);
  const EigenSolution sol = leading_mode(direct, adjoint, grid);

  CHECK(sol.zeta_norm_ok);
  CHECK(std::abs(sol.c - kReferenceC) <= 1e-8);
  CHECK(std::abs(sol.lambda - Complex(0.0, -1.0) * kAlpha * sol.c) <= 1e-14);
  // normalization: the velocity vector zeta = (-psi', i alpha psi) has
  // unit L2 norm
  const std::pair<ComplexVector, ComplexVector> zeta{
      -(grid.d1 * sol.psi).eval(), Complex(0.0, kAlpha) * sol.psi};
  CHECK(std::abs(vector_inner_product(zeta, zeta, grid).real() - 1.0) <=
        1e-8);

  // walls are clamped on both functions
  const int n = grid.n;
  CHECK(std::abs(sol.psi(0)) <= 1e-10);
  CHECK(std::abs(sol.psi(n - 1)) <= 1e-10);
  CHECK(std::abs(sol.psi_star(0)) <= 1e-10);
  CHECK(std::abs(sol.psi_star(n - 1)) <= 1e-10);
}

TEST_CASE("mean-flow solve reproduces a closed-form strip solution") {
  // -nu psi'''' = k (constant) with clamped stream function has the
  // polynomial solution psi = -(k / (24 nu)) (y^2 - 1)^2.
  const SpectralGrid grid = make_grid(Geometry::Strip, 64);
  const double nu = 1e-3;
  const double k = 2.0;
  const RealVector rhs = RealVector::Constant(grid.n, k);
  const MeanFlowSolution sol = solve_mean_flow(grid, nu, rhs);
  CHECK(sol.residual <= 1e-8);
  for (int j = 0; j < grid.n; ++j) {
    const double y = grid.nodes(j);
    const double exact = -(k / (24.0 * nu)) * (y * y - 1.0) * (y * y - 1.0);
    CHECK(sol.psi(j) == doctest::Approx(exact).epsilon(1e-8));
  }
}

TEST_CASE("second-harmonic solve satisfies its own linear system") {
  const ShearProfile prof = profile_from_flag("poiseuille");
  const SpectralGrid grid = make_grid(Geometry::Strip, 96);
  const double nu = 1.0 / 6000.0;
  const OSPencil direct = assemble_direct(prof, grid, kAlpha, nu);
  const auto mode = leading_eigenvalue(direct);
  REQUIRE(mode.has_value());
  const double omega0 = (kAlpha * mode->c).real();

  ComplexVector rhs = ComplexVector::Zero(grid.n);
  for (int j = 0; j < grid.n; ++j) {
    const double y = grid.nodes(j);
    rhs(j) = (1.0 - y * y) * (y * y);  // smooth interior forcing
  }
  const ResolventSolution sol =
      solve_second_harmonic(prof, grid, kAlpha, nu, omega0, rhs);
  CHECK(sol.residual <= 1e-8);
  CHECK(sol.resonance > 1e-6);
  // clamped at both walls
  CHECK(std::abs(sol.psi(0)) <= 1e-10);
  CHECK(std::abs(sol.psi(grid.n - 1)) <= 1e-10);
}

TEST_CASE("half-space leading mode avoids the free-stream pile-up") {
  const ShearProfile prof = profile_from_flag("exponential");
  const SpectralGrid grid = make_grid(Geometry::HalfSpace, 160, 10.0);
  // well inside the unstable band measured for this box height
  const OSPencil pencil = assemble_direct(prof, grid, 0.145, 1.0 / 60000.0);
  const auto mode = leading_eigenvalue(pencil);
  REQUIRE(mode.has_value());
  CHECK(std::abs(mode->c - 1.0) > 1e-2);  // not the free-stream artifact
  CHECK(mode->c.imag() > 0.0);            // unstable wall mode
  CHECK(mode->residual <= 1e-8);
}
