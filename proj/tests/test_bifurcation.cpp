#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "stab/bifurcation.hpp"

using namespace stab;

TEST_CASE("asymptotic marginal wave numbers follow the scaling laws") {
  const ShearProfile prof = profile_from_flag("exponential");
  const double nu = 1e-5;
  const auto [lo, hi] = asymptotic_alphas(prof, nu);

  // exponential profile: slope 1, curvature -1, free stream 1
  CHECK(lo == doctest::Approx(1.005 * std::pow(nu, 0.25)).epsilon(1e-12));
  CHECK(hi ==
        doctest::Approx(std::pow(1.0 / (2.0 * M_PI * M_PI), 1.0 / 6.0) *
                        std::pow(nu, 1.0 / 6.0))
            .epsilon(1e-12));

  // quarter-power lower branch: nu -> 16 nu doubles alpha_-
  const auto [lo16, hi64] = asymptotic_alphas(prof, 16.0 * nu);
  CHECK(lo16 / lo == doctest::Approx(2.0).epsilon(1e-12));
  // sixth-power upper branch: nu -> 64 nu doubles alpha_+
  const auto [lo64, hi64b] = asymptotic_alphas(prof, 64.0 * nu);
  CHECK(hi64b / hi == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("asymptotics are half-space only") {
  const ShearProfile prof = profile_from_flag("poiseuille");
  CHECK_THROWS_AS((void)asymptotic_alphas(prof, 1e-4), std::invalid_argument);
}

TEST_CASE("amplitude ODE reaches the supercritical equilibrium") {
  // dA/dt = lambda A - C A |A|^2 with real positive coefficients settles at
  // |A| = sqrt(Re lambda / Re C).
  const Complex lambda(0.05, 0.3);
  const Complex c_coeff(2.0, -1.0);
  const AmplitudeTrajectory traj =
      amplitude_ode(lambda, c_coeff, Complex(1e-3, 0.0), 800.0, 1.0);
  REQUIRE(!traj.blew_up);
  REQUIRE(traj.amplitude.size() > 10);
  const double expected = std::sqrt(lambda.real() / c_coeff.real());
  CHECK(traj.amplitude.back() == doctest::Approx(expected).epsilon(1e-6));
}

TEST_CASE("amplitude ODE decays below threshold") {
  const AmplitudeTrajectory traj = amplitude_ode(
      Complex(-0.05, 0.3), Complex(2.0, 0.0), Complex(1e-2, 0.0), 400.0, 1.0);
  REQUIRE(!traj.blew_up);
  CHECK(traj.amplitude.back() <= 1e-8);
}

TEST_CASE("amplitude ODE flags finite-time blow-up") {
  // growth with a destabilizing cubic term: |A| diverges in finite time
  const AmplitudeTrajectory traj = amplitude_ode(
      Complex(0.05, 0.0), Complex(-2.0, 0.0), Complex(1e-2, 0.0), 400.0, 1.0);
  CHECK(traj.blew_up);
}

TEST_CASE("no unstable band below the strip critical threshold") {
  const ShearProfile prof = profile_from_flag("poiseuille");
  const SpectralGrid grid = default_grid(prof, 96);
  ModeShift tracker;
  double worst = -1e9;
  for (double alpha : {0.6, 0.8, 1.0, 1.02, 1.1, 1.3}) {
    const GrowthEval ev = leading_growth(prof, grid, alpha, 1.0 / 5500.0,
                                         &tracker);
    worst = std::max(worst, ev.growth);
  }
  CHECK(worst < 0.0);
}

TEST_CASE("wave reconstruction at zero amplitude is the base flow") {
  const ShearProfile prof = profile_from_flag("poiseuille");
  const SpectralGrid grid = default_grid(prof, 64);
  const double re = 7000.0;
  const NeutralPoint pt = neutral_alpha(prof, grid, 1.0 / re, Branch::Lower);
  const LandauResult lr = landau_coefficient(prof, pt, grid);

  const WaveField base = reconstruct_wave(prof, grid, lr.eigen, lr.psi22,
                                          lr.psi20, 0.0, 16);
  CHECK(base.x.size() == 16);
  CHECK(base.u.rows() == 16);
  CHECK(base.u.cols() == grid.n);
  for (int i = 0; i < base.u.rows(); ++i)
    for (int j = 0; j < base.u.cols(); ++j) {
      CHECK(base.u(i, j) == doctest::Approx(prof.u(grid.nodes(j))).epsilon(1e-12));
      CHECK(base.v(i, j) == doctest::Approx(0.0).epsilon(1e-12));
    }
  CHECK(!base.large_epsilon);

  // finite amplitude: real fields, wall clamping, large-epsilon flag
  const WaveField wave = reconstruct_wave(prof, grid, lr.eigen, lr.psi22,
                                          lr.psi20, 0.4, 16);
  CHECK(wave.large_epsilon);
  for (int i = 0; i < wave.v.rows(); ++i) {
    CHECK(wave.v(i, 0) == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(wave.v(i, grid.n - 1) == doctest::Approx(0.0).epsilon(1e-9));
  }
}

TEST_CASE("Landau coefficient is invariant under mode renormalization") {
  const ShearProfile prof = profile_from_flag("poiseuille");
  const SpectralGrid grid = default_grid(prof, 96);
  const NeutralPoint pt = neutral_alpha(prof, grid, 1.0 / 7000.0,
                                        Branch::Lower);
  const LandauResult base = landau_coefficient(prof, pt, grid);

  // rotate the mode pair by a phase; the coefficient must not move
  EigenSolution rotated = base.eigen;
  const Complex phase = std::polar(1.0, 1.234);
  rotated.psi *= phase;
  rotated.psi_star *= phase;  // keeps <zeta, zeta*> = 1
  const LandauResult after = landau_from_eigen(prof, pt, grid, rotated);
  CHECK(std::abs(after.c_coeff - base.c_coeff) <=
        1e-8 * std::abs(base.c_coeff));
}
