#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "stab/orr_sommerfeld.hpp"
#include "stab/profiles.hpp"
#include "stab/spectral.hpp"

namespace stab {

enum class Branch { Lower, Upper };

struct NeutralPoint {
  double nu = 0.0;
  double re = 0.0;
  Branch branch = Branch::Upper;
  double alpha = 0.0;
  double c_phase = 0.0;  // Re(c), Im(c) = 0 enforced at convergence
  double omega0 = 0.0;   // -alpha * c_phase
};

struct NeutralSample {
  double re = 0.0;
  double alpha_minus = 0.0;
  double c_minus = 0.0;
  double alpha_plus = 0.0;
  double c_plus = 0.0;
};

struct NeutralCurve {
  std::string profile;
  std::vector<NeutralSample> samples;  // ascending in re
  double re_c = 0.0;
  double alpha_c = 0.0;
};

struct CriticalPoint {
  double re_c = 0.0;
  double alpha_c = 0.0;
  Complex c_c;
};

enum class Verdict { Subcritical, Supercritical, Marginal };

struct LandauResult {
  NeutralPoint point;
  Complex c_coeff;     // C = b1_proj + b2_proj
  Complex b1_proj;     // -<B1, zeta*>, mean-flow channel
  Complex b2_proj;     // -2<B2, zeta*>, second-harmonic channel
  Complex delta_proj;  // <Delta zeta, zeta*>
  Verdict verdict = Verdict::Marginal;
  double residual_22 = 0.0;
  double residual_20 = 0.0;
  double resonance_margin = 0.0;
  // pipeline intermediates, kept for self-consistency checks and the wave
  EigenSolution eigen;
  ComplexVector b0;
  ComplexVector psi22;
  RealVector mean_rhs;  // doubled curl of B(zeta, conj zeta)
  RealVector psi20;
};

struct AmplitudeTrajectory {
  std::vector<double> t;
  std::vector<double> amplitude;  // |A|(t)
  bool blew_up = false;
};

struct WaveField {
  RealVector x;  // nx points over one period
  RealVector y;  // grid nodes
  RealMatrix u;  // nx rows, n columns
  RealMatrix v;
  bool large_epsilon = false;
};

/// Tracks the followed eigenvalue between nearby solves (warm starts).
using ModeShift = std::optional<Complex>;

/// Growth rate Re(lambda) = alpha Im(c) of the least-stable mode.
struct GrowthEval {
  double growth = 0.0;
  Complex c;
};
GrowthEval leading_growth(const ShearProfile& profile, const SpectralGrid& grid,
                          double alpha, double nu, ModeShift* tracker = nullptr);

/// Root of alpha -> Re(lambda) on one side of the unstable band.
/// bracket_hint, when given, must straddle the root on the chosen side.
NeutralPoint neutral_alpha(const ShearProfile& profile,
                           const SpectralGrid& grid, double nu, Branch branch,
                           std::optional<std::pair<double, double>>
                               bracket_hint = {});

/// Smallest Re with a nonempty unstable band: root in Re of
/// max over alpha of Re(lambda). re_bracket defaults per builtin profile.
CriticalPoint critical_reynolds(const ShearProfile& profile,
                                const SpectralGrid& grid,
                                std::optional<std::pair<double, double>>
                                    re_bracket = {});

/// Continuation of both branches across [re_min, re_max] with warm starts.
/// re_c/alpha_c are taken from `critical`, or computed when absent.
NeutralCurve trace_neutral_curves(const ShearProfile& profile,
                                  const SpectralGrid& grid, double re_min,
                                  double re_max, int steps,
                                  std::optional<CriticalPoint> critical = {});

/// Small-nu asymptotics of the marginal curves (half-space profiles only).
std::pair<double, double> asymptotic_alphas(const ShearProfile& profile,
                                            double nu);

struct LandauOptions {
  bool check_resonance = true;
};

/// The weakly nonlinear pipeline at a converged neutral point:
/// zeta/zeta* -> B0 -> psi22 -> mean flow -> B1, B2 -> C = b1_proj + b2_proj.
LandauResult landau_coefficient(const ShearProfile& profile,
                                const NeutralPoint& point,
                                const SpectralGrid& grid,
                                const LandauOptions& options = {});

/// Same pipeline starting from a caller-supplied mode pair; lets callers
/// probe the normalization invariances of C (phase rotation, rescaling).
LandauResult landau_from_eigen(const ShearProfile& profile,
                               const NeutralPoint& point,
                               const SpectralGrid& grid,
                               const EigenSolution& eigen,
                               const LandauOptions& options = {});

/// Sign change of Re(C) along the lower branch.
double find_re_s(const ShearProfile& profile, const SpectralGrid& grid,
                 std::pair<double, double> bracket);

/// Root of 2 alpha_-(1/Re) - alpha_+(1/Re); nullopt when the bracket holds
/// no sign change ("Re_d above bracket").
std::optional<double> find_re_d(const ShearProfile& profile,
                                const SpectralGrid& grid,
                                std::pair<double, double> bracket);

/// Integrates dA/dt = lambda A - C A |A|^2 with an adaptive embedded
/// Runge-Kutta scheme; samples |A| every dt.
AmplitudeTrajectory amplitude_ode(Complex lambda, Complex c_coeff, Complex a0,
                                  double t_end, double dt);

/// Truncated expansion U + eps (zeta + conj) + eps^2 (second harmonic + mean)
/// on an nx-by-n tensor grid over one period.
WaveField reconstruct_wave(const ShearProfile& profile,
                           const SpectralGrid& grid,
                           const EigenSolution& eigen,
                           const ComplexVector& psi22, const RealVector& psi20,
                           double epsilon, int nx);

/// Default Re bracket used by critical_reynolds for the builtin profiles.
std::pair<double, double> default_re_bracket(const ShearProfile& profile);

/// Default grid for a profile (n = 128 strip, 192 half-space, L = 4).
SpectralGrid default_grid(const ShearProfile& profile, int n_override = 0,
                          double map_scale = 10.0);

}  // namespace stab
