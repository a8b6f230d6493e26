#pragma once

#include <array>
#include <optional>
#include <vector>

#include "stab/profiles.hpp"
#include "stab/spectral.hpp"

namespace stab {

enum class PencilKind { Direct, Adjoint, SecondHarmonic };

/// Spurious boundary-row eigenvalues are parked at this phase speed.
inline constexpr double kSentinelPhaseSpeed = 1.0e6;
/// Modes with |c| above this are discarded as non-physical.
inline constexpr double kPhaseSpeedCutoff = 50.0;

/// Generalized pencil A psi = c B psi in physical space. The four boundary
/// rows replace the discretized equation; the mass side carries the same row
/// scaled by 1/kSentinelPhaseSpeed so boundary modes land at the sentinel.
struct OSPencil {
  ComplexMatrix a;
  ComplexMatrix b;
  double alpha = 0.0;
  double nu = 0.0;
  std::array<int, 4> bc_rows{};
  PencilKind kind = PencilKind::Direct;
  double a_norm = 0.0;  // infinity norms, cached for residual scaling
  double b_norm = 0.0;
  // Free-stream speed for half-space problems. The discretized continuous
  // spectrum piles up at c = u_plus; modes that close to the free stream are
  // grid artifacts, not wall modes, and are excluded from leading-mode picks.
  std::optional<double> free_stream;
};

struct Mode {
  Complex c;
  ComplexVector psi;
  double residual = 0.0;  // ||(A - cB) psi|| / ((||A|| + |c| ||B||) ||psi||)
};

struct EigenSolution {
  double alpha = 0.0;
  double nu = 0.0;
  Complex c;
  Complex lambda;  // -i alpha c
  ComplexVector psi;
  ComplexVector psi_star;
  bool zeta_norm_ok = false;
  double residual_direct = 0.0;
  double residual_adjoint = 0.0;
};

struct ResolventSolution {
  ComplexVector psi;
  double residual = 0.0;  // ||A x - b|| / (||A|| ||x|| + ||b||)
  double rcond = 0.0;
  double resonance = 0.0;  // second-harmonic solves only
};

struct MeanFlowSolution {
  RealVector psi;
  double residual = 0.0;
};

OSPencil assemble_direct(const ShearProfile& profile, const SpectralGrid& grid,
                         double alpha, double nu);
OSPencil assemble_adjoint(const ShearProfile& profile,
                          const SpectralGrid& grid, double alpha, double nu);

/// Full dense eigenvalue solve (Schur, no vectors); sentinel and off-cutoff
/// eigenvalues filtered out, sorted by decreasing Im(c).
std::vector<Complex> pencil_eigenvalues(const OSPencil& pencil);

/// The top_k least-stable physical modes; eigenvalues from the dense solve,
/// eigenvectors recovered by shift-invert (high-residual candidates dropped).
std::vector<Mode> physical_modes(const OSPencil& pencil, int top_k = 8);

/// Inverse iteration with Rayleigh-quotient restarts near `shift`.
std::optional<Mode> shift_invert_mode(const OSPencil& pencil, Complex shift,
                                      const ComplexVector* start = nullptr);

/// Most unstable physical eigenvalue; warm-started when `shift` is given.
std::optional<Mode> leading_eigenvalue(const OSPencil& pencil,
                                       std::optional<Complex> shift = {});

/// Solves direct and adjoint problems at the same (alpha, nu), pairs them and
/// normalizes so that <zeta, zeta*> = 1 (zeta itself normalized to unit L2).
/// Throws std::runtime_error if no converged physical mode exists or the
/// adjoint eigenvalue fails to pair with the direct one.
EigenSolution leading_mode(const OSPencil& direct, const OSPencil& adjoint,
                           const SpectralGrid& grid,
                           std::optional<Complex> shift = {});

/// Second-harmonic resolvent: solves the Orr-Sommerfeld-type problem at wave
/// number 2 alpha with frequency 2 omega0 and right side rhs_b0.
/// Throws std::runtime_error when 2 i omega0 is resonant with the 2 alpha
/// operator (margin below 1e-6).
ResolventSolution solve_second_harmonic(const ShearProfile& profile,
                                        const SpectralGrid& grid, double alpha,
                                        double nu, double omega0,
                                        const ComplexVector& rhs_b0,
                                        bool check_resonance = true);

/// Mean-flow correction: -nu d^4/dy^4 psi20 = rhs with the fixed-flux closure
/// (clamped stream function in the strip; wall clamping plus decay rows in
/// the half space).
MeanFlowSolution solve_mean_flow(const SpectralGrid& grid, double nu,
                                 const RealVector& rhs);

/// Distance from 2 i omega0 to the spectrum of the wave-number-2alpha
/// linearized operator (in growth-rate units).
double resonance_margin(const ShearProfile& profile, const SpectralGrid& grid,
                        double alpha, double nu, double omega0);

}  // namespace stab
