#include "stab/orr_sommerfeld.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>

namespace stab {
namespace {

const Complex kI(0.0, 1.0);

struct BcRows {
  std::array<int, 4> rows;
  std::array<RealVector, 4> conditions;
};

// Two conditions per boundary: value and first derivative, at each wall of
// the strip or at the wall and the far boundary of the half-space box.
BcRows boundary_conditions(const SpectralGrid& grid) {
  const int n = grid.n;
  BcRows bc;
  bc.rows = {0, 1, n - 2, n - 1};
  RealVector e_top = RealVector::Zero(n);
  e_top(0) = 1.0;
  RealVector e_bot = RealVector::Zero(n);
  e_bot(n - 1) = 1.0;
  bc.conditions[0] = e_top;
  bc.conditions[1] = grid.d1.row(0);
  bc.conditions[2] = grid.d1.row(n - 1);
  bc.conditions[3] = e_bot;
  return bc;
}

double inf_norm(const ComplexMatrix& m) {
  return m.cwiseAbs().rowwise().sum().maxCoeff();
}

// Replace the four boundary rows; the mass side gets the same row divided by
// the sentinel phase speed so the boundary modes appear at c = sentinel.
void apply_bc_rows(ComplexMatrix& a, ComplexMatrix& b, const BcRows& bc) {
  const double scale = inf_norm(b);
  for (int k = 0; k < 4; ++k) {
    RealVector row = bc.conditions[k];
    row *= scale / row.cwiseAbs().maxCoeff();
    b.row(bc.rows[k]) = row.cast<Complex>() / kSentinelPhaseSpeed;
    a.row(bc.rows[k]) = row.cast<Complex>();
  }
}

double pencil_residual(const OSPencil& p, Complex c, const ComplexVector& v) {
  const double denom =
      (p.a_norm + std::abs(c) * p.b_norm) * v.norm();
  return (p.a * v - c * (p.b * v)).norm() / denom;
}

ComplexVector deterministic_start(int n) {
  ComplexVector x(n);
  unsigned s = 12345u;
  for (int j = 0; j < n; ++j) {
    s = s * 1664525u + 1013904223u;
    const double re = (s >> 8) / double(1u << 24) - 0.5;
    s = s * 1664525u + 1013904223u;
    const double im = (s >> 8) / double(1u << 24) - 0.5;
    x(j) = Complex(re, im);
  }
  return x;
}

OSPencil finish_pencil(ComplexMatrix a, ComplexMatrix b, double alpha,
                       double nu, PencilKind kind, const SpectralGrid& grid) {
  OSPencil p;
  const BcRows bc = boundary_conditions(grid);
  apply_bc_rows(a, b, bc);
  p.a = std::move(a);
  p.b = std::move(b);
  p.alpha = alpha;
  p.nu = nu;
  p.bc_rows = bc.rows;
  p.kind = kind;
  p.a_norm = inf_norm(p.a);
  p.b_norm = inf_norm(p.b);
  return p;
}

ComplexMatrix profile_diagonal(const ShearProfile& profile,
                               const SpectralGrid& grid,
                               const std::function<double(double)>& f,
                               double at_infinity) {
  RealVector d(grid.n);
  for (int j = 0; j < grid.n; ++j)
    d(j) = std::isinf(grid.nodes(j)) ? at_infinity : f(grid.nodes(j));
  return d.cast<Complex>().asDiagonal();
}

}  // namespace

OSPencil assemble_direct(const ShearProfile& profile, const SpectralGrid& grid,
                         double alpha, double nu) {
  if (alpha <= 0.0) throw std::invalid_argument("assemble_direct: alpha > 0 required");
  if (nu <= 0.0) throw std::invalid_argument("assemble_direct: nu > 0 required");
  const int n = grid.n;
  const double a2 = alpha * alpha;
  const ComplexMatrix lap =
      (grid.d2 - a2 * RealMatrix::Identity(n, n)).cast<Complex>();
  const ComplexMatrix bilap =
      (grid.d4 - 2.0 * a2 * grid.d2 + a2 * a2 * RealMatrix::Identity(n, n))
          .cast<Complex>();
  const ComplexMatrix u_diag =
      profile_diagonal(profile, grid, profile.u, profile.u_plus.value_or(0.0));
  const ComplexMatrix ddu_diag = profile_diagonal(profile, grid, profile.ddu, 0.0);
  // (U - c)(D^2 - a^2) psi - U'' psi - (nu / i a)(D^2 - a^2)^2 psi = 0
  ComplexMatrix a = u_diag * lap - ddu_diag + (kI * nu / alpha) * bilap;
  ComplexMatrix b = lap;
  OSPencil pencil = finish_pencil(std::move(a), std::move(b), alpha, nu,
                                  PencilKind::Direct, grid);
  if (profile.geometry == Geometry::HalfSpace)
    pencil.free_stream = profile.u_plus;
  return pencil;
}

OSPencil assemble_adjoint(const ShearProfile& profile,
                          const SpectralGrid& grid, double alpha, double nu) {
  if (alpha <= 0.0) throw std::invalid_argument("assemble_adjoint: alpha > 0 required");
  if (nu <= 0.0) throw std::invalid_argument("assemble_adjoint: nu > 0 required");
  const int n = grid.n;
  const double a2 = alpha * alpha;
  const ComplexMatrix lap =
      (grid.d2 - a2 * RealMatrix::Identity(n, n)).cast<Complex>();
  const ComplexMatrix bilap =
      (grid.d4 - 2.0 * a2 * grid.d2 + a2 * a2 * RealMatrix::Identity(n, n))
          .cast<Complex>();
  const ComplexMatrix u_diag =
      profile_diagonal(profile, grid, profile.u, profile.u_plus.value_or(0.0));
  const ComplexMatrix du_diag = profile_diagonal(profile, grid, profile.du, 0.0);
  // (U - c)(D^2 - a^2) psi* + 2 U' D psi* - (i nu / a)(D^2 - a^2)^2 psi* = 0
  ComplexMatrix a = u_diag * lap + 2.0 * du_diag * grid.d1.cast<Complex>() -
                    (kI * nu / alpha) * bilap;
  ComplexMatrix b = lap;
  OSPencil pencil = finish_pencil(std::move(a), std::move(b), alpha, nu,
                                  PencilKind::Adjoint, grid);
  if (profile.geometry == Geometry::HalfSpace)
    pencil.free_stream = profile.u_plus;
  return pencil;
}

std::vector<Complex> pencil_eigenvalues(const OSPencil& pencil) {
  Eigen::PartialPivLU<ComplexMatrix> lu(pencil.b);
  const ComplexMatrix m = lu.solve(pencil.a);
  Eigen::ComplexEigenSolver<ComplexMatrix> es(m, false);
  std::vector<Complex> out;
  for (int i = 0; i < m.rows(); ++i) {
    const Complex c = es.eigenvalues()(i);
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) continue;
    if (std::abs(c) > kPhaseSpeedCutoff) continue;
    out.push_back(c);
  }
  std::sort(out.begin(), out.end(),
            [](Complex x, Complex y) { return x.imag() > y.imag(); });
  return out;
}

bool free_stream_artifact(const OSPencil& pencil, Complex c) {
  return pencil.free_stream && std::abs(c - *pencil.free_stream) < 1e-3;
}

std::vector<Mode> physical_modes(const OSPencil& pencil, int top_k) {
  const auto eigenvalues = pencil_eigenvalues(pencil);
  std::vector<Mode> modes;
  for (const Complex c : eigenvalues) {
    if (static_cast<int>(modes.size()) >= top_k) break;
    if (free_stream_artifact(pencil, c)) continue;
    auto mode = shift_invert_mode(pencil, c);
    if (!mode || mode->residual > 1e-6) continue;
    if (std::abs(mode->c - c) > 1e-6 * (1.0 + std::abs(c))) continue;
    modes.push_back(std::move(*mode));
  }
  return modes;
}

std::optional<Mode> shift_invert_mode(const OSPencil& pencil, Complex shift,
                                      const ComplexVector* start) {
  const int n = static_cast<int>(pencil.a.rows());
  ComplexVector x = start ? *start : deterministic_start(n);
  x.normalize();
  Complex c = shift;
  double residual = 1.0;
  // Iterate to stagnation: the pencil is ill conditioned enough that a
  // normalized residual of 1e-13 still leaves ~1e-7 eigenvalue error, which
  // is far too noisy for the root searches built on top of this solve.
  for (int outer = 0; outer < 12; ++outer) {
    Eigen::PartialPivLU<ComplexMatrix> lu(pencil.a - c * pencil.b);
    for (int inner = 0; inner < 3; ++inner) {
      ComplexVector y = lu.solve(pencil.b * x);
      const double norm = y.norm();
      if (!std::isfinite(norm) || norm == 0.0) return std::nullopt;
      x = y / norm;
    }
    const Complex num = x.dot(pencil.a * x);
    const Complex den = x.dot(pencil.b * x);
    if (den == Complex(0.0, 0.0)) return std::nullopt;
    const Complex c_new = num / den;
    const double previous = residual;
    residual = pencil_residual(pencil, c_new, x);
    c = c_new;
    if (residual < 1e-18 || residual > 0.3 * previous) break;
  }
  if (!std::isfinite(residual) || residual > 1e-7) return std::nullopt;
  if (std::abs(c) > kPhaseSpeedCutoff) return std::nullopt;
  Mode mode;
  mode.c = c;
  mode.psi = x;
  mode.residual = residual;
  return mode;
}

std::optional<Mode> leading_eigenvalue(const OSPencil& pencil,
                                       std::optional<Complex> shift) {
  if (shift) {
    auto mode = shift_invert_mode(pencil, *shift);
    if (mode && std::abs(mode->c - *shift) < 0.2 &&
        !free_stream_artifact(pencil, mode->c))
      return mode;
  }
  auto modes = physical_modes(pencil, 1);
  if (modes.empty()) return std::nullopt;
  return modes.front();
}

EigenSolution leading_mode(const OSPencil& direct, const OSPencil& adjoint,
                           const SpectralGrid& grid,
                           std::optional<Complex> shift) {
  auto mode = leading_eigenvalue(direct, shift);
  if (!mode) throw std::runtime_error("leading_mode: no converged physical mode");
  const double alpha = direct.alpha;
  const Complex c = mode->c;

  // the adjoint pencil carries the conjugate spectrum
  auto adj = shift_invert_mode(adjoint, std::conj(c));
  if (!adj || std::abs(adj->c - std::conj(c)) > 1e-6) {
    auto retry = shift_invert_mode(adjoint, c);
    if (retry && std::abs(retry->c - std::conj(c)) <= 1e-6) adj = retry;
  }
  if (!adj || std::abs(adj->c - std::conj(c)) > 1e-6)
    throw std::runtime_error(
        "leading_mode: adjoint eigenvalue does not pair with the direct one "
        "(resolution failure)");

  EigenSolution sol;
  sol.alpha = alpha;
  sol.nu = direct.nu;
  sol.c = c;
  sol.lambda = -kI * alpha * c;
  sol.psi = mode->psi;
  sol.psi_star = adj->psi;
  sol.residual_direct = mode->residual;
  sol.residual_adjoint = adj->residual;

  // normalize zeta = (-psi', i a psi) to unit L2, fix the phase, then scale
  // the adjoint so that <zeta, zeta*> = 1
  auto zeta_of = [&](const ComplexVector& psi) {
    return std::pair<ComplexVector, ComplexVector>{-(grid.d1 * psi).eval(),
                                                   (kI * alpha * psi).eval()};
  };
  auto zeta = zeta_of(sol.psi);
  const double zeta_l2 =
      std::sqrt(std::abs(vector_inner_product(zeta, zeta, grid)));
  if (zeta_l2 == 0.0) throw std::runtime_error("leading_mode: null eigenvector");
  sol.psi /= zeta_l2;
  int peak = 0;
  sol.psi.cwiseAbs().maxCoeff(&peak);
  const Complex phase = sol.psi(peak) / std::abs(sol.psi(peak));
  sol.psi /= phase;

  zeta = zeta_of(sol.psi);
  auto zeta_star = zeta_of(sol.psi_star);
  const Complex pairing = vector_inner_product(zeta, zeta_star, grid);
  if (std::abs(pairing) < 1e-12)
    throw std::runtime_error("leading_mode: degenerate biorthogonal pairing");
  sol.psi_star /= std::conj(pairing);

  zeta_star = zeta_of(sol.psi_star);
  sol.zeta_norm_ok =
      std::abs(vector_inner_product(zeta, zeta_star, grid) - 1.0) <= 1e-10;
  return sol;
}

namespace {

ResolventSolution linear_solve(const ComplexMatrix& a, ComplexVector rhs,
                               const std::array<int, 4>& bc_rows) {
  for (int r : bc_rows) rhs(r) = Complex(0.0, 0.0);
  Eigen::PartialPivLU<ComplexMatrix> lu(a);
  ComplexVector x = lu.solve(rhs);
  x += lu.solve(rhs - a * x);  // one step of iterative refinement
  ResolventSolution out;
  out.psi = std::move(x);
  out.rcond = lu.rcond();
  const double a_norm = inf_norm(a);
  out.residual = (a * out.psi - rhs).norm() /
                 (a_norm * out.psi.norm() + rhs.norm());
  return out;
}

}  // namespace

ResolventSolution solve_second_harmonic(const ShearProfile& profile,
                                        const SpectralGrid& grid, double alpha,
                                        double nu, double omega0,
                                        const ComplexVector& rhs_b0,
                                        bool check_resonance) {
  const int n = grid.n;
  const double c_eff = -omega0 / alpha;
  const double a2 = alpha * alpha;
  double margin = std::numeric_limits<double>::infinity();
  if (check_resonance) {
    margin = resonance_margin(profile, grid, alpha, nu, omega0);
    if (margin < 1e-6)
      throw std::runtime_error(
          "solve_second_harmonic: 2 i omega0 is resonant with the 2 alpha "
          "operator (margin " + std::to_string(margin) + ")");
  }
  const ComplexMatrix lap =
      (grid.d2 - 4.0 * a2 * RealMatrix::Identity(n, n)).cast<Complex>();
  const ComplexMatrix bilap =
      (grid.d4 - 8.0 * a2 * grid.d2 +
       16.0 * a2 * a2 * RealMatrix::Identity(n, n))
          .cast<Complex>();
  ComplexMatrix u_diag =
      profile_diagonal(profile, grid, profile.u, profile.u_plus.value_or(0.0));
  u_diag.diagonal().array() -= c_eff;
  const ComplexMatrix ddu_diag = profile_diagonal(profile, grid, profile.ddu, 0.0);
  // 2 i a [(U - c)(D^2 - 4a^2) - U''] psi22 - nu (D^2 - 4a^2)^2 psi22 = B0
  ComplexMatrix a = 2.0 * kI * alpha * (u_diag * lap - ddu_diag) - nu * bilap;
  const BcRows bc = boundary_conditions(grid);
  for (int k = 0; k < 4; ++k) {
    RealVector row = bc.conditions[k];
    row *= inf_norm(a) / row.cwiseAbs().maxCoeff();
    a.row(bc.rows[k]) = row.cast<Complex>();
  }
  auto out = linear_solve(a, rhs_b0, bc.rows);
  out.resonance = margin;
  return out;
}

MeanFlowSolution solve_mean_flow(const SpectralGrid& grid, double nu,
                                 const RealVector& rhs) {
  const int n = grid.n;
  ComplexMatrix a = (-nu * grid.d4).cast<Complex>();
  BcRows bc = boundary_conditions(grid);
  if (grid.geometry == Geometry::HalfSpace) {
    // decay of psi' and psi'' at the far boundary, clamped wall
    bc.conditions[0] = grid.d1.row(0);
    bc.conditions[1] = grid.d2.row(0);
  }
  const double scale = inf_norm(a);
  for (int k = 0; k < 4; ++k) {
    RealVector row = bc.conditions[k];
    row *= scale / row.cwiseAbs().maxCoeff();
    a.row(bc.rows[k]) = row.cast<Complex>();
  }
  auto out = linear_solve(a, rhs.cast<Complex>(), bc.rows);
  MeanFlowSolution mf;
  mf.psi = out.psi.real();
  mf.residual = out.residual;
  return mf;
}

double resonance_margin(const ShearProfile& profile, const SpectralGrid& grid,
                        double alpha, double nu, double omega0) {
  const OSPencil pencil = assemble_direct(profile, grid, 2.0 * alpha, nu);
  const double c_eff = -omega0 / alpha;
  double margin = std::numeric_limits<double>::infinity();
  for (const Complex c2 : pencil_eigenvalues(pencil))
    margin = std::min(margin, 2.0 * alpha * std::abs(c2 - c_eff));
  return margin;
}

}  // namespace stab
