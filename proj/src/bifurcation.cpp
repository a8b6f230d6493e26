#include "stab/bifurcation.hpp"

#include <algorithm>
#include <limits>
#include <cmath>
#include <stdexcept>

namespace stab {
namespace {

const Complex kI(0.0, 1.0);
constexpr double kPi = 3.14159265358979323846;
constexpr double kGrowthTol = 1e-9;

double growth_of(double alpha, const Mode& mode) {
  return alpha * mode.c.imag();
}

// False-position (Illinois) root finder; fa, fb must have opposite signs.
template <typename F>
double illinois(F&& f, double a, double b, double fa, double fb, double tol_f,
                int max_iter, double tol_x = 0.0) {
  if (fa == 0.0) return a;
  if (fb == 0.0) return b;
  if (fa * fb > 0.0)
    throw std::runtime_error("illinois: bracket does not straddle a root");
  double x = a, fx = fa;
  for (int it = 0; it < max_iter; ++it) {
    x = b - fb * (b - a) / (fb - fa);
    if (!(x > std::min(a, b) && x < std::max(a, b))) x = 0.5 * (a + b);
    fx = f(x);
    if (std::abs(fx) <= tol_f) return x;
    if (tol_x > 0.0 && std::abs(b - a) <= tol_x) return x;
    if (fx * fb < 0.0) {
      a = b;
      fa = fb;
    } else {
      fa *= 0.5;  // Illinois damping keeps the stalled endpoint moving
    }
    b = x;
    fb = fx;
  }
  throw std::runtime_error("illinois: no convergence after max iterations");
}

struct ScanPoint {
  double alpha;
  double growth;
};

std::vector<double> scan_alphas(const ShearProfile& profile, double nu) {
  std::vector<double> alphas;
  const int count = 30;
  if (profile.geometry == Geometry::Strip) {
    for (int i = 0; i < count; ++i)
      alphas.push_back(0.15 + (2.4 - 0.15) * i / (count - 1));
  } else {
    const auto [am, ap] = asymptotic_alphas(profile, nu);
    const double lo = 0.3 * am, hi = 3.5 * ap;
    for (int i = 0; i < count; ++i)
      alphas.push_back(lo * std::pow(hi / lo, double(i) / (count - 1)));
  }
  return alphas;
}

std::vector<ScanPoint> scan_band(const ShearProfile& profile,
                                 const SpectralGrid& grid, double nu) {
  std::vector<double> alphas = scan_alphas(profile, nu);
  std::vector<ScanPoint> pts;
  // Just above Re_c the unstable band is narrower than the coarse scan
  // spacing; zoom around the growth maximum until the band resolves.
  for (int round = 0; round < 4; ++round) {
    pts.clear();
    for (double alpha : alphas) {
      try {
        pts.push_back(
            {alpha, leading_growth(profile, grid, alpha, nu).growth});
      } catch (const std::runtime_error&) {
        // unconverged scan point: skip, the band refinement never needs it
      }
    }
    if (pts.size() < 4) throw std::runtime_error("scan_band: scan failed");
    bool unstable = false;
    for (const ScanPoint& pt : pts) unstable = unstable || pt.growth > 0.0;
    if (unstable) break;
    // No positive point yet. The growth curve approaches zero from below at
    // small alpha, so the global argmax can sit on the scan endpoint while
    // the (still negative) band bump hides between grid points; zoom on the
    // best interior local maximum instead.
    std::ptrdiff_t peak = -1;
    for (std::size_t i = 1; i + 1 < pts.size(); ++i) {
      if (pts[i].growth > pts[i - 1].growth &&
          pts[i].growth >= pts[i + 1].growth &&
          (peak < 0 || pts[i].growth > pts[peak].growth)) {
        peak = static_cast<std::ptrdiff_t>(i);
      }
    }
    if (peak < 0) break;  // monotone scan: nothing to zoom on
    const double lo = pts[peak - 1].alpha, hi = pts[peak + 1].alpha;
    alphas.clear();
    const int count = 15;
    for (int i = 0; i < count; ++i)
      alphas.push_back(lo + (hi - lo) * i / (count - 1));
  }
  return pts;
}

}  // namespace

SpectralGrid default_grid(const ShearProfile& profile, int n_override,
                          double map_scale) {
  if (profile.geometry == Geometry::Strip) {
    // the sextic's thresholds sit beyond Re ~ 1.3e5 where n = 128 can no
    // longer pair direct and adjoint modes on the upper branch
    const int fallback = profile.p >= 3 ? 192 : 128;
    return make_grid(Geometry::Strip, n_override > 0 ? n_override : fallback);
  }
  return make_grid(Geometry::HalfSpace, n_override > 0 ? n_override : 192,
                   map_scale);
}

std::pair<double, double> default_re_bracket(const ShearProfile& profile) {
  if (profile.geometry == Geometry::HalfSpace) return {45000.0, 70000.0};
  switch (profile.p) {
    case 1:
      return {4500.0, 7000.0};
    case 2:
      return {40000.0, 65000.0};
    default:
      return {100000.0, 160000.0};
  }
}

GrowthEval leading_growth(const ShearProfile& profile,
                          const SpectralGrid& grid, double alpha, double nu,
                          ModeShift* tracker) {
  const OSPencil pencil = assemble_direct(profile, grid, alpha, nu);
  std::optional<Complex> shift = tracker ? *tracker : std::nullopt;
  auto mode = leading_eigenvalue(pencil, shift);
  if (!mode)
    throw std::runtime_error("leading_growth: no converged physical mode");
  if (tracker) *tracker = mode->c;
  return {growth_of(alpha, *mode), mode->c};
}

NeutralPoint neutral_alpha(const ShearProfile& profile,
                           const SpectralGrid& grid, double nu, Branch branch,
                           std::optional<std::pair<double, double>> hint) {
  ModeShift tracker;
  auto f = [&](double alpha) {
    return leading_growth(profile, grid, alpha, nu, &tracker).growth;
  };

  double a = 0.0, b = 0.0, fa = 0.0, fb = 0.0;
  bool bracketed = false;
  // Evaluate the in-band endpoint first (lower branch: b, upper branch: a)
  // so the mode tracker warms up on the unstable wall mode; starting on the
  // stable side can lock the tracker onto a damped center mode and lose the
  // band entirely.
  auto eval_pair = [&](double& fa_out, double& fb_out) {
    if (branch == Branch::Lower) {
      fb_out = f(b);
      fa_out = f(a);
    } else {
      fa_out = f(a);
      fb_out = f(b);
    }
  };
  if (hint) {
    a = hint->first;
    b = hint->second;
    eval_pair(fa, fb);
    // expand the hint a few times before giving up on it
    for (int k = 0; k < 6 && fa * fb > 0.0; ++k) {
      if (branch == Branch::Lower ? fa > 0.0 : fb > 0.0) {
        // still inside the band: push the outer end outwards
        if (branch == Branch::Lower) {
          a *= 0.8;
          fa = f(a);
        } else {
          b *= 1.25;
          fb = f(b);
        }
      } else {
        if (branch == Branch::Lower) {
          b *= 1.25;
          fb = f(b);
        } else {
          a *= 0.8;
          fa = f(a);
        }
      }
    }
    bracketed = fa * fb < 0.0;
    if (bracketed && branch == Branch::Lower && !(fa < 0.0)) bracketed = false;
    if (bracketed && branch == Branch::Upper && !(fb < 0.0)) bracketed = false;
  }
  if (!bracketed) {
    tracker.reset();
    const auto pts = scan_band(profile, grid, nu);
    int lo = -1, hi = -1;
    for (size_t i = 0; i + 1 < pts.size(); ++i) {
      if (pts[i].growth <= 0.0 && pts[i + 1].growth > 0.0 && lo < 0)
        lo = static_cast<int>(i);
      if (pts[i].growth > 0.0 && pts[i + 1].growth <= 0.0)
        hi = static_cast<int>(i);
    }
    if (lo < 0 || hi < 0)
      throw std::runtime_error("neutral_alpha: no unstable band at Re = " +
                               std::to_string(1.0 / nu));
    const int k = (branch == Branch::Lower) ? lo : hi;
    a = pts[k].alpha;
    b = pts[k + 1].alpha;
    tracker.reset();
    eval_pair(fa, fb);
    // warm tracking can reveal that the wall mode is still unstable at the
    // nominally outside endpoint; push it outwards until it stabilizes
    for (int k2 = 0; k2 < 6 && fa * fb > 0.0; ++k2) {
      if (branch == Branch::Lower) {
        a *= 0.9;
        fa = f(a);
      } else {
        b *= 1.1;
        fb = f(b);
      }
    }
  }

  const double alpha = illinois(f, a, b, fa, fb, kGrowthTol, 60);
  const GrowthEval at_root = leading_growth(profile, grid, alpha, nu, &tracker);
  NeutralPoint point;
  point.nu = nu;
  point.re = 1.0 / nu;
  point.branch = branch;
  point.alpha = alpha;
  point.c_phase = at_root.c.real();
  point.omega0 = -alpha * point.c_phase;
  return point;
}

namespace {

struct BandMax {
  double growth;
  double alpha;
  Complex c;
};

// Golden-section maximum of the growth rate over [lo, hi].
BandMax max_growth_over_alpha(const ShearProfile& profile,
                              const SpectralGrid& grid, double nu, double lo,
                              double hi) {
  ModeShift tracker;
  Complex c_last;
  auto g = [&](double alpha) {
    const auto ev = leading_growth(profile, grid, alpha, nu, &tracker);
    c_last = ev.c;
    return ev.growth;
  };
  const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
  double f1 = g(x1), f2 = g(x2);
  while (b - a > 1e-5 * b) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + gr * (b - a);
      f2 = g(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - gr * (b - a);
      f1 = g(x1);
    }
  }
  const double alpha = 0.5 * (a + b);
  const double growth = g(alpha);
  return {growth, alpha, c_last};
}

}  // namespace

CriticalPoint critical_reynolds(const ShearProfile& profile,
                                const SpectralGrid& grid,
                                std::optional<std::pair<double, double>>
                                    re_bracket) {
  auto [re_lo, re_hi] = re_bracket.value_or(default_re_bracket(profile));

  // locate the band once at the top of the bracket, then continue the argmax
  const auto pts = scan_band(profile, grid, 1.0 / re_hi);
  double alpha_center =
      std::max_element(pts.begin(), pts.end(),
                       [](const ScanPoint& x, const ScanPoint& y) {
                         return x.growth < y.growth;
                       })
          ->alpha;

  BandMax last{};
  auto f = [&](double re) {
    last = max_growth_over_alpha(profile, grid, 1.0 / re, 0.75 * alpha_center,
                                 1.3 * alpha_center);
    // only recenter while the band is visible: the argmax of an all-stable
    // window sits on its edge and would drag the window off the band
    if (last.growth > 0.0) alpha_center = last.alpha;
    return last.growth;
  };

  double f_hi = f(re_hi);
  double f_lo = f(re_lo);
  for (int k = 0; k < 6 && f_hi <= 0.0; ++k) f_hi = f(re_hi *= 1.4);
  for (int k = 0; k < 6 && f_lo >= 0.0; ++k) f_lo = f(re_lo /= 1.4);
  if (f_lo >= 0.0 || f_hi <= 0.0)
    throw std::runtime_error("critical_reynolds: search bracket exhausted");

  const double re_c =
      illinois(f, re_lo, re_hi, f_lo, f_hi, 1e-8, 80, 1e-6 * re_hi);
  f(re_c);
  return {re_c, last.alpha, last.c};
}

NeutralCurve trace_neutral_curves(const ShearProfile& profile,
                                  const SpectralGrid& grid, double re_min,
                                  double re_max, int steps,
                                  std::optional<CriticalPoint> critical) {
  if (steps < 1)
    throw std::invalid_argument("trace_neutral_curves: steps must be >= 1");
  if (re_max < re_min)
    throw std::invalid_argument("trace_neutral_curves: re_max < re_min");
  NeutralCurve curve;
  curve.profile = profile.name;
  std::optional<std::pair<double, double>> hint_lo, hint_hi;
  for (int i = 0; i < steps; ++i) {
    const double re =
        steps == 1 ? re_min
                   : re_min * std::pow(re_max / re_min, double(i) / (steps - 1));
    NeutralPoint lower, upper;
    try {
      lower = neutral_alpha(profile, grid, 1.0 / re, Branch::Lower, hint_lo);
      upper = neutral_alpha(profile, grid, 1.0 / re, Branch::Upper, hint_hi);
    } catch (const std::runtime_error& err) {
      if (!critical) {
        // report where the band closed
        CriticalPoint cp = critical_reynolds(profile, grid);
        throw std::runtime_error(std::string(err.what()) +
                                 " (critical Re = " + std::to_string(cp.re_c) +
                                 ")");
      }
      throw std::runtime_error(std::string(err.what()) + " at Re = " +
                               std::to_string(re));
    }
    hint_lo = {0.93 * lower.alpha, 1.07 * lower.alpha};
    hint_hi = {0.93 * upper.alpha, 1.07 * upper.alpha};
    curve.samples.push_back(
        {re, lower.alpha, lower.c_phase, upper.alpha, upper.c_phase});
  }
  if (critical) {
    curve.re_c = critical->re_c;
    curve.alpha_c = critical->alpha_c;
  } else {
    curve.re_c = std::numeric_limits<double>::quiet_NaN();
    curve.alpha_c = std::numeric_limits<double>::quiet_NaN();
  }
  return curve;
}

std::pair<double, double> asymptotic_alphas(const ShearProfile& profile,
                                            double nu) {
  if (profile.geometry != Geometry::HalfSpace)
    throw std::invalid_argument(
        "asymptotic_alphas: formulas are stated for half-space profiles only");
  const double slope = profile.wall_slope;
  const double curv = profile.wall_curvature;
  const double u_plus = profile.u_plus.value();
  const double alpha_minus = 1.005 * std::pow(nu, 0.25) *
                             std::pow(slope, 1.25) / std::pow(u_plus, 1.5);
  const double alpha_plus =
      std::pow(std::pow(slope, 11.0) / (2.0 * kPi * kPi * curv * curv),
               1.0 / 6.0) *
      std::pow(nu, 1.0 / 6.0);
  return {alpha_minus, alpha_plus};
}

LandauResult landau_coefficient(const ShearProfile& profile,
                                const NeutralPoint& point,
                                const SpectralGrid& grid,
                                const LandauOptions& options) {
  const OSPencil direct = assemble_direct(profile, grid, point.alpha, point.nu);
  const OSPencil adjoint =
      assemble_adjoint(profile, grid, point.alpha, point.nu);
  EigenSolution eigen =
      leading_mode(direct, adjoint, grid, Complex(point.c_phase, 0.0));
  return landau_from_eigen(profile, point, grid, eigen, options);
}

LandauResult landau_from_eigen(const ShearProfile& profile,
                               const NeutralPoint& point,
                               const SpectralGrid& grid,
                               const EigenSolution& eigen,
                               const LandauOptions& options) {
  const double alpha = point.alpha;
  const double nu = point.nu;
  LandauResult result;
  result.point = point;
  result.eigen = eigen;

  const ComplexVector& psi = result.eigen.psi;
  const ComplexVector dpsi = grid.d1 * psi;
  const ComplexVector d2psi = grid.d2 * psi;
  const ComplexVector d3psi = grid.d3 * psi;

  // curl of B(zeta, zeta): e^{2iax} B0(y)
  result.b0 =
      kI * alpha *
      (dpsi.array() * d2psi.array() - psi.array() * d3psi.array()).matrix();

  // curl of B(zeta, conj zeta), doubled for the mean-flow equation
  result.mean_rhs =
      -2.0 * alpha *
      (dpsi.array().conjugate() * d2psi.array() +
       psi.array().conjugate() * d3psi.array())
          .imag()
          .matrix();

  auto harmonic = solve_second_harmonic(profile, grid, alpha, nu, point.omega0,
                                        result.b0, options.check_resonance);
  result.psi22 = std::move(harmonic.psi);
  result.residual_22 = harmonic.residual;
  result.resonance_margin = harmonic.resonance;

  auto mean = solve_mean_flow(grid, nu, result.mean_rhs);
  result.psi20 = std::move(mean.psi);
  result.residual_20 = mean.residual;

  const ComplexVector dpsi0 = (grid.d1 * result.psi20).cast<Complex>();
  const ComplexVector d2psi0 = (grid.d2 * result.psi20).cast<Complex>();
  const ComplexVector dpsi2 = grid.d1 * result.psi22;
  const ComplexVector d2psi2 = grid.d2 * result.psi22;

  const double a2 = alpha * alpha;
  std::pair<ComplexVector, ComplexVector> b1{
      (-0.5 * kI * alpha *
       (dpsi.array() * dpsi0.array() - psi.array() * d2psi0.array()))
          .matrix(),
      (-0.5 * a2 * (psi.array() * dpsi0.array())).matrix()};
  std::pair<ComplexVector, ComplexVector> b2{
      (-0.5 * kI * alpha *
       (dpsi.array().conjugate() * dpsi2.array() +
        psi.array().conjugate() * d2psi2.array() -
        2.0 * result.psi22.array() * d2psi.array().conjugate()))
          .matrix(),
      (-1.5 * a2 *
       (2.0 * dpsi.array().conjugate() * result.psi22.array() +
        psi.array().conjugate() * dpsi2.array()))
          .matrix()};

  const ComplexVector dpsi_star = grid.d1 * result.eigen.psi_star;
  std::pair<ComplexVector, ComplexVector> zeta_star{
      (-dpsi_star).eval(), (kI * alpha * result.eigen.psi_star).eval()};

  // The mean-flow channel enters at half the weight of the second-harmonic
  // channel: this is the weighting that reproduces the published sign-change
  // thresholds (Re_s) across the whole profile family.
  result.b1_proj = -vector_inner_product(b1, zeta_star, grid);
  result.b2_proj = -2.0 * vector_inner_product(b2, zeta_star, grid);
  result.c_coeff = result.b1_proj + result.b2_proj;

  const ComplexVector lap_psi = d2psi - a2 * psi;
  std::pair<ComplexVector, ComplexVector> delta_zeta{
      (-(grid.d1 * lap_psi)).eval(), (kI * alpha * lap_psi).eval()};
  result.delta_proj = vector_inner_product(delta_zeta, zeta_star, grid);

  const double re_c = result.c_coeff.real();
  const double scale = std::abs(re_c) + std::abs(result.c_coeff.imag());
  if (std::abs(re_c) < 1e-8 * scale)
    result.verdict = Verdict::Marginal;
  else
    result.verdict = re_c > 0.0 ? Verdict::Supercritical : Verdict::Subcritical;
  return result;
}

double find_re_s(const ShearProfile& profile, const SpectralGrid& grid,
                 std::pair<double, double> bracket) {
  std::optional<std::pair<double, double>> hint;
  auto re_c_of = [&](double re) {
    NeutralPoint pt =
        neutral_alpha(profile, grid, 1.0 / re, Branch::Lower, hint);
    hint = {0.93 * pt.alpha, 1.07 * pt.alpha};
    return landau_coefficient(profile, pt, grid).c_coeff;
  };

  // Re(C) is sampled log-spaced first: it can be noisy near Re_c. Sampling
  // runs from the top of the bracket down so the branch hint is warm by the
  // time the band gets narrow near Re_c.
  const int presamples = 8;
  std::vector<double> res(presamples);
  std::vector<Complex> vals(presamples);
  for (int i = presamples - 1; i >= 0; --i) {
    const double re = bracket.first * std::pow(bracket.second / bracket.first,
                                               double(i) / (presamples - 1));
    res[i] = re;
    vals[i] = re_c_of(re);
  }
  int k = -1;
  for (int i = 0; i + 1 < presamples; ++i)
    if (vals[i].real() < 0.0 && vals[i + 1].real() > 0.0) {
      k = i;
      break;
    }
  if (k < 0)
    throw std::runtime_error("find_re_s: no sign change of Re(C) in bracket");

  const double im_scale =
      0.5 * (std::abs(vals[k].imag()) + std::abs(vals[k + 1].imag()));
  auto f = [&](double re) { return re_c_of(re).real(); };
  return illinois(f, res[k], res[k + 1], vals[k].real(), vals[k + 1].real(),
                  1e-8 * std::max(im_scale, 1e-6), 40);
}

std::optional<double> find_re_d(const ShearProfile& profile,
                                const SpectralGrid& grid,
                                std::pair<double, double> bracket) {
  std::optional<std::pair<double, double>> hint_lo, hint_hi;
  double alpha_plus_scale = 1.0;
  auto h = [&](double re) {
    NeutralPoint lo =
        neutral_alpha(profile, grid, 1.0 / re, Branch::Lower, hint_lo);
    NeutralPoint hi =
        neutral_alpha(profile, grid, 1.0 / re, Branch::Upper, hint_hi);
    hint_lo = {0.93 * lo.alpha, 1.07 * lo.alpha};
    hint_hi = {0.93 * hi.alpha, 1.07 * hi.alpha};
    alpha_plus_scale = hi.alpha;
    return 2.0 * lo.alpha - hi.alpha;
  };
  const double ha = h(bracket.first);
  const double hb = h(bracket.second);
  if (ha * hb > 0.0) return std::nullopt;
  return illinois(h, bracket.first, bracket.second, ha, hb,
                  1e-7 * alpha_plus_scale, 60);
}

namespace {

Complex landau_rhs(Complex lambda, Complex c_coeff, Complex a) {
  return lambda * a - c_coeff * a * std::norm(a);
}

}  // namespace

AmplitudeTrajectory amplitude_ode(Complex lambda, Complex c_coeff, Complex a0,
                                  double t_end, double dt) {
  if (dt <= 0.0) throw std::invalid_argument("amplitude_ode: dt must be > 0");
  // Cash-Karp embedded 4(5) pair
  static const double b5[6] = {37.0 / 378, 0, 250.0 / 621, 125.0 / 594, 0,
                               512.0 / 1771};
  static const double b4[6] = {2825.0 / 27648,  0,           18575.0 / 48384,
                               13525.0 / 55296, 277.0 / 14336, 0.25};
  static const double a21 = 0.2;
  static const double a31 = 3.0 / 40, a32 = 9.0 / 40;
  static const double a41 = 0.3, a42 = -0.9, a43 = 1.2;
  static const double a51 = -11.0 / 54, a52 = 2.5, a53 = -70.0 / 27,
                      a54 = 35.0 / 27;
  static const double a61 = 1631.0 / 55296, a62 = 175.0 / 512,
                      a63 = 575.0 / 13824, a64 = 44275.0 / 110592,
                      a65 = 253.0 / 4096;

  AmplitudeTrajectory traj;
  traj.t.push_back(0.0);
  traj.amplitude.push_back(std::abs(a0));

  const double blow_scale =
      1e8 * std::max({1.0, std::abs(a0),
                      c_coeff.real() != 0.0
                          ? std::sqrt(std::abs(lambda.real() / c_coeff.real()))
                          : 1.0});
  Complex a = a0;
  double t = 0.0;
  double h = dt;
  double next_sample = dt;
  const double tol = 1e-10;
  while (t < t_end) {
    h = std::min({h, t_end - t, next_sample - t});
    const Complex k1 = landau_rhs(lambda, c_coeff, a);
    const Complex k2 = landau_rhs(lambda, c_coeff, a + h * a21 * k1);
    const Complex k3 =
        landau_rhs(lambda, c_coeff, a + h * (a31 * k1 + a32 * k2));
    const Complex k4 =
        landau_rhs(lambda, c_coeff, a + h * (a41 * k1 + a42 * k2 + a43 * k3));
    const Complex k5 = landau_rhs(
        lambda, c_coeff, a + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
    const Complex k6 = landau_rhs(
        lambda, c_coeff,
        a + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
    const Complex a5 =
        a + h * (b5[0] * k1 + b5[2] * k3 + b5[3] * k4 + b5[5] * k6);
    const Complex a4 = a + h * (b4[0] * k1 + b4[2] * k3 + b4[3] * k4 +
                                b4[4] * k5 + b4[5] * k6);
    const double err = std::abs(a5 - a4);
    const double scale = tol * (1.0 + std::abs(a));
    if (err <= scale || h <= 1e-13 * std::max(dt, 1.0)) {
      t += h;
      a = a5;
      if (t >= next_sample - 1e-12 * std::max(dt, 1.0)) {
        traj.t.push_back(t);
        traj.amplitude.push_back(std::abs(a));
        next_sample += dt;
      }
      if (!std::isfinite(std::abs(a)) || std::abs(a) > blow_scale) {
        traj.blew_up = true;
        break;
      }
    }
    const double grow =
        err > 0.0 ? 0.9 * std::pow(scale / err, 0.2) : 5.0;
    h *= std::clamp(grow, 0.1, 5.0);
    if (h <= 1e-13 * std::max(dt, 1.0)) {
      traj.blew_up = true;  // step-size collapse
      break;
    }
  }
  return traj;
}

WaveField reconstruct_wave(const ShearProfile& profile,
                           const SpectralGrid& grid,
                           const EigenSolution& eigen,
                           const ComplexVector& psi22, const RealVector& psi20,
                           double epsilon, int nx) {
  if (nx < 1) throw std::invalid_argument("reconstruct_wave: nx must be >= 1");
  const double alpha = eigen.alpha;
  WaveField field;
  field.large_epsilon = epsilon > 0.1;
  field.x.resize(nx);
  const double period = 2.0 * kPi / alpha;
  for (int i = 0; i < nx; ++i) field.x(i) = period * i / nx;
  field.y = grid.nodes;
  field.u.resize(nx, grid.n);
  field.v.resize(nx, grid.n);

  const ComplexVector dpsi = grid.d1 * eigen.psi;
  const ComplexVector dpsi2 = grid.d1 * psi22;
  const RealVector dpsi0 = grid.d1 * psi20;
  RealVector base(grid.n);
  for (int j = 0; j < grid.n; ++j)
    base(j) = std::isinf(grid.nodes(j)) ? profile.u_plus.value_or(0.0)
                                        : profile.u(grid.nodes(j));

  for (int i = 0; i < nx; ++i) {
    const Complex e1 = std::exp(kI * alpha * field.x(i));
    const Complex e2 = e1 * e1;
    for (int j = 0; j < grid.n; ++j) {
      field.u(i, j) = base(j) + epsilon * 2.0 * std::real(e1 * (-dpsi(j))) +
                      epsilon * epsilon *
                          (2.0 * std::real(e2 * (-dpsi2(j))) - dpsi0(j));
      field.v(i, j) =
          epsilon * 2.0 * std::real(e1 * (kI * alpha * eigen.psi(j))) +
          epsilon * epsilon *
              2.0 * std::real(e2 * (2.0 * kI * alpha * psi22(j)));
    }
  }
  return field;
}

}  // namespace stab
