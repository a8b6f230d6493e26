#pragma once

#include <functional>
#include <optional>
#include <string>

namespace stab {

/// Flow domain: the strip y in [-1,1] or the half space y in [0,inf).
enum class Geometry { Strip, HalfSpace };

/// A shear flow U(y) = (u(y), 0) with closed-form derivatives.
///
/// The stability operator needs u'' pointwise with spectral accuracy, so
/// profiles carry analytic derivatives instead of numerically differentiated
/// ones.
struct ShearProfile {
  std::string name;
  Geometry geometry = Geometry::Strip;
  std::function<double(double)> u;
  std::function<double(double)> du;
  std::function<double(double)> ddu;
  std::optional<double> u_plus;  // limit at infinity, half space only
  double wall_slope = 0.0;       // u'(0) half space, u'(-1) strip
  double wall_curvature = 0.0;   // u''(0) half space, u''(-1) strip
  int p = 0;                     // exponent for the 1 - y^{2p} family, else 0
  bool validated = true;         // false for p outside the studied range {1,2,3}
};

struct BoundaryParams {
  double wall_slope = 0.0;
  double wall_curvature = 0.0;
  std::optional<double> u_plus;
};

/// Builds one of the two builtin families:
///   "poiseuille_family": u = 1 - y^{2p} on the strip (p required)
///   "exponential":       u = 1 - e^{-y} on the half space
/// Throws std::invalid_argument for unknown names or p < 1.
ShearProfile builtin_profile(const std::string& name, int p = 0);

/// Maps the CLI selector {poiseuille|quartic|sextic|exponential}.
ShearProfile profile_from_flag(const std::string& flag);

BoundaryParams boundary_params(const ShearProfile& profile);

}  // namespace stab
