#include "stab/profiles.hpp"

#include <cmath>
#include <stdexcept>

namespace stab {

ShearProfile builtin_profile(const std::string& name, int p) {
  if (name == "poiseuille_family") {
    if (p < 1) throw std::invalid_argument("poiseuille_family requires p >= 1");
    ShearProfile prof;
    prof.name = "poiseuille_p" + std::to_string(p);
    prof.geometry = Geometry::Strip;
    const double q = 2.0 * p;
    prof.u = [q](double y) { return 1.0 - std::pow(y, q); };
    prof.du = [q](double y) { return -q * std::pow(y, q - 1.0); };
    prof.ddu = [q](double y) { return -q * (q - 1.0) * std::pow(y, q - 2.0); };
    prof.wall_slope = prof.du(-1.0);
    prof.wall_curvature = prof.ddu(-1.0);
    prof.p = p;
    prof.validated = (p <= 3);
    return prof;
  }
  if (name == "exponential") {
    ShearProfile prof;
    prof.name = "exponential";
    prof.geometry = Geometry::HalfSpace;
    prof.u = [](double y) { return 1.0 - std::exp(-y); };
    prof.du = [](double y) { return std::exp(-y); };
    prof.ddu = [](double y) { return -std::exp(-y); };
    prof.u_plus = 1.0;
    prof.wall_slope = 1.0;
    prof.wall_curvature = -1.0;
    return prof;
  }
  throw std::invalid_argument("unknown profile name: " + name);
}

ShearProfile profile_from_flag(const std::string& flag) {
  if (flag == "poiseuille") return builtin_profile("poiseuille_family", 1);
  if (flag == "quartic") return builtin_profile("poiseuille_family", 2);
  if (flag == "sextic") return builtin_profile("poiseuille_family", 3);
  if (flag == "exponential") return builtin_profile("exponential");
  throw std::invalid_argument("unknown profile selector: " + flag);
}

BoundaryParams boundary_params(const ShearProfile& profile) {
  return {profile.wall_slope, profile.wall_curvature, profile.u_plus};
}

}  // namespace stab
