#pragma once

#include <string>
#include <vector>

#include "stab/profiles.hpp"
#include "stab/spectral.hpp"

namespace stab {

struct SweepRequest {
  ShearProfile profile;
  int n_points = 0;  // 0: geometry default
  double map_scale = 10.0;
  std::vector<double> res;
  std::vector<double> alphas;
  int workers = 1;
};

/// Evaluates the leading growth rate on the (Re, alpha) grid. Every cell is
/// solved cold and independently, so the CSV is byte-identical for any worker
/// count; rows come out in grid order (Re outer, alpha inner). Failed cells
/// carry status "failed".
std::string sweep_csv(const SweepRequest& request);

}  // namespace stab
