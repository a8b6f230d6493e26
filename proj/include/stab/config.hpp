#pragma once

#include <string>

namespace stab {

/// Flat key=value run configuration with one section per subcommand.
/// CLI flags override file values; serialization round-trips exactly.
struct RunConfig {
  std::string subcommand = "eigen";
  std::string profile = "poiseuille";  // poiseuille|quartic|sextic|exponential
  int p = 0;                           // 0: implied by the profile selector
  int n_points = 0;                    // 0: geometry default (128 / 192)
  double map_scale = 10.0;
  double re = 0.0;
  double alpha = 0.0;
  double re_min = 0.0;
  double re_max = 0.0;
  int steps = 0;
  std::string branch = "upper";
  double epsilon = 0.0;
  int nx = 64;
  int workers = 1;
  unsigned long seed = 0;
  std::string output = "-";
  // sweep grid in alpha (the Re grid reuses re_min/re_max/steps)
  double alpha_min = 0.0;
  double alpha_max = 0.0;
  int alpha_steps = 0;
  std::string only;  // validate: run criteria whose id contains this

  bool operator==(const RunConfig&) const = default;
};

std::string to_config_text(const RunConfig& config);
RunConfig from_config_text(const std::string& text);

/// Full round-trip formatting for CSV fields (17 significant digits).
std::string format_full(double value);

}  // namespace stab
