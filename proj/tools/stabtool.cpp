// Command-line front end for the shear-flow stability library: eigenvalue
// solves, neutral-curve tracing, Landau-coefficient branches, threshold
// searches, traveling-wave reconstruction, parameter sweeps, and the built-in
// validation suite.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "stab/bifurcation.hpp"
#include "stab/config.hpp"
#include "stab/orr_sommerfeld.hpp"
#include "stab/profiles.hpp"
#include "stab/sweep.hpp"
#include "stab/validation.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitNumerical = 2;

struct Flags {
  CLI::Option* profile = nullptr;
  CLI::Option* p = nullptr;
  CLI::Option* n_points = nullptr;
  CLI::Option* map_scale = nullptr;
  CLI::Option* re = nullptr;
  CLI::Option* alpha = nullptr;
  CLI::Option* re_min = nullptr;
  CLI::Option* re_max = nullptr;
  CLI::Option* steps = nullptr;
  CLI::Option* branch = nullptr;
  CLI::Option* epsilon = nullptr;
  CLI::Option* nx = nullptr;
  CLI::Option* workers = nullptr;
  CLI::Option* seed = nullptr;
  CLI::Option* output = nullptr;
  CLI::Option* alpha_min = nullptr;
  CLI::Option* alpha_max = nullptr;
  CLI::Option* alpha_steps = nullptr;
  CLI::Option* only = nullptr;
  CLI::Option* config = nullptr;
  std::string config_path;
};

Flags add_common(CLI::App* sub, stab::RunConfig& cli, Flags& f) {
  f.profile = sub->add_option("--profile", cli.profile,
                              "poiseuille|quartic|sextic|exponential");
  f.p = sub->add_option("--p", cli.p, "exponent of the 1 - y^(2p) family");
  f.n_points = sub->add_option("--n-points", cli.n_points,
                               "collocation points (0: geometry default)");
  f.map_scale = sub->add_option("--map-scale", cli.map_scale,
                                "half-space computational box height Y");
  f.re = sub->add_option("--re", cli.re, "Reynolds number");
  f.alpha = sub->add_option("--alpha", cli.alpha, "streamwise wave number");
  f.re_min = sub->add_option("--re-min", cli.re_min, "Re range start");
  f.re_max = sub->add_option("--re-max", cli.re_max, "Re range end");
  f.steps = sub->add_option("--steps", cli.steps, "samples along Re");
  f.branch = sub->add_option("--branch", cli.branch, "lower|upper");
  f.epsilon = sub->add_option("--epsilon", cli.epsilon, "wave amplitude");
  f.nx = sub->add_option("--nx", cli.nx, "streamwise samples per period");
  f.workers = sub->add_option("--workers", cli.workers, "worker threads");
  f.seed = sub->add_option("--seed", cli.seed, "property-sampling seed");
  f.output = sub->add_option("--output", cli.output,
                             "output path, or - for stdout");
  f.alpha_min = sub->add_option("--alpha-min", cli.alpha_min,
                                "alpha grid start (sweep)");
  f.alpha_max = sub->add_option("--alpha-max", cli.alpha_max,
                                "alpha grid end (sweep)");
  f.alpha_steps = sub->add_option("--alpha-steps", cli.alpha_steps,
                                  "alpha grid samples (sweep)");
  f.only = sub->add_option("--only", cli.only,
                           "run criteria whose id contains this (validate)");
  f.config = sub->add_option("--config", f.config_path,
                             "key=value config file (flags override)");
  return f;
}

stab::RunConfig merge(const Flags& f, const stab::RunConfig& cli,
                      const std::string& subcommand) {
  stab::RunConfig cfg;
  if (f.config->count() > 0) {
    std::ifstream in(f.config_path);
    if (!in) throw CLI::ValidationError("--config: cannot read " +
                                        f.config_path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    cfg = stab::from_config_text(buffer.str());
  }
  cfg.subcommand = subcommand;
  if (f.profile->count()) cfg.profile = cli.profile;
  if (f.p->count()) cfg.p = cli.p;
  if (f.n_points->count()) cfg.n_points = cli.n_points;
  if (f.map_scale->count()) cfg.map_scale = cli.map_scale;
  if (f.re->count()) cfg.re = cli.re;
  if (f.alpha->count()) cfg.alpha = cli.alpha;
  if (f.re_min->count()) cfg.re_min = cli.re_min;
  if (f.re_max->count()) cfg.re_max = cli.re_max;
  if (f.steps->count()) cfg.steps = cli.steps;
  if (f.branch->count()) cfg.branch = cli.branch;
  if (f.epsilon->count()) cfg.epsilon = cli.epsilon;
  if (f.nx->count()) cfg.nx = cli.nx;
  if (f.workers->count()) cfg.workers = cli.workers;
  if (f.seed->count()) cfg.seed = cli.seed;
  if (f.output->count()) cfg.output = cli.output;
  if (f.alpha_min->count()) cfg.alpha_min = cli.alpha_min;
  if (f.alpha_max->count()) cfg.alpha_max = cli.alpha_max;
  if (f.alpha_steps->count()) cfg.alpha_steps = cli.alpha_steps;
  if (f.only->count()) cfg.only = cli.only;
  return cfg;
}

int write_output(const std::string& target, const std::string& text) {
  if (target == "-" || target.empty()) {
    std::cout << text;
    return kExitOk;
  }
  std::ofstream out(target);
  if (!out) {
    std::cerr << "error: cannot write " << target << "\n";
    return kExitUsage;
  }
  out << text;
  return kExitOk;
}

stab::ShearProfile pick_profile(const stab::RunConfig& cfg) {
  if (cfg.p > 0) return stab::builtin_profile("poiseuille_family", cfg.p);
  return stab::profile_from_flag(cfg.profile);
}

int usage_error(const std::string& message) {
  std::cerr << "error: " << message << "\n";
  return kExitUsage;
}

const char* verdict_name(stab::Verdict v) {
  switch (v) {
    case stab::Verdict::Subcritical: return "sub";
    case stab::Verdict::Supercritical: return "super";
    default: return "marginal";
  }
}

// --- subcommands ------------------------------------------------------------

int cmd_eigen(const stab::RunConfig& cfg) {
  if (cfg.re <= 0.0) return usage_error("eigen requires --re > 0");
  if (cfg.alpha <= 0.0) return usage_error("eigen requires --alpha > 0");
  const stab::ShearProfile profile = pick_profile(cfg);
  const stab::SpectralGrid grid =
      stab::default_grid(profile, cfg.n_points, cfg.map_scale);
  const stab::OSPencil pencil =
      stab::assemble_direct(profile, grid, cfg.alpha, 1.0 / cfg.re);
  const auto mode = stab::leading_eigenvalue(pencil);
  if (!mode) {
    std::cerr << "error: eigensolve did not converge\n";
    return kExitNumerical;
  }
  const stab::Complex lambda =
      stab::Complex(0.0, -cfg.alpha) * mode->c;
  std::ostringstream out;
  out << "profile,re,alpha,re_lambda,im_lambda,re_c_phase,im_c_phase,"
         "residual\n"
      << profile.name << ',' << stab::format_full(cfg.re) << ','
      << stab::format_full(cfg.alpha) << ','
      << stab::format_full(lambda.real()) << ','
      << stab::format_full(lambda.imag()) << ','
      << stab::format_full(mode->c.real()) << ','
      << stab::format_full(mode->c.imag()) << ','
      << stab::format_full(mode->residual) << "\n";
  return write_output(cfg.output, out.str());
}

int cmd_neutral(const stab::RunConfig& cfg) {
  if (cfg.steps <= 0) return usage_error("neutral requires --steps >= 1");
  if (cfg.re_min <= 0.0 || cfg.re_max < cfg.re_min) {
    return usage_error("neutral requires 0 < --re-min <= --re-max");
  }
  const stab::ShearProfile profile = pick_profile(cfg);
  const stab::SpectralGrid grid =
      stab::default_grid(profile, cfg.n_points, cfg.map_scale);
  const stab::CriticalPoint critical = stab::critical_reynolds(
      profile, grid, stab::default_re_bracket(profile));
  if (cfg.re_min < critical.re_c) {
    std::cerr << "error: re_min " << cfg.re_min
              << " lies below the critical Reynolds number re_c = "
              << critical.re_c << "\n";
    return kExitNumerical;
  }
  const stab::NeutralCurve curve = stab::trace_neutral_curves(
      profile, grid, cfg.re_min, cfg.re_max, cfg.steps, critical);
  std::ostringstream out;
  out << "re,alpha_minus,c_minus,alpha_plus,c_plus\n";
  for (const stab::NeutralSample& s : curve.samples) {
    out << stab::format_full(s.re) << ','
        << stab::format_full(s.alpha_minus) << ','
        << stab::format_full(s.c_minus) << ','
        << stab::format_full(s.alpha_plus) << ','
        << stab::format_full(s.c_plus) << "\n";
  }
  return write_output(cfg.output, out.str());
}

int cmd_landau(const stab::RunConfig& cfg) {
  if (cfg.branch != "lower" && cfg.branch != "upper") {
    return usage_error("landau requires --branch lower|upper");
  }
  std::vector<double> res;
  if (cfg.steps > 0) {
    if (cfg.re_min <= 0.0 || cfg.re_max < cfg.re_min) {
      return usage_error("landau requires 0 < --re-min <= --re-max");
    }
    for (int i = 0; i < cfg.steps; ++i) {
      const double t = cfg.steps == 1
                           ? 0.0
                           : static_cast<double>(i) / (cfg.steps - 1);
      res.push_back(cfg.re_min * std::pow(cfg.re_max / cfg.re_min, t));
    }
  } else if (cfg.re > 0.0) {
    res.push_back(cfg.re);
  } else {
    return usage_error("landau requires --re or --re-min/--re-max/--steps");
  }
  const stab::ShearProfile profile = pick_profile(cfg);
  const stab::SpectralGrid grid =
      stab::default_grid(profile, cfg.n_points, cfg.map_scale);
  const stab::Branch branch =
      cfg.branch == "lower" ? stab::Branch::Lower : stab::Branch::Upper;

  std::ostringstream out;
  out << "re,branch,alpha,omega0,re_C,im_C,re_b1,im_b1,re_b2,im_b2,verdict,"
         "resonance_margin\n";
  int failures = 0;
  for (double re : res) {
    try {
      const stab::NeutralPoint point =
          stab::neutral_alpha(profile, grid, 1.0 / re, branch);
      const stab::LandauResult lr =
          stab::landau_coefficient(profile, point, grid);
      out << stab::format_full(re) << ',' << cfg.branch << ','
          << stab::format_full(lr.point.alpha) << ','
          << stab::format_full(lr.point.omega0) << ','
          << stab::format_full(lr.c_coeff.real()) << ','
          << stab::format_full(lr.c_coeff.imag()) << ','
          << stab::format_full(lr.b1_proj.real()) << ','
          << stab::format_full(lr.b1_proj.imag()) << ','
          << stab::format_full(lr.b2_proj.real()) << ','
          << stab::format_full(lr.b2_proj.imag()) << ','
          << verdict_name(lr.verdict) << ','
          << stab::format_full(lr.resonance_margin) << "\n";
    } catch (const std::exception&) {
      out << stab::format_full(re) << ',' << cfg.branch
          << ",nan,nan,nan,nan,nan,nan,nan,nan,failed,nan\n";
      ++failures;
    }
  }
  const int code = write_output(cfg.output, out.str());
  if (code != kExitOk) return code;
  return failures == static_cast<int>(res.size()) ? kExitNumerical : kExitOk;
}

int cmd_thresholds(const stab::RunConfig& cfg) {
  const stab::ShearProfile profile = pick_profile(cfg);
  const stab::SpectralGrid grid =
      stab::default_grid(profile, cfg.n_points, cfg.map_scale);
  std::optional<std::pair<double, double>> bracket;
  if (cfg.re_min > 0.0 && cfg.re_max > cfg.re_min) {
    bracket = std::make_pair(cfg.re_min, cfg.re_max);
  } else {
    bracket = stab::default_re_bracket(profile);
  }
  std::ostringstream out;
  try {
    const stab::CriticalPoint critical =
        stab::critical_reynolds(profile, grid, bracket);
    out << "re_c=" << stab::format_full(critical.re_c) << "\n";
    out << "alpha_c=" << stab::format_full(critical.alpha_c) << "\n";
    const double re_s_hi =
        profile.geometry == stab::Geometry::HalfSpace ? 2.5 : 1.6;
    const double re_s = stab::find_re_s(
        profile, grid, {1.002 * critical.re_c, re_s_hi * critical.re_c});
    out << "re_s=" << stab::format_full(re_s) << "\n";
    const double re_d_hi = std::max(1e5, 2.0 * critical.re_c);
    const auto re_d =
        stab::find_re_d(profile, grid, {1.02 * critical.re_c, re_d_hi});
    if (re_d) {
      out << "re_d=" << stab::format_full(*re_d) << "\n";
    } else {
      out << "re_d=above bracket (" << stab::format_full(re_d_hi) << ")\n";
    }
  } catch (const std::exception& err) {
    std::cerr << "error: threshold search failed: " << err.what() << "\n";
    return kExitNumerical;
  }
  return write_output(cfg.output, out.str());
}

int cmd_wave(const stab::RunConfig& cfg) {
  if (cfg.epsilon < 0.0) return usage_error("wave requires --epsilon >= 0");
  if (cfg.re <= 0.0) return usage_error("wave requires --re > 0");
  if (cfg.nx <= 0) return usage_error("wave requires --nx >= 1");
  if (cfg.branch != "lower" && cfg.branch != "upper") {
    return usage_error("wave requires --branch lower|upper");
  }
  const stab::ShearProfile profile = pick_profile(cfg);
  const stab::SpectralGrid grid =
      stab::default_grid(profile, cfg.n_points, cfg.map_scale);
  const stab::Branch branch =
      cfg.branch == "lower" ? stab::Branch::Lower : stab::Branch::Upper;
  try {
    const stab::NeutralPoint point =
        stab::neutral_alpha(profile, grid, 1.0 / cfg.re, branch);
    const stab::LandauResult lr =
        stab::landau_coefficient(profile, point, grid);
    const stab::WaveField field =
        stab::reconstruct_wave(profile, grid, lr.eigen, lr.psi22, lr.psi20,
                               cfg.epsilon, cfg.nx);
    if (field.large_epsilon) {
      std::cerr << "warning: epsilon above 0.1, truncation error is large\n";
    }
    std::ostringstream out;
    out << "x,y,u,v\n";
    for (int i = 0; i < field.x.size(); ++i) {
      for (int j = 0; j < field.y.size(); ++j) {
        out << stab::format_full(field.x(i)) << ','
            << stab::format_full(field.y(j)) << ','
            << stab::format_full(field.u(i, j)) << ','
            << stab::format_full(field.v(i, j)) << "\n";
      }
    }
    return write_output(cfg.output, out.str());
  } catch (const std::exception& err) {
    std::cerr << "error: wave reconstruction failed: " << err.what() << "\n";
    return kExitNumerical;
  }
}

int cmd_validate(const stab::RunConfig& cfg) {
  stab::ValidationOptions options;
  options.only = cfg.only;
  options.n_points = cfg.n_points;
  options.map_scale = cfg.map_scale;
  options.seed = cfg.seed;
  std::ostringstream out;
  const bool to_stdout = cfg.output.empty() || cfg.output == "-";
  auto format = [](const stab::CriterionResult& r) {
    char buffer[32];
    std::snprintf(buffer, sizeof buffer, "%.1f", r.seconds);
    std::ostringstream line;
    line << (r.pass ? "[PASS] " : "[FAIL] ") << r.id << " (" << buffer
         << "s): " << r.detail << "\n";
    return line.str();
  };
  // stream per-criterion lines when writing to stdout; the suite can run
  // for many minutes
  const auto results = stab::run_acceptance(
      options, [&](const stab::CriterionResult& r) {
        const std::string line = format(r);
        if (to_stdout) {
          std::cout << line << std::flush;
        } else {
          out << line;
        }
      });
  bool all = true;
  for (const stab::CriterionResult& r : results) all = all && r.pass;
  const std::string footer =
      all ? "ALL CRITERIA PASSED\n" : "CRITERIA FAILED\n";
  if (to_stdout) {
    std::cout << footer;
    return all ? kExitOk : kExitNumerical;
  }
  out << footer;
  const int code = write_output(cfg.output, out.str());
  if (code != kExitOk) return code;
  return all ? kExitOk : kExitNumerical;
}

int cmd_sweep(const stab::RunConfig& cfg) {
  if (cfg.steps <= 0 || cfg.alpha_steps <= 0) {
    return usage_error("sweep requires --steps >= 1 and --alpha-steps >= 1");
  }
  if (cfg.re_min <= 0.0 || cfg.re_max < cfg.re_min ||
      cfg.alpha_min <= 0.0 || cfg.alpha_max < cfg.alpha_min) {
    return usage_error("sweep requires positive, ordered Re and alpha ranges");
  }
  stab::SweepRequest request;
  request.profile = pick_profile(cfg);
  request.n_points = cfg.n_points;
  request.map_scale = cfg.map_scale;
  request.workers = cfg.workers;
  for (int i = 0; i < cfg.steps; ++i) {
    const double t =
        cfg.steps == 1 ? 0.0 : static_cast<double>(i) / (cfg.steps - 1);
    request.res.push_back(cfg.re_min + t * (cfg.re_max - cfg.re_min));
  }
  for (int i = 0; i < cfg.alpha_steps; ++i) {
    const double t = cfg.alpha_steps == 1
                         ? 0.0
                         : static_cast<double>(i) / (cfg.alpha_steps - 1);
    request.alphas.push_back(cfg.alpha_min +
                             t * (cfg.alpha_max - cfg.alpha_min));
  }
  return write_output(cfg.output, stab::sweep_csv(request));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectral stability toolkit for parallel shear flows"};
  app.require_subcommand(1);

  stab::RunConfig cli;
  std::map<std::string, Flags> flags;
  const std::vector<std::string> names = {"eigen",      "neutral", "landau",
                                          "thresholds", "wave",    "validate",
                                          "sweep"};
  const std::map<std::string, std::string> blurbs = {
      {"eigen", "leading eigenvalue at one (Re, alpha)"},
      {"neutral", "trace both marginal stability branches"},
      {"landau", "first Landau coefficient along a branch"},
      {"thresholds", "critical numbers re_c, re_s, re_d"},
      {"wave", "reconstruct the finite-amplitude traveling wave"},
      {"validate", "run the acceptance suite"},
      {"sweep", "growth-rate map over a (Re, alpha) grid"}};
  for (const std::string& name : names) {
    CLI::App* sub = app.add_subcommand(name, blurbs.at(name));
    add_common(sub, cli, flags[name]);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    app.exit(err);
    return err.get_exit_code() == 0 ? kExitOk : kExitUsage;
  }

  const std::string sub = app.get_subcommands().front()->get_name();
  stab::RunConfig cfg;
  try {
    cfg = merge(flags.at(sub), cli, sub);
  } catch (const std::exception& err) {
    return usage_error(err.what());
  }

  try {
    if (sub == "eigen") return cmd_eigen(cfg);
    if (sub == "neutral") return cmd_neutral(cfg);
    if (sub == "landau") return cmd_landau(cfg);
    if (sub == "thresholds") return cmd_thresholds(cfg);
    if (sub == "wave") return cmd_wave(cfg);
    if (sub == "validate") return cmd_validate(cfg);
    if (sub == "sweep") return cmd_sweep(cfg);
  } catch (const std::invalid_argument& err) {
    return usage_error(err.what());
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kExitNumerical;
  }
  return usage_error("unknown subcommand");
}
