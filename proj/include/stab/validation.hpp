#pragma once

#include <functional>
#include <string>
#include <vector>

#include "stab/spectral.hpp"

namespace stab {

struct CriterionResult {
  std::string id;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
};

struct ValidationOptions {
  std::string only;        // run criteria whose id contains this substring
  int n_points = 0;  // 0: defaults (128 strip, 192 sextic strip / half-space)
  double map_scale = 10.0;  // half-space box height Y
  unsigned long seed = 0;  // property-test sampling
};

/// Runs the acceptance suite (threshold reproduction, sign structure,
/// asymptotics, oracle equivalence, invariants, determinism) and returns one
/// result per criterion. Failures are reported, never thrown. `on_result`,
/// when set, is invoked after each criterion finishes so long runs can
/// stream progress.
std::vector<CriterionResult> run_acceptance(
    const ValidationOptions& options,
    const std::function<void(const CriterionResult&)>& on_result = {});

/// Independent eigenvalue oracle for plane Poiseuille flow: compound-matrix
/// shooting for the even mode, secant iteration on the phase speed starting
/// from `guess`. Built on fixed-step RK4 with `steps` subintervals on the
/// half-channel; shares no code with the collocation solver.
Complex shooting_eigenvalue_poiseuille(double re, double alpha, Complex guess,
                                       int steps = 12000);

}  // namespace stab
