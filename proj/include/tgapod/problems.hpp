#pragma once

#include <string>

#include "tgapod/assembly.hpp"

namespace tgapod {

/// Periodic advection-diffusion-reaction problem
///   u_t − ε Δu + B·∇u + c u = f  on [0, L)^3 × [0, T],  u(·, 0) = u0.
struct ProblemSpec {
  std::string name;
  double diffusivity = 1.0;
  VectorField velocity;
  ScalarField reaction;
  ScalarField forcing;
  ScalarField initial;
  double length = 0.0;
  double horizon = 0.0;

  void validate() const;
};

/// Kolmogorov-type flow: B = (cos y, cos z, cos x) + (sin z, sin x, sin y)·cos t,
/// f = −cos y − sin z·cos t, zero initial state, L = 2π, T = 100.
ProblemSpec kolmogorov_problem(double eps);

/// Time-dependent ABC flow with phase s = sin(w t); zero initial state, L = 2π, T = 100.
ProblemSpec abc_problem(double eps, double w = 1.0);

/// Manufactured solution u* = sin(x + y + z − t) transported by `velocity`,
/// with f = u*_t − ε Δu* + B·∇u* and u0 = u*(·, 0).
struct ManufacturedProblem {
  ProblemSpec problem;
  ScalarField exact;
};
ManufacturedProblem manufactured_problem(double eps, VectorField velocity);

}  // namespace tgapod
