#include "tgapod/problems.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace tgapod {

void ProblemSpec::validate() const {
  if (!(diffusivity > 0.0)) throw std::invalid_argument("problem '" + name + "': diffusivity must be positive");
  if (!(length > 0.0)) throw std::invalid_argument("problem '" + name + "': domain length must be positive");
  if (!(horizon > 0.0)) throw std::invalid_argument("problem '" + name + "': horizon must be positive");
}

ProblemSpec kolmogorov_problem(double eps) {
  ProblemSpec p;
  p.name = "kolmogorov";
  p.diffusivity = eps;
  p.velocity = [](const Vec3& x, double t) -> Vec3 {
    const double ct = std::cos(t);
    return {std::cos(x[1]) + std::sin(x[2]) * ct, std::cos(x[2]) + std::sin(x[0]) * ct,
            std::cos(x[0]) + std::sin(x[1]) * ct};
  };
  p.forcing = [](const Vec3& x, double t) { return -std::cos(x[1]) - std::sin(x[2]) * std::cos(t); };
  p.initial = [](const Vec3&, double) { return 0.0; };
  p.length = 2.0 * std::numbers::pi;
  p.horizon = 100.0;
  return p;
}

ProblemSpec abc_problem(double eps, double w) {
  ProblemSpec p;
  p.name = "abc";
  p.diffusivity = eps;
  p.velocity = [w](const Vec3& x, double t) -> Vec3 {
    const double s = std::sin(w * t);
    return {std::sin(x[2] + s) + std::cos(x[1] + s), std::sin(x[0] + s) + std::cos(x[2] + s),
            std::sin(x[1] + s) + std::cos(x[0] + s)};
  };
  p.forcing = [w](const Vec3& x, double t) {
    const double s = std::sin(w * t);
    return -std::sin(x[2] + s) - std::cos(x[1] + s);
  };
  p.initial = [](const Vec3&, double) { return 0.0; };
  p.length = 2.0 * std::numbers::pi;
  p.horizon = 100.0;
  return p;
}

ManufacturedProblem manufactured_problem(double eps, VectorField velocity) {
  ManufacturedProblem out;
  out.exact = [](const Vec3& x, double t) { return std::sin(x[0] + x[1] + x[2] - t); };
  auto& p = out.problem;
  p.name = "manufactured";
  p.diffusivity = eps;
  p.velocity = velocity;
  // u_t = −cos θ, Δu = −3 sin θ, ∇u = cos θ·(1, 1, 1)
  p.forcing = [eps, velocity](const Vec3& x, double t) {
    const double theta = x[0] + x[1] + x[2] - t;
    double advect = 0.0;
    if (velocity) {
      const Vec3 b = velocity(x, t);
      advect = (b[0] + b[1] + b[2]) * std::cos(theta);
    }
    return -std::cos(theta) + 3.0 * eps * std::sin(theta) + advect;
  };
  p.initial = out.exact;
  p.length = 2.0 * std::numbers::pi;
  p.horizon = 1.0;
  return out;
}

}  // namespace tgapod
