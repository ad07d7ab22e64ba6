#include <cmath>

#include "doctest.h"
#include "tgapod/integrator.hpp"

using namespace tgapod;

TEST_CASE("warm-up snapshot count") {
  // T0 = 1.5, dt = 0.005, stride 5: steps 0, 5, ..., 300
  const PeriodicMesh mesh(2.0 * std::acos(-1.0), 3);
  const FemSystem system(mesh, kolmogorov_problem(0.1), 0.005);
  const auto run = run_fem(system, system.initial_state(), 0.0, 1.5, 5);
  CHECK(run.snapshots.cols() == 61);
  CHECK(run.final_state.step == 300);
  CHECK(run.final_state.time == doctest::Approx(1.5).epsilon(1e-15));
  CHECK(run.snapshots.times().back() == doctest::Approx(1.5));
}

TEST_CASE("interval alignment is enforced") {
  CHECK(integral_steps(1.5, 0.005, "T0") == 300);
  CHECK(integral_steps(0.3, 0.1, "x") == 3);
  CHECK_THROWS_AS(integral_steps(1.0, 0.3, "T0"), std::invalid_argument);
  const PeriodicMesh mesh(1.0, 2);
  ProblemSpec p = kolmogorov_problem(0.1);
  const FemSystem system(mesh, p, 0.01);
  CHECK_THROWS_AS(run_fem(system, system.initial_state(), 0.0, 0.015, 1), std::invalid_argument);
  CHECK_THROWS_AS(run_fem(system, system.initial_state(), 0.5, 1.0, 1), std::invalid_argument);
}

TEST_CASE("zero initial state and zero forcing stay zero") {
  const PeriodicMesh mesh(2.0 * std::acos(-1.0), 4);
  ProblemSpec p = kolmogorov_problem(0.1);
  p.forcing = {};
  const FemSystem system(mesh, p, 0.01);
  const auto s = system.step(system.initial_state());
  CHECK(s.coeffs.isZero(0.0));
  CHECK(s.step == 1);
}

TEST_CASE("prepared system and one-off step agree") {
  const PeriodicMesh mesh(2.0 * std::acos(-1.0), 4);
  const auto p = abc_problem(0.1, 1.0);
  SolverConfig cfg;
  const FemSystem system(mesh, p, 0.02, cfg);
  auto s = system.initial_state();
  s = system.step(s);
  const auto a = system.step(s);
  const auto b = fem_step(s, p, mesh, 0.02, cfg);
  CHECK(a.step == b.step);
  CHECK((a.coeffs - b.coeffs).norm() <= 1e-12 * a.coeffs.norm());
}

TEST_CASE("mass is conserved without sources") {
  const PeriodicMesh mesh(2.0 * std::acos(-1.0), 6);
  ProblemSpec p = kolmogorov_problem(0.05);
  p.forcing = {};
  p.initial = [](const Vec3& x, double) { return 1.0 + std::sin(x[0]) * std::cos(2.0 * x[1]) + 0.3 * std::sin(x[2]); };
  const FemSystem system(mesh, p, 0.01);
  const Vector ones = Vector::Ones(static_cast<Eigen::Index>(mesh.num_dofs()));
  auto s = system.initial_state();
  const double q0 = ones.dot(system.mass() * s.coeffs);
  double worst = 0.0;
  run_fem(system, s, 40, 40, false, [&](const StateVector& st) {
    worst = std::max(worst, std::abs(ones.dot(system.mass() * st.coeffs) - q0) / std::abs(q0));
  });
  CHECK(worst <= 1e-6);
}

TEST_CASE("trajectory and snapshot bookkeeping") {
  const PeriodicMesh mesh(1.0, 3);
  const FemSystem system(mesh, kolmogorov_problem(0.1), 0.05);
  const auto run = run_fem(system, system.initial_state(), 7, 3, true);
  CHECK(run.trajectory.size() == 8);
  CHECK(run.snapshots.cols() == 3);  // steps 0, 3, 6
  CHECK(run.snapshots.times()[2] == doctest::Approx(0.3));
  CHECK((run.trajectory.back() - run.final_state.coeffs).norm() == 0.0);
  CHECK(system.time_at(7) == 7 * 0.05);
}
