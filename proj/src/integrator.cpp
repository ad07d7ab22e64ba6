#include "tgapod/integrator.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace tgapod {

SnapshotMatrix::SnapshotMatrix(const Matrix& columns, std::vector<double> times) : times_(std::move(times)) {
  if (!times_.empty() && times_.size() != static_cast<std::size_t>(columns.cols())) {
    throw std::invalid_argument("snapshot matrix: one time per column required");
  }
  if (times_.empty()) times_.assign(static_cast<std::size_t>(columns.cols()), 0.0);
  for (Eigen::Index c = 0; c < columns.cols(); ++c) columns_.emplace_back(columns.col(c));
}

void SnapshotMatrix::append(const Vector& column, double time) {
  if (!columns_.empty() && column.size() != columns_.front().size()) {
    throw std::invalid_argument("snapshot matrix: column length mismatch");
  }
  columns_.push_back(column);
  times_.push_back(time);
}

Matrix SnapshotMatrix::to_matrix() const {
  Matrix m(static_cast<Eigen::Index>(rows()), static_cast<Eigen::Index>(cols()));
  for (std::size_t c = 0; c < columns_.size(); ++c) m.col(static_cast<Eigen::Index>(c)) = columns_[c];
  return m;
}

FemSystem::FemSystem(const PeriodicMesh& mesh, ProblemSpec problem, double dt, SolverConfig solver)
    : mesh_(&mesh), problem_(std::move(problem)), dt_(dt), solver_(solver), assembler_(mesh) {
  problem_.validate();
  solver_.validate();
  if (!(dt > 0.0)) throw std::invalid_argument("time step must be positive");
  mass_ = assembler_.mass();
  stiffness_ = assembler_.stiffness();
}

SparseMatrix FemSystem::system_matrix(double t) const {
  return compose_system(mass_, stiffness_, advection(t), reaction(t), problem_.diffusivity, dt_);
}

Vector FemSystem::load(double t) const { return dt_ * assembler_.load(problem_.forcing, t); }

StateVector FemSystem::initial_state() const {
  Vector u0 = problem_.initial ? interpolate(*mesh_, problem_.initial, 0.0)
                               : Vector::Zero(static_cast<Eigen::Index>(num_dofs()));
  return make_state(std::move(u0), 0);
}

StateVector FemSystem::make_state(Vector coeffs, std::int64_t step) const {
  if (static_cast<std::size_t>(coeffs.size()) != num_dofs()) throw std::invalid_argument("state length mismatch");
  return StateVector{std::move(coeffs), step, time_at(step)};
}

Vector FemSystem::advance(const Vector& prev, double t) const {
  const SparseMatrix a = system_matrix(t);
  const Vector rhs = load(t) + mass_ * prev;
  try {
    return solve_linear(a, rhs, solver_, &prev);
  } catch (const SolverError& e) {
    throw SolverError(std::string(e.what()) + " (implicit Euler step to t = " + std::to_string(t) + ")", e.residual());
  }
}

StateVector FemSystem::step(const StateVector& prev) const {
  const std::int64_t k = prev.step + 1;
  return make_state(advance(prev.coeffs, time_at(k)), k);
}

StateVector fem_step(const StateVector& prev, const ProblemSpec& problem, const PeriodicMesh& mesh, double dt,
                     const SolverConfig& cfg) {
  if (problem.horizon > 0.0 && prev.time + dt > problem.horizon + dt * 1e-9) {
    throw std::invalid_argument("fem_step: step would pass the problem horizon");
  }
  const FemSystem system(mesh, problem, dt, cfg);
  const double t = prev.time + dt;
  return StateVector{system.advance(prev.coeffs, t), prev.step + 1, t};
}

std::int64_t integral_steps(double span, double dt, const char* what) {
  if (!(dt > 0.0)) throw std::invalid_argument(std::string(what) + ": step must be positive");
  if (span < 0.0) throw std::invalid_argument(std::string(what) + ": negative length");
  const double ratio = span / dt;
  const double rounded = std::round(ratio);
  if (std::abs(ratio - rounded) > 1e-9 * std::max(1.0, ratio)) {
    throw std::invalid_argument(std::string(what) + ": " + std::to_string(span) + " is not a multiple of " +
                                std::to_string(dt));
  }
  return static_cast<std::int64_t>(rounded);
}

FemRun run_fem(const FemSystem& system, const StateVector& init, std::int64_t num_steps, std::int64_t stride,
               bool keep_trajectory, const std::function<void(const StateVector&)>& on_step) {
  if (stride < 1) throw std::invalid_argument("run_fem: snapshot stride must be at least 1");
  if (num_steps < 0) throw std::invalid_argument("run_fem: negative step count");
  FemRun run;
  run.final_state = init;
  run.snapshots.append(init.coeffs, init.time);
  if (keep_trajectory) run.trajectory.push_back(init.coeffs);
  for (std::int64_t i = 1; i <= num_steps; ++i) {
    run.final_state = system.step(run.final_state);
    if (i % stride == 0) run.snapshots.append(run.final_state.coeffs, run.final_state.time);
    if (keep_trajectory) run.trajectory.push_back(run.final_state.coeffs);
    if (on_step) on_step(run.final_state);
  }
  return run;
}

FemRun run_fem(const FemSystem& system, const StateVector& init, double t_a, double t_b, std::int64_t stride,
               bool keep_trajectory) {
  const std::int64_t start = integral_steps(t_a, system.dt(), "run_fem interval start");
  if (start != init.step) throw std::invalid_argument("run_fem: interval start does not match the initial state");
  return run_fem(system, init, integral_steps(t_b - t_a, system.dt(), "run_fem interval"), stride, keep_trajectory);
}

}  // namespace tgapod
