// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// non-zero when any of them fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>

#include "oracles.hpp"
#include "tgapod/adaptive.hpp"
#include "tgapod/experiment.hpp"

using namespace tgapod;

namespace {

const double kPi = std::acos(-1.0);

struct Outcome {
  bool pass;
  std::string detail;
};

std::string fmt(const char* f, double a = 0, double b = 0, double c = 0, double d = 0) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, a, b, c, d);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Outcome assembly_oracles() {
  const auto t0 = std::chrono::steady_clock::now();
  std::mt19937 rng(101);
  const VectorField b = [](const Vec3& x, double t) -> Vec3 {
    return {0.5 + x[1] - 0.2 * x[2] * t, -1.0 + 0.3 * x[0], 0.25 * x[0] - 0.4 * x[1] + 0.1};
  };
  double worst = 0.0;
  for (int i = 0; i < 20; ++i) {
    const auto cell = make_tetrahedron(oracle::random_cell(rng));
    const auto g = oracle::geometry(cell.corners);
    worst = std::max(worst, oracle::max_rel_diff(oracle::mass(g), local_mass(cell)));
    worst = std::max(worst, oracle::max_rel_diff(oracle::stiffness(g), local_stiffness(cell)));
    worst = std::max(worst, oracle::max_rel_diff(oracle::advection(g, b, 0.7), local_advection(cell, b, 0.7)));
  }
  const PeriodicMesh mesh(2.0 * kPi, 8);
  double sum = 0.0;
  for (double v : assemble_mass(mesh).values()) sum += v;
  const double vol = std::pow(2.0 * kPi, 3);
  const double mass_rel = std::abs(sum - vol) / vol;
  const double secs = seconds_since(t0);
  return {worst <= 1e-8 && mass_rel <= 1e-12 && secs < 10.0,
          fmt("local rel diff %.2e (tol 1e-8), mass sum rel %.2e (tol 1e-12), %.2fs (limit 10s)", worst, mass_rel,
              secs)};
}

Outcome mms_convergence() {
  const auto t0 = std::chrono::steady_clock::now();
  RunConfig cfg;
  cfg.converge_n = {8, 16, 32};
  cfg.converge_dt = 1e-3;
  cfg.converge_T = 0.1;
  cfg.converge_time_n = 16;
  cfg.converge_time_dt = {0.04, 0.02, 0.01};
  cfg.converge_time_T = 1.0;
  const auto r = run_convergence(cfg);
  const double secs = seconds_since(t0);
  std::string errs = "spatial errors";
  for (const auto& row : r.spatial) errs += fmt(" %.3e", row.error);
  errs += ", temporal errors vs small-step reference";
  for (const auto& row : r.temporal) errs += fmt(" %.3e", row.reference_error);
  return {std::abs(r.spatial_order - 2.0) <= 0.3 && std::abs(r.temporal_order - 1.0) <= 0.2 && secs < 300.0,
          fmt("spatial order %.3f (2.0 +- 0.3), temporal order %.3f (1.0 +- 0.2), analytic-error slope in time %.3f, "
              "%.1fs (limit 300s); ",
              r.spatial_order, r.temporal_order, r.temporal_order_analytic, secs) +
              errs};
}

Outcome conservation() {
  const PeriodicMesh mesh(2.0 * kPi, 8);
  ProblemSpec p = kolmogorov_problem(0.05);
  p.forcing = {};
  p.reaction = {};
  p.initial = [](const Vec3& x, double) { return 1.0 + std::sin(x[0]) * std::cos(x[1]) + 0.5 * std::sin(2.0 * x[2]); };
  const FemSystem system(mesh, p, 0.01);
  const Vector ones = Vector::Ones(static_cast<Eigen::Index>(mesh.num_dofs()));
  const auto init = system.initial_state();
  const double q0 = ones.dot(system.mass() * init.coeffs);
  double drift = 0.0;
  run_fem(system, init, 100, 100, false, [&](const StateVector& s) {
    drift = std::max(drift, std::abs(ones.dot(system.mass() * s.coeffs) - q0) / std::abs(q0));
  });
  return {drift <= 1e-6, fmt("max relative drift of the total mass over 100 steps %.2e (tol 1e-6)", drift)};
}

Outcome pod_algebra() {
  std::mt19937 rng(104);
  double recon = 0.0, ortho = 0.0;
  for (auto [rows, cols, rank] : {std::tuple{200, 40, 40}, std::tuple{40, 200, 40}, std::tuple{300, 61, 7}}) {
    const Matrix u = oracle::random_matrix(rng, rows, rank) * oracle::random_matrix(rng, rank, cols);
    const auto svd = thin_svd(u);
    recon = std::max(recon, (svd.left * svd.values.asDiagonal() * svd.right.transpose() - u).norm() / u.norm());
    const auto basis = pod_mode(u, 0.999);
    const auto m = static_cast<Eigen::Index>(basis.size());
    ortho = std::max(ortho, (basis.modes.transpose() * basis.modes - Matrix::Identity(m, m)).norm());
  }
  Vector s(4);
  s << 4, 3, 2, 1;
  const bool counts = select_mode_count(s, 0.6) == 2 && select_mode_count(s, 0.9) == 4;
  double triple = 0.0;
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 20, m = 2 + trial % 8;
    const Matrix a = oracle::random_matrix(rng, n, n), c = oracle::random_matrix(rng, n, n);
    const Vector b = oracle::random_vector(rng, n);
    const PodBasis basis{oracle::orthonormal(rng, n, m), Vector()};
    const auto red = reduce_system(SparseMatrix::from_dense(a), b, SparseMatrix::from_dense(c), basis);
    const Matrix& r = basis.modes;
    const Matrix ra = r.transpose() * a * r, rc = r.transpose() * c * r;
    const Vector rb = r.transpose() * b;
    triple = std::max({triple, (red.a - ra).norm() / ra.norm(), (red.c - rc).norm() / rc.norm(),
                       (red.b - rb).norm() / rb.norm()});
  }
  return {recon <= 1e-10 && counts && ortho <= 1e-10 && triple <= 1e-12,
          fmt("reconstruction %.2e (tol 1e-10), orthonormality %.2e (tol 1e-10), triple product %.2e (tol 1e-12), ",
              recon, ortho, triple) +
              (counts ? "mode counts 2 and 4 as expected" : "mode count rule mismatch")};
}

Outcome exact_reduction() {
  const PeriodicMesh mesh(2.0 * kPi, 6);
  const FemSystem system(mesh, kolmogorov_problem(0.1), 0.01);
  const auto n = static_cast<Eigen::Index>(mesh.num_dofs());
  const ReducedModel model(system, PodBasis{Matrix::Identity(n, n), Vector::Ones(n)});
  auto full = system.initial_state();
  Vector red = restrict_state(model.basis(), full.coeffs);
  double worst = 0.0;
  for (int k = 1; k <= 50; ++k) {
    full = system.step(full);
    red = model.step(red, system.time_at(k));
    worst = std::max(worst, relative_error(full.coeffs, lift_state(model.basis(), red)));
  }
  return {worst <= 1e-8, fmt("identity-basis reduced vs full trajectory, max rel diff %.2e over 50 steps (tol 1e-8)",
                             worst)};
}

Outcome indicators() {
  std::mt19937 rng(106);
  double worst = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 10, m = 1 + trial % 6;
    const Matrix a = oracle::random_matrix(rng, n, n), c = oracle::random_matrix(rng, n, n);
    const Vector b = oracle::random_vector(rng, n);
    const PodBasis basis{oracle::orthonormal(rng, n, m), Vector()};
    const Vector u = oracle::random_vector(rng, m), v = oracle::random_vector(rng, m);
    const Vector x = basis.modes * u, y = basis.modes * v;
    const Vector rhs = b + c * y;
    const double ref = (a * x - rhs).norm() / rhs.norm();
    const double got = residual_indicator(SparseMatrix::from_dense(a), b, SparseMatrix::from_dense(c), basis, u, v);
    worst = std::max(worst, std::abs(got - ref) / ref);

    const Vector uh = oracle::random_vector(rng, n), up = oracle::random_vector(rng, n);
    const double cref = std::sqrt((uh - up).squaredNorm() / uh.squaredNorm());
    worst = std::max(worst, std::abs(coarse_indicator(uh, up) - cref) / cref);
  }
  const bool strict = !mark(0.005, 0.005) && mark(std::nextafter(0.005, 1.0), 0.005);
  return {worst <= 1e-12 && strict,
          fmt("max rel diff vs dense recomputation %.2e (tol 1e-12), ", worst) +
              (strict ? "eta = eta0 not marked" : "strictness violated")};
}

struct DeskCase {
  AdaptiveParams params;
  TwoGridParams two_grid{4, 0.05};
  PeriodicMesh fine{2.0 * kPi, 8};
  PeriodicMesh coarse{2.0 * kPi, 4};

  DeskCase() {
    params.dt = 0.01;
    params.horizon = 10.0;
    params.warmup = 1.5;
    params.update_window = 1.0;
    params.snapshot_stride = 5;
  }
};

Outcome driver_equivalence() {
  DeskCase desk;
  desk.params.eta0 = 1e9;
  const auto problem = kolmogorov_problem(0.1);
  DriverOptions opts;
  opts.keep_states = true;
  const auto pod = run_pod(problem, desk.fine, desk.params, opts);
  const auto apod = run_apod_residual(problem, desk.fine, desk.params, opts);
  const auto tg = run_tg_apod(problem, desk.fine, desk.coarse, desk.two_grid, desk.params, opts);
  bool equal = apod.states.size() == pod.states.size() && tg.states.size() == pod.states.size();
  for (std::size_t k = 0; equal && k < pod.states.size(); ++k) {
    equal = (apod.states[k].array() == pod.states[k].array()).all() && (tg.states[k].array() == pod.states[k].array()).all();
  }
  equal = equal && apod.updates == 0 && tg.updates == 0 && tg.marked.empty();
  return {equal, fmt("%g states compared bitwise; updates apod %g, tg-apod %g", static_cast<double>(pod.states.size()),
                     static_cast<double>(apod.updates), static_cast<double>(tg.updates))};
}

ErrorTrace stored_coarse_trace;

Outcome table_ordering() {
  const auto t0 = std::chrono::steady_clock::now();
  DeskCase desk;
  bool ok = true;
  std::string detail;
  for (double eps : {0.1, 0.05}) {
    const auto problem = kolmogorov_problem(eps);
    const auto reference = fem_trajectory(problem, desk.fine, desk.params);
    DriverOptions opts;
    opts.reference = &reference;
    const auto pod = run_pod(problem, desk.fine, desk.params, opts);
    const auto tg = run_tg_apod(problem, desk.fine, desk.coarse, desk.two_grid, desk.params, opts);
    const double ep = pod.trace.average_error(), et = tg.trace.average_error();
    ok = ok && et < ep && !tg.marked.empty();
    detail += fmt("eps=%g: pod %.4e (m=%g), ", eps, ep, static_cast<double>(pod.final_modes)) +
              fmt("tg-apod %.4e (m=%g, |S|=%g); ", et, static_cast<double>(tg.final_modes),
                  static_cast<double>(tg.marked.size()));
    if (eps == 0.1) stored_coarse_trace = tg.coarse_trace;
  }
  const double secs = seconds_since(t0);
  return {ok && secs < 900.0, detail + fmt("%.1fs (limit 900s)", secs)};
}

Outcome threshold_monotonicity() {
  if (stored_coarse_trace.records.empty()) return {false, "no stored coarse trace"};
  const auto s1 = marked_from_trace(stored_coarse_trace, 0.01, 0.05);
  const auto s2 = marked_from_trace(stored_coarse_trace, 0.005, 0.05);
  const auto s3 = marked_from_trace(stored_coarse_trace, 0.002, 0.05);
  return {s1.is_subset_of(s2) && s2.is_subset_of(s3),
          fmt("|S| at eta0 = 0.01, 0.005, 0.002: %g, %g, %g over %g stored rows", static_cast<double>(s1.size()),
              static_cast<double>(s2.size()), static_cast<double>(s3.size()),
              static_cast<double>(stored_coarse_trace.records.size()))};
}

}  // namespace

int main() {
  const std::pair<const char*, std::function<Outcome()>> criteria[] = {
      {"assembly oracles", assembly_oracles},
      {"manufactured-solution convergence", mms_convergence},
      {"mass conservation", conservation},
      {"POD algebra", pod_algebra},
      {"exact reduction", exact_reduction},
      {"indicator correctness", indicators},
      {"driver equivalence at huge threshold", driver_equivalence},
      {"desk Kolmogorov ordering", table_ordering},
      {"threshold monotonicity", threshold_monotonicity},
  };
  int failures = 0;
  int index = 0;
  for (const auto& [name, check] : criteria) {
    ++index;
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failures += !o.pass;
    std::printf("criterion %d %s: %s | %s\n", index, o.pass ? "PASS" : "FAIL", name, o.detail.c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
