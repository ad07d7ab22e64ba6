#include <cmath>
#include <random>
#include <sstream>

#include <Eigen/SVD>

#include "doctest.h"
#include "oracles.hpp"
#include "tgapod/pod.hpp"

using namespace tgapod;

TEST_CASE("thin SVD reconstructs and matches a full SVD") {
  std::mt19937 rng(21);
  for (auto [rows, cols] : {std::pair{50, 20}, std::pair{20, 50}, std::pair{300, 61}}) {
    const Matrix u = oracle::random_matrix(rng, rows, cols);
    const auto svd = thin_svd(u);
    const Matrix rec = svd.left * svd.values.asDiagonal() * svd.right.transpose();
    CHECK((rec - u).norm() <= 1e-10 * u.norm());
    const Eigen::BDCSVD<Matrix> ref(u);
    CHECK((svd.values - ref.singularValues().head(svd.rank())).norm() <= 1e-10 * ref.singularValues()[0]);
    const auto r = static_cast<Eigen::Index>(svd.rank());
    CHECK((svd.left.transpose() * svd.left - Matrix::Identity(r, r)).norm() <= 1e-10);
    CHECK((svd.right.transpose() * svd.right - Matrix::Identity(r, r)).norm() <= 1e-10);
  }
}

TEST_CASE("rank truncation") {
  std::mt19937 rng(22);
  const Matrix low = oracle::random_matrix(rng, 40, 3) * oracle::random_matrix(rng, 3, 15);
  const auto svd = thin_svd(low);
  CHECK(svd.rank() == 3);
  CHECK((svd.left * svd.values.asDiagonal() * svd.right.transpose() - low).norm() <= 1e-10 * low.norm());

  Matrix vv(5, 2);
  vv.col(0) << 1, 2, 3, 4, 5;
  vv.col(1) = vv.col(0);
  CHECK(thin_svd(vv).rank() == 1);
  CHECK(thin_svd(Matrix::Zero(6, 3)).rank() == 0);
}

TEST_CASE("mode count uses a strict inequality on singular value sums") {
  Vector s(4);
  s << 4, 3, 2, 1;
  CHECK(select_mode_count(s, 0.6) == 2);
  CHECK(select_mode_count(s, 0.9) == 4);  // 9 is not > 9
  CHECK(select_mode_count(s, 0.5) == 2);  // 4 is not > 5
  CHECK(select_mode_count(s, 0.3) == 1);
  CHECK(select_mode_count(Vector(), 0.5) == 0);
}

TEST_CASE("mode count grows with the energy fraction") {
  std::mt19937 rng(23);
  const auto svd = thin_svd(oracle::random_matrix(rng, 30, 12));
  std::size_t prev = 0;
  for (double g = 0.05; g < 1.0; g += 0.05) {
    const auto m = select_mode_count(svd.values, g);
    CHECK(m >= prev);
    prev = m;
  }
}

TEST_CASE("pod_mode") {
  std::mt19937 rng(24);
  const Matrix u = oracle::random_matrix(rng, 80, 10);
  const auto basis = pod_mode(u, 0.999);
  const auto m = static_cast<Eigen::Index>(basis.size());
  CHECK(basis.dofs() == 80);
  CHECK((basis.modes.transpose() * basis.modes - Matrix::Identity(m, m)).norm() <= 1e-10);
  CHECK_THROWS_AS(pod_mode(Matrix::Zero(10, 3), 0.9), std::invalid_argument);
  CHECK_THROWS_AS(pod_mode(u, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(pod_mode(u, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(pod_mode(SnapshotMatrix(), 0.9), std::invalid_argument);
}

TEST_CASE("basis update combines new directions with the old modes") {
  PodBasis old;
  old.modes = Matrix::Zero(4, 1);
  old.modes(0, 0) = 1.0;
  Matrix w = Matrix::Zero(4, 1);
  w(1, 0) = 1.0;
  // singular values of [e2, e1] are (1, 1)
  CHECK(update_pod_mode(w, 0.9, 0.4, old).size() == 1);
  // equal sums do not pass the strict test, so both directions stay
  CHECK(update_pod_mode(w, 0.9, 0.5, old).size() == 2);
  CHECK(update_pod_mode(w, 0.9, 1.0 - 1e-8, old).size() == 2);

  std::mt19937 rng(25);
  const auto first = pod_mode(oracle::random_matrix(rng, 30, 6), 0.9);
  const auto next = update_pod_mode(oracle::random_matrix(rng, 30, 6), 0.9, 1.0 - 1e-8, first);
  const auto m = static_cast<Eigen::Index>(next.size());
  CHECK((next.modes.transpose() * next.modes - Matrix::Identity(m, m)).norm() <= 1e-10);
  // the old span is kept when γ₃ is close to one
  const Matrix residual = first.modes - next.modes * (next.modes.transpose() * first.modes);
  CHECK(residual.norm() <= 1e-8);
  CHECK_THROWS_AS(update_pod_mode(oracle::random_matrix(rng, 29, 2), 0.9, 0.9, first), std::invalid_argument);
}

TEST_CASE("reduce_system matches the dense triple product") {
  std::mt19937 rng(26);
  for (int trial = 0; trial < 5; ++trial) {
    const int n = 20, m = 3 + trial;
    const Matrix a = oracle::random_matrix(rng, n, n), c = oracle::random_matrix(rng, n, n);
    const Vector b = oracle::random_vector(rng, n);
    PodBasis basis{oracle::orthonormal(rng, n, m), Vector()};
    const auto red = reduce_system(SparseMatrix::from_dense(a), b, SparseMatrix::from_dense(c), basis);
    const Matrix& r = basis.modes;
    const Matrix ra = r.transpose() * a * r, rc = r.transpose() * c * r;
    CHECK((red.a - ra).norm() <= 1e-12 * ra.norm());
    CHECK((red.c - rc).norm() <= 1e-12 * rc.norm());
    CHECK((red.b - r.transpose() * b).norm() <= 1e-12 * b.norm());
  }
}

TEST_CASE("pod_step solves the reduced system") {
  std::mt19937 rng(27);
  ReducedSystem red{oracle::random_matrix(rng, 6, 6) + 6.0 * Matrix::Identity(6, 6), oracle::random_vector(rng, 6),
                    oracle::random_matrix(rng, 6, 6)};
  const Vector prev = oracle::random_vector(rng, 6);
  const Vector x = pod_step(prev, red);
  CHECK((red.a * x - red.b - red.c * prev).norm() <= 1e-12 * (red.b + red.c * prev).norm());
  red.a = Matrix::Zero(6, 6);
  CHECK_THROWS_AS(pod_step(prev, red), SolverError);
}

TEST_CASE("identity basis reproduces the full-order step") {
  const PeriodicMesh mesh(2.0 * std::acos(-1.0), 3);
  const FemSystem system(mesh, kolmogorov_problem(0.1), 0.05);
  const auto n = static_cast<Eigen::Index>(mesh.num_dofs());
  const ReducedModel model(system, PodBasis{Matrix::Identity(n, n), Vector::Ones(n)});
  auto full = system.initial_state();
  Vector red = restrict_state(model.basis(), full.coeffs);
  for (int k = 1; k <= 10; ++k) {
    full = system.step(full);
    red = model.step(red, system.time_at(k));
    CHECK((lift_state(model.basis(), red) - full.coeffs).norm() <= 1e-8 * full.coeffs.norm());
  }
  const auto at = model.system_at(0.3);
  const auto direct = reduce_system(system.system_matrix(0.3), system.load(0.3), system.mass(), model.basis());
  CHECK((at.a - direct.a).norm() <= 1e-12 * direct.a.norm());
  CHECK((at.b - direct.b).norm() <= 1e-12 * direct.b.norm());
}

TEST_CASE("basis file round trip") {
  std::mt19937 rng(28);
  const PodBasis basis{oracle::orthonormal(rng, 12, 3), Vector()};
  std::stringstream ss;
  write_basis(ss, basis);
  const auto back = read_basis(ss);
  CHECK((back.modes - basis.modes).norm() == 0.0);
  std::stringstream bad("3 2\n1.0\n");
  CHECK_THROWS(read_basis(bad));
}
