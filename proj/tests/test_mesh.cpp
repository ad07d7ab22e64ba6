#include <cmath>
#include <random>
#include <set>
#include <sstream>

#include "doctest.h"
#include "tgapod/mesh.hpp"

using namespace tgapod;

TEST_CASE("mesh counts and volumes") {
  const double pi = std::acos(-1.0);
  for (std::size_t n : {2u, 3u, 5u}) {
    const PeriodicMesh mesh(2.0 * pi, n);
    CHECK(mesh.num_dofs() == n * n * n);
    CHECK(mesh.num_cells() == 6 * n * n * n);
    double vol = 0.0;
    for (const auto& c : mesh.cells()) {
      CHECK(c.volume > 0.0);
      vol += c.volume;
    }
    CHECK(vol == doctest::Approx(std::pow(2.0 * pi, 3)).epsilon(1e-13));
  }
}

TEST_CASE("n = 2 gives 8 dofs and 48 cells") {
  const PeriodicMesh mesh(1.0, 2);
  CHECK(mesh.num_dofs() == 8);
  CHECK(mesh.num_cells() == 48);
}

TEST_CASE("invalid mesh arguments") {
  CHECK_THROWS_AS(PeriodicMesh(1.0, 1), std::invalid_argument);
  CHECK_THROWS_AS(PeriodicMesh(0.0, 4), std::invalid_argument);
  CHECK_THROWS_AS(PeriodicMesh(-1.0, 4), std::invalid_argument);
}

TEST_CASE("dof indices wrap periodically") {
  const PeriodicMesh mesh(1.0, 4);
  CHECK(mesh.dof_index(-1, 0, 0) == mesh.dof_index(3, 0, 0));
  CHECK(mesh.dof_index(4, 5, -2) == mesh.dof_index(0, 1, 2));
  std::set<std::size_t> seen;
  for (const auto& c : mesh.cells())
    for (auto d : c.dofs) {
      CHECK(d < mesh.num_dofs());
      seen.insert(d);
    }
  CHECK(seen.size() == mesh.num_dofs());
}

TEST_CASE("cells touching x = L reuse the x = 0 dofs") {
  const PeriodicMesh mesh(1.0, 3);
  for (const auto& c : mesh.cells())
    for (int v = 0; v < 4; ++v) {
      const Vec3& p = c.corners[v];
      const Vec3& q = mesh.vertex(c.dofs[v]);
      for (int d = 0; d < 3; ++d) {
        const double shift = p[d] - q[d];
        CHECK((std::abs(shift) < 1e-14 || std::abs(shift - 1.0) < 1e-14));
      }
    }
}

TEST_CASE("cells partition the domain") {
  const PeriodicMesh mesh(1.0, 3);
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    const Vec3 p = {u(rng), u(rng), u(rng)};
    int inside = 0;
    for (const auto& c : mesh.cells()) {
      const auto l = c.barycentric(p);
      if (l[0] > 1e-9 && l[1] > 1e-9 && l[2] > 1e-9 && l[3] > 1e-9) ++inside;
    }
    CHECK(inside <= 1);
    const auto found = mesh.locate(p, 1e-12);
    REQUIRE(found.has_value());
    const auto l = mesh.cell(*found).barycentric(p);
    for (double li : l) CHECK(li >= -1e-12);
  }
}

TEST_CASE("barycentric round trip") {
  const auto t = make_tetrahedron({Vec3{0, 0, 0}, Vec3{1, 0, 0}, Vec3{0, 0, 1}, Vec3{0, 1, 0}});
  CHECK(t.volume == doctest::Approx(1.0 / 6.0));
  const Vec3 p = t.map_from_reference(0.2, 0.3, 0.1);
  const auto l = t.barycentric(p);
  CHECK(l[0] == doctest::Approx(0.4));
  CHECK(l[1] == doctest::Approx(0.2));
  CHECK(l[2] == doctest::Approx(0.3));
  CHECK(l[3] == doctest::Approx(0.1));
  CHECK_THROWS_AS(make_tetrahedron({Vec3{0, 0, 0}, Vec3{1, 0, 0}, Vec3{2, 0, 0}, Vec3{0, 1, 0}}),
                  std::invalid_argument);
}

TEST_CASE("mesh size h is the largest cell diameter") {
  const PeriodicMesh mesh(2.0, 4);
  CHECK(mesh.h() == doctest::Approx(0.5 * std::sqrt(3.0)));
  std::ostringstream os;
  write_mesh(os, mesh);
  CHECK(!os.str().empty());
}
