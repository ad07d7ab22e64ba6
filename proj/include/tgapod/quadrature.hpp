#pragma once

#include <array>
#include <span>
#include <vector>

namespace tgapod {

/// Quadrature node on the reference tetrahedron. `bary` holds (λ1, λ2, λ3);
/// weights are fractions of the cell volume and sum to one.
struct QuadraturePoint {
  std::array<double, 3> bary;
  double weight;
};

/// Symmetric 4-point rule, exact for polynomials of degree 2.
std::span<const QuadraturePoint> tet_rule_degree2();

/// Collapsed (Duffy) tensor Gauss-Legendre rule with q points per axis,
/// exact for polynomials of degree 2q - 3 on the tetrahedron.
std::vector<QuadraturePoint> tet_rule_collapsed(int q);

/// Gauss-Legendre nodes and weights on [0, 1].
void gauss_legendre_unit(int q, std::vector<double>& nodes, std::vector<double>& weights);

}  // namespace tgapod
