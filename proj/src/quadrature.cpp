#include "tgapod/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace tgapod {

std::span<const QuadraturePoint> tet_rule_degree2() {
  static constexpr double a = 0.58541019662496845446;
  static constexpr double b = 0.13819660112501051518;
  static constexpr std::array<QuadraturePoint, 4> rule = {{
      {{b, b, b}, 0.25},
      {{a, b, b}, 0.25},
      {{b, a, b}, 0.25},
      {{b, b, a}, 0.25},
  }};
  return rule;
}

void gauss_legendre_unit(int q, std::vector<double>& nodes, std::vector<double>& weights) {
  if (q < 1) throw std::invalid_argument("gauss_legendre_unit: need at least one point");
  nodes.assign(static_cast<std::size_t>(q), 0.0);
  weights.assign(static_cast<std::size_t>(q), 0.0);
  for (int i = 0; i < q; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (q + 0.5));
    double dp = 1.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= q; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = q * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    nodes[static_cast<std::size_t>(i)] = 0.5 * (1.0 - x);
    weights[static_cast<std::size_t>(i)] = 1.0 / ((1.0 - x * x) * dp * dp);
  }
}

std::vector<QuadraturePoint> tet_rule_collapsed(int q) {
  std::vector<double> x, w;
  gauss_legendre_unit(q, x, w);
  std::vector<QuadraturePoint> rule;
  rule.reserve(static_cast<std::size_t>(q * q * q));
  for (int i = 0; i < q; ++i) {
    for (int j = 0; j < q; ++j) {
      for (int k = 0; k < q; ++k) {
        const double u = x[i], v = x[j], s = x[k];
        const double l1 = u;
        const double l2 = (1.0 - u) * v;
        const double l3 = (1.0 - u) * (1.0 - v) * s;
        // reference volume is 1/6, Jacobian (1-u)^2 (1-v)
        const double wt = 6.0 * w[i] * w[j] * w[k] * (1.0 - u) * (1.0 - u) * (1.0 - v);
        rule.push_back({{l1, l2, l3}, wt});
      }
    }
  }
  return rule;
}

}  // namespace tgapod
