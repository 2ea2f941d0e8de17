#include "bec1d/quadrature.hpp"

#include <cmath>
#include <stdexcept>

#include "bec1d/params.hpp"

namespace bec1d {

QuadratureRule gauss_legendre(int order) {
  if (order < 1) throw std::invalid_argument("quadrature order must be >= 1");
  QuadratureRule rule;
  rule.nodes.resize(order);
  rule.weights.resize(order);
  for (int i = 0; i < (order + 1) / 2; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (order + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int n = 2; n <= order; ++n) {
        const double p2 = ((2.0 * n - 1.0) * x * p1 - (n - 1.0) * p0) / n;
        p0 = p1;
        p1 = p2;
      }
      dp = order * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    rule.nodes[i] = -x;
    rule.nodes[order - 1 - i] = x;
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.weights[i] = rule.weights[order - 1 - i] = w;
  }
  return rule;
}

QuadratureRule composite_gauss_legendre(double a, double b, int panels,
                                        int order) {
  const QuadratureRule base = gauss_legendre(order);
  QuadratureRule rule;
  rule.nodes.reserve(static_cast<size_t>(panels) * order);
  rule.weights.reserve(static_cast<size_t>(panels) * order);
  const double width = (b - a) / panels;
  for (int p = 0; p < panels; ++p) {
    const double mid = a + (p + 0.5) * width;
    for (int j = 0; j < order; ++j) {
      rule.nodes.push_back(mid + 0.5 * width * base.nodes[j]);
      rule.weights.push_back(0.5 * width * base.weights[j]);
    }
  }
  return rule;
}

}  // namespace bec1d
