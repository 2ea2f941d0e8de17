#pragma once

#include <vector>

namespace bec1d {

struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

// Gauss-Legendre rule on [-1, 1].
QuadratureRule gauss_legendre(int order);

// Composite Gauss-Legendre on [a, b] with the given number of panels.
QuadratureRule composite_gauss_legendre(double a, double b, int panels,
                                        int order);

}  // namespace bec1d
