#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <limits>

// Exponential integrals over a segment and divided differences of exp(ix),
// written so that nearly coincident arguments do not cancel.

namespace bec1d {

template <typename Scalar>
Scalar sinc(Scalar x) {
  using std::abs;
  using std::sin;
  if (abs(x) < Scalar(1e-4)) {
    const Scalar x2 = x * x;
    return Scalar(1) - x2 / Scalar(6) + x2 * x2 / Scalar(120);
  }
  return sin(x) / x;
}

// int_{-half}^{half} exp(i x z) dz
template <typename Scalar>
Scalar segment_integral(Scalar x, Scalar half) {
  return Scalar(2) * half * sinc(x * half);
}

// f[x0, x1] for f(x) = exp(i x).
template <typename Scalar>
std::complex<Scalar> exp_divided_difference(Scalar x0, Scalar x1) {
  using std::exp;
  const std::complex<Scalar> i(0, 1);
  const Scalar mid = (x0 + x1) / Scalar(2);
  return i * exp(i * mid) * sinc((x1 - x0) / Scalar(2));
}

// f[x0, x1, x2] for f(x) = exp(i x). Clustered nodes use the Taylor series
// about the centre in complete homogeneous symmetric polynomials.
template <typename Scalar>
std::complex<Scalar> exp_divided_difference(Scalar x0, Scalar x1, Scalar x2) {
  using std::abs;
  using std::exp;
  std::array<Scalar, 3> x{x0, x1, x2};
  std::sort(x.begin(), x.end());
  const Scalar spread = x[2] - x[0];
  if (spread >= Scalar(1)) {
    return (exp_divided_difference(x[1], x[2]) -
            exp_divided_difference(x[0], x[1])) /
           spread;
  }
  const std::complex<Scalar> i(0, 1);
  const Scalar c = (x[0] + x[2]) / Scalar(2);
  const Scalar y0 = x[0] - c, y1 = x[1] - c, y2 = x[2] - c;
  Scalar y2_pow = 1, h12 = 1, h012 = 1;
  std::complex<Scalar> coeff(Scalar(-0.5), 0);  // i^2 / 2!
  std::complex<Scalar> sum = coeff;
  const Scalar eps = std::numeric_limits<Scalar>::epsilon();
  for (int m = 1; m < 60; ++m) {
    y2_pow *= y2;
    h12 = y2_pow + y1 * h12;
    h012 = h12 + y0 * h012;
    coeff *= i / Scalar(m + 2);
    const std::complex<Scalar> term = coeff * h012;
    sum += term;
    if (abs(term) <= eps * abs(sum) && m > 2) break;
  }
  return exp(i * c) * sum;
}

// int_{-h}^{h} dz exp(i a z) int_{-h}^{z} dz' exp(i b z')
template <typename Scalar>
std::complex<Scalar> ordered_pair_integral(Scalar a, Scalar b, Scalar half) {
  using std::exp;
  const std::complex<Scalar> i(0, 1);
  const Scalar len = Scalar(2) * half;
  const std::complex<Scalar> p =
      -exp_divided_difference(Scalar(0), a * len, (a + b) * len);
  return exp(-i * (a + b) * half) * len * len * p;
}

}  // namespace bec1d
