#pragma once

#include <array>
#include <cmath>
#include <complex>

#include "bec1d/params.hpp"

namespace bec1d {

struct Permittivity {
  Complex epsilon{1.0, 0.0};
  Complex sqrt_epsilon{1.0, 0.0};
  double detuning = 0.0;
  double density = 0.0;
};

// Lorentz-Lorenz shift 4 pi n0 d0^2 / (3 hbar) = pi * n0 in units of gamma.
double lorentz_shift(double density);

// Roots of the monic cubic x^3 + a2 x^2 + a1 x + a0 (Cardano, then Newton
// polish against the original coefficients).
template <typename Scalar>
std::array<std::complex<Scalar>, 3> cubic_roots(std::complex<Scalar> a2,
                                                std::complex<Scalar> a1,
                                                std::complex<Scalar> a0) {
  using C = std::complex<Scalar>;
  const C third(Scalar(1) / Scalar(3), 0);
  const C p = a1 - a2 * a2 * third;
  const C q = Scalar(2) * a2 * a2 * a2 / Scalar(27) - a2 * a1 * third + a0;
  const C disc = std::sqrt(q * q / Scalar(4) + p * p * p / Scalar(27));
  C u3 = -q / Scalar(2) + disc;
  const C u3_alt = -q / Scalar(2) - disc;
  if (std::abs(u3_alt) > std::abs(u3)) u3 = u3_alt;
  const C u = std::pow(u3, third);
  const C omega(Scalar(-0.5), std::sqrt(Scalar(3)) / Scalar(2));

  auto f = [&](C x) { return ((x + a2) * x + a1) * x + a0; };
  auto df = [&](C x) { return (Scalar(3) * x + Scalar(2) * a2) * x + a1; };

  std::array<C, 3> roots;
  C w(1, 0);
  for (int k = 0; k < 3; ++k, w *= omega) {
    C t(0, 0);
    if (std::abs(u) > Scalar(0)) t = w * u - p / (Scalar(3) * w * u);
    C x = t - a2 * third;
    for (int it = 0; it < 4; ++it) {
      const C d = df(x);
      if (std::abs(d) == Scalar(0)) break;
      const C next = x - f(x) / d;
      if (!(std::abs(f(next)) < std::abs(f(x)))) break;
      x = next;
    }
    roots[k] = x;
  }
  return roots;
}

// All three roots x = sqrt(eps) of
//   (i/2) x^3 + (D + b) x^2 - (i/2) x - (D - 2b) = 0,
// D the detuning seen by the medium and b the Lorentz-Lorenz shift.
std::array<Complex, 3> permittivity_cubic_roots(double detuning,
                                                double density);

// The physical permittivity. The medium sees the frequency displaced by the
// chemical potential: eps is evaluated at D = detuning + mu_c, so
// solve_epsilon(d, n, mu) == solve_epsilon(d + mu, n, 0).
// Physical root: the one reached by continuing from eps = 1 at large
// imaginary frequency (causality). Outside the evanescent band this is the
// root with Re x > 0; inside it (n0 above about 0.09, where all three roots
// are imaginary and eps is real and negative) it is the middle root.
Permittivity solve_epsilon(double detuning, double density, double mu_c = 0.0);

// |lhs - rhs| / max(|lhs|, |rhs|, 1) of the self-consistency relation
// eps = (D - 2b + i sqrt(eps)/2) / (D + b + i sqrt(eps)/2) in cross-multiplied
// form.
double permittivity_residual(const Permittivity& eps, double mu_c = 0.0);

}  // namespace bec1d
