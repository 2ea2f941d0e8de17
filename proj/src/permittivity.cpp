#include "bec1d/permittivity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace bec1d {

double lorentz_shift(double density) {
  if (!(density >= 0.0)) throw InvalidParameter("density must be >= 0");
  return 4.0 * kPi * density * kDipoleSquared / 3.0;
}

std::array<Complex, 3> permittivity_cubic_roots(double detuning,
                                                double density) {
  const double b = lorentz_shift(density);
  // Divide through by i/2.
  const Complex a2 = -2.0 * kI * (detuning + b);
  const Complex a1 = -1.0;
  const Complex a0 = 2.0 * kI * (detuning - 2.0 * b);
  return cubic_roots<double>(a2, a1, a0);
}

Permittivity solve_epsilon(double detuning, double density, double mu_c) {
  if (!std::isfinite(detuning)) throw InvalidParameter("detuning not finite");
  Permittivity out;
  out.detuning = detuning;
  out.density = density;
  if (density == 0.0) {
    lorentz_shift(density);
    return out;
  }
  const double shifted = detuning + mu_c;
  const double b = lorentz_shift(density);
  // With x = i y the cubic has real coefficients:
  //   y^3 + A y^2 + B y + C = 0, A = -2(D + b), B = 1, C = -2(D - 2b).
  const double A = -2.0 * (shifted + b), B = 1.0, C = -2.0 * (shifted - 2.0 * b);
  const double disc = 18.0 * A * B * C - 4.0 * A * A * A * C + A * A * B * B -
                      4.0 * B * B * B - 27.0 * C * C;
  const auto roots = permittivity_cubic_roots(shifted, density);
  if (disc > 0.0) {
    // Evanescent band: every root is imaginary and eps is real, negative.
    // The causal root is the middle one.
    std::array<double, 3> y{roots[0].imag(), roots[1].imag(), roots[2].imag()};
    std::sort(y.begin(), y.end());
    double v = y[1];
    for (int it = 0; it < 3; ++it) {
      const double f = ((v + A) * v + B) * v + C;
      const double df = (3.0 * v + 2.0 * A) * v + B;
      if (df == 0.0) break;
      v -= f / df;
    }
    out.sqrt_epsilon = {0.0, v};
  } else {
    // One root on the imaginary axis and a pair mirrored through it; the
    // physical root is the pair member with Re x > 0.
    int pi = 0, pj = 1;
    double mirror = std::numeric_limits<double>::infinity();
    for (int i = 0; i < 3; ++i)
      for (int j = i + 1; j < 3; ++j)
        if (const double m = std::abs(roots[i] + std::conj(roots[j]));
            m < mirror) {
          mirror = m;
          pi = i;
          pj = j;
        }
    out.sqrt_epsilon =
        roots[pi].real() >= roots[pj].real() ? roots[pi] : roots[pj];
    if (!(out.sqrt_epsilon.real() > 0.0))
      throw std::runtime_error(
          "no propagating root of the permittivity equation at detuning " +
          std::to_string(detuning));
  }
  out.epsilon = out.sqrt_epsilon * out.sqrt_epsilon;
  return out;
}

double permittivity_residual(const Permittivity& eps, double mu_c) {
  const double d = eps.detuning + mu_c;
  const double b = lorentz_shift(eps.density);
  const Complex half = 0.5 * kI * eps.sqrt_epsilon;
  const Complex rhs = (d - 2.0 * b + half) / (d + b + half);
  return std::abs(eps.epsilon - rhs) / std::max(std::abs(eps.epsilon), 1e-300);
}

}  // namespace bec1d
