#include "bec1d/dispersion.hpp"

#include <cmath>
#include <limits>

#include "bec1d/permittivity.hpp"

namespace bec1d {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// 1/G_perp written with q^2 - p^2 supplied separately, so callers near the
// light line can pass it without cancellation.
Complex perp_denominator(double p, double detuning, double q,
                         double q2_minus_p2, double b, Complex sqrt_eps,
                         double recoil) {
  const Complex base = detuning - recoil * p * p + b + 0.5 * kI * sqrt_eps;
  return base - 3.0 * b * q * q / q2_minus_p2;
}

double bulk_wavenumber(double detuning, const SimulationParams& params) {
  return 1.0 + detuning / params.resonance_ratio;
}

}  // namespace

BulkPropagator bulk_propagator(double p, double detuning, double density,
                               const SimulationParams& params) {
  BulkPropagator out;
  out.p = p;
  out.detuning = detuning;
  const double b = lorentz_shift(density);
  const Complex x = solve_epsilon(detuning, density).sqrt_epsilon;
  const double q = bulk_wavenumber(detuning, params);
  const double kinetic = params.recoil * p * p;

  const Complex den_par = detuning - kinetic - 2.0 * b + 0.5 * kI * x;
  if (den_par == Complex(0.0, 0.0)) {
    out.parallel_at_pole = true;
    out.G_parallel = {kInf, 0.0};
  } else {
    out.G_parallel = 1.0 / den_par;
  }

  const double gap = (q - p) * (q + p);
  if (gap == 0.0 && b != 0.0) {
    // The photon-coupling term diverges: the propagator vanishes.
    out.G_perp = 0.0;
    return out;
  }
  const Complex den_perp =
      b == 0.0 ? detuning - kinetic + 0.5 * kI * x
               : perp_denominator(p, detuning, q, gap, b, x, params.recoil);
  if (den_perp == Complex(0.0, 0.0)) {
    out.perp_at_pole = true;
    out.G_perp = {kInf, 0.0};
  } else {
    out.G_perp = 1.0 / den_perp;
  }
  return out;
}

Complex transverse_photon_pole(double detuning, double density,
                               const SimulationParams& params) {
  const double b = lorentz_shift(density);
  const Permittivity eps = solve_epsilon(detuning, density);
  const double q = bulk_wavenumber(detuning, params);
  const double r = params.recoil;
  const Complex bulk_eps = q * q * eps.epsilon;
  if (r == 0.0) return q * eps.sqrt_epsilon;
  // r P^2 - (D' + r q^2) P + q^2 (D' - 3b) = 0 in P = p^2.
  const Complex dp = detuning + b + 0.5 * kI * eps.sqrt_epsilon;
  const Complex B = -(dp + r * q * q);
  const Complex C = q * q * (dp - 3.0 * b);
  const Complex disc = std::sqrt(B * B - 4.0 * r * C);
  // Stable pair of roots.
  const Complex t =
      -0.5 * (B + (std::real(std::conj(B) * disc) >= 0.0 ? disc : -disc));
  const Complex P1 = t / r;
  const Complex P2 = C / t;
  const Complex P = std::abs(P1 - bulk_eps) < std::abs(P2 - bulk_eps) ? P1 : P2;
  Complex p = std::sqrt(P);
  if (p.imag() < 0.0) p = -p;
  return p;
}

double photon_branch_detuning(double p, double density,
                              const SimulationParams& params) {
  const double b = lorentz_shift(density);
  const double ratio = params.resonance_ratio;
  const double light = ratio * (p - 1.0);
  if (b == 0.0) return light;
  // The branch sits on the side of the light line away from the atomic
  // resonance. With delta = side * t, f(t) = side * Re(1/G_perp) runs from
  // -inf at t -> 0+ to +inf.
  const double side = light + b >= 0.0 ? 1.0 : -1.0;
  auto f = [&](double t) {
    const double delta = side * t;
    const double detuning = light + delta;
    const double q = p + delta / ratio;
    const double gap = (delta / ratio) * (q + p);
    const Complex x = solve_epsilon(detuning, density).sqrt_epsilon;
    return side *
           perp_denominator(p, detuning, q, gap, b, x, params.recoil).real();
  };
  double lo = 1e-12, hi = 1.0;
  while (f(lo) > 0.0 && lo > 1e-300) lo *= 1e-3;
  int guard = 0;
  while (f(hi) < 0.0 && guard++ < 200) hi *= 2.0;
  for (int it = 0; it < 200 && hi - lo > 1e-13 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    (f(mid) < 0.0 ? lo : hi) = mid;
  }
  return light + side * 0.5 * (lo + hi);
}

double atomic_branch_detuning(double p, double density,
                              const SimulationParams& params) {
  auto magnitude = [&](double d) {
    return std::abs(bulk_propagator(p, d, density, params).G_perp);
  };
  const double lo = -20.0, hi = 20.0, step = 0.01;
  double best = lo, best_value = -1.0;
  for (double d = lo; d <= hi + 1e-12; d += step) {
    const double v = magnitude(d);
    if (v > best_value) best_value = v, best = d;
  }
  // Golden-section refinement around the grid maximum.
  double a = std::max(lo, best - step), c = std::min(hi, best + step);
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  for (int it = 0; it < 80; ++it) {
    const double x1 = c - g * (c - a), x2 = a + g * (c - a);
    if (magnitude(x1) > magnitude(x2))
      c = x2;
    else
      a = x1;
  }
  return 0.5 * (a + c);
}

}  // namespace bec1d
