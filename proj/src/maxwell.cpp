#include "bec1d/maxwell.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/Dense>

#include "bec1d/quadrature.hpp"

namespace bec1d {

namespace {

// Beyond this attenuation the trigonometric forms overflow; the Fresnel
// form is algebraically identical and bounded.
constexpr double kMaxDirectAttenuation = 300.0;

void check_eps(const Permittivity& eps) {
  if (eps.epsilon == Complex(0.0, 0.0))
    throw std::domain_error("slab permittivity is exactly zero");
}

}  // namespace

SlabResponse maxwell_slab(double detuning, const SimulationParams& params,
                          const Permittivity& eps) {
  check_eps(eps);
  const Complex n = eps.sqrt_epsilon;
  const Complex e = eps.epsilon;
  SlabResponse out;
  out.detuning = detuning;
  out.psi = params.length() * n * optical_wavenumber(detuning, params);
  const Complex psi = out.psi;

  if (std::abs(psi.imag()) < kMaxDirectAttenuation) {
    out.T = std::norm(2.0 * n /
                      (2.0 * n * std::cos(psi) - kI * (1.0 + e) * std::sin(psi)));
    if (n == Complex(1.0, 0.0)) {
      out.R = 0.0;
    } else {
      const Complex shift = std::log((1.0 - n) / (1.0 + n));
      out.R = std::norm(std::sin(psi) / std::sin(psi - kI * shift));
    }
    return out;
  }
  const Complex r = (1.0 - n) / (1.0 + n);
  const Complex phase = std::exp(2.0 * kI * psi);
  const Complex denom = 1.0 - r * r * phase;
  out.T = std::norm((1.0 - r * r) * std::exp(kI * psi) / denom);
  out.R = std::norm(r * (1.0 - phase) / denom);
  return out;
}

SlabResponse transfer_matrix_slab(double detuning,
                                  const SimulationParams& params,
                                  const Permittivity& eps) {
  check_eps(eps);
  const Complex n = eps.sqrt_epsilon;
  const double q = optical_wavenumber(detuning, params);
  const Complex phi = n * q * params.length();

  // Columns: right- and left-going amplitudes; rows: field and derivative/ik.
  auto interface = [](Complex index) {
    Eigen::Matrix2cd D;
    D << 1.0, 1.0, index, -index;
    return D;
  };
  Eigen::Matrix2cd P;
  P << std::exp(-kI * phi), 0.0, 0.0, std::exp(kI * phi);
  const Eigen::Matrix2cd D0 = interface(1.0);
  const Eigen::Matrix2cd D1 = interface(n);
  const Eigen::Matrix2cd M = D0.inverse() * D1 * P * D1.inverse() * D0;

  SlabResponse out;
  out.detuning = detuning;
  out.psi = phi;
  out.T = std::norm(1.0 / M(0, 0));
  out.R = std::norm(M(1, 0) / M(0, 0));
  return out;
}

SlabResponse forward_only_slab(double detuning, const SimulationParams& params,
                               const OrderParameterProfile& profile,
                               int order) {
  if (order < 1) throw InvalidParameter("forward-only order must be >= 1");
  const double q = optical_wavenumber(detuning, params);
  const double h = profile.half_length();
  const int panels = static_cast<int>(std::ceil(2.0 * h / 0.2));
  const QuadratureRule rule = composite_gauss_legendre(-h, h, panels, 10);

  Complex phase = 0.0;
  for (size_t j = 0; j < rule.nodes.size(); ++j) {
    const Complex x = solve_epsilon(detuning, profile.density(rule.nodes[j]))
                          .epsilon - 1.0;
    // sqrt(1 + x) - 1 = sum_{k>=1} binom(1/2, k) x^k
    Complex term = 1.0, sum = 0.0;
    double binom = 1.0;
    for (int k = 1; k <= order; ++k) {
      binom *= (0.5 - (k - 1)) / k;
      term *= x;
      sum += binom * term;
    }
    phase += rule.weights[j] * sum;
  }
  SlabResponse out;
  out.detuning = detuning;
  out.psi = q * (2.0 * h + phase);
  out.T = std::norm(std::exp(kI * q * phase));
  out.R = 0.0;
  return out;
}

}  // namespace bec1d
