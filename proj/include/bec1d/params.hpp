#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace bec1d {

using Complex = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr Complex kI{0.0, 1.0};

// d0^2/hbar for a J=0 -> J=1 line, in units of gamma / k0^3 (gamma = k0 = 1).
inline constexpr double kDipoleSquared = 0.75;

class InvalidParameter : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Dimensionless configuration. Frequencies in gamma, lengths in lambda0 at the
// interface, wavenumbers in k0. Internally all solvers work with lengths in
// 1/k0, so a slab of depth L (lambda0) spans 2*pi*L.
struct SimulationParams {
  double density = 0.05;          // n0 * (1/k0)^3
  double slab_depth = 10.0;       // lambda0
  double gamma = 1.0;             // frequency unit, must stay 1
  double mu_c = 0.0;              // hbar*gamma
  double recoil = 1e-3;           // hbar k0^2 / (2 m_A), gamma
  double resonance_ratio = 1e8;   // omega0 / gamma
  double delta_q = 0.5;           // k0, split profile only

  double length() const { return 2.0 * kPi * slab_depth; }
};

// Throws InvalidParameter on violation.
void validate(const SimulationParams& params);

// omega/c in units of k0 for a detuning measured from the displaced
// resonance omega0 - mu_c.
double optical_wavenumber(double detuning, const SimulationParams& params);

}  // namespace bec1d
