#include "bec1d/params.hpp"

#include <cmath>

namespace bec1d {

namespace {

void require(bool ok, const std::string& message) {
  if (!ok) throw InvalidParameter(message);
}

}  // namespace

void validate(const SimulationParams& p) {
  require(std::isfinite(p.density) && p.density >= 0.0,
          "density must be finite and >= 0");
  require(std::isfinite(p.slab_depth) && p.slab_depth > 0.0,
          "slab_depth must be > 0");
  require(p.gamma == 1.0, "gamma is the frequency unit and must be 1");
  require(std::isfinite(p.recoil) && p.recoil >= 0.0 && p.recoil <= 0.1,
          "recoil must lie in [0, 0.1] gamma");
  require(std::isfinite(p.mu_c) && p.mu_c >= 0.0 && p.mu_c <= p.recoil,
          "mu_c must lie in [0, recoil]");
  require(std::isfinite(p.resonance_ratio) && p.resonance_ratio >= 1e3,
          "resonance_ratio must be >= 1e3");
  require(std::isfinite(p.delta_q) && p.delta_q >= 0.0,
          "delta_q must be >= 0");
}

double optical_wavenumber(double detuning, const SimulationParams& p) {
  // omega = omega0 - mu_c + detuning, all over omega0.
  return 1.0 + (detuning - p.mu_c) / p.resonance_ratio;
}

}  // namespace bec1d
