#pragma once

#include "bec1d/params.hpp"

namespace bec1d {

struct BulkPropagator {
  double p = 0.0;         // hbar k0
  double detuning = 0.0;  // gamma
  Complex G_parallel{0.0, 0.0};
  Complex G_perp{0.0, 0.0};
  bool parallel_at_pole = false;  // exact zero denominator; value is inf
  bool perp_at_pole = false;
};

// Longitudinal and transverse polariton propagators of the infinite medium.
// mu_c is ignored.
BulkPropagator bulk_propagator(double p, double detuning, double density,
                               const SimulationParams& params);

// Photon-like transverse pole in momentum at fixed detuning (complex p with
// Im p >= 0). Equals q sqrt(eps) without recoil.
Complex transverse_photon_pole(double detuning, double density,
                               const SimulationParams& params);

// Detuning of the photon-like branch at momentum p: zero of Re(1/G_perp)
// next to the light line ratio * (p - 1).
double photon_branch_detuning(double p, double density,
                              const SimulationParams& params);

// Detuning of the atom-like branch at momentum p: maximum of |G_perp| in the
// window [-20, 20] gamma away from the light line.
double atomic_branch_detuning(double p, double density,
                              const SimulationParams& params);

}  // namespace bec1d
