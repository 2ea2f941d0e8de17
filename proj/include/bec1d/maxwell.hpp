#pragma once

#include "bec1d/params.hpp"
#include "bec1d/permittivity.hpp"
#include "bec1d/profile.hpp"

namespace bec1d {

struct SlabResponse {
  double detuning = 0.0;
  double T = 1.0;
  double R = 0.0;
  Complex psi{0.0, 0.0};  // L sqrt(eps) omega/c
};

// Homogeneous slab of permittivity eps in vacuum at normal incidence.
SlabResponse maxwell_slab(double detuning, const SimulationParams& params,
                          const Permittivity& eps);

// Same slab via 2x2 interface and propagation matrices.
SlabResponse transfer_matrix_slab(double detuning,
                                  const SimulationParams& params,
                                  const Permittivity& eps);

// Forward-wave-only transmission through an inhomogeneous profile:
// t = exp(i q int (sqrt(eps(z)) - 1) dz), sqrt expanded to the given order in
// eps - 1. Reflection is zero in this approximation.
SlabResponse forward_only_slab(double detuning, const SimulationParams& params,
                               const OrderParameterProfile& profile,
                               int order = 1);

}  // namespace bec1d
