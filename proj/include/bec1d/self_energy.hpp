#pragma once

#include <Eigen/Dense>

#include "bec1d/fourier.hpp"
#include "bec1d/profile.hpp"

namespace bec1d {

struct SelfEnergyMatrix {
  Eigen::MatrixXcd sigma;
  double detuning = 0.0;
  ProfileKind profile = ProfileKind::Uniform;
};

// -2 pi i q d0^2/hbar: strength of K(z,z') = C Xi(z) Xi*(z') exp(iq|z-z'|).
Complex kernel_strength(double q);

// int int over the slab exp(i alpha z + i beta z' + i q |z - z'|) dz dz'.
// Picks a cancellation-free form depending on how close alpha and beta are to
// the light-line poles +-q.
Complex kernel_double_integral(double alpha, double beta, double q,
                               double half);

// Sigma_ts = (1/L) int int exp(-i k_t z + i k_s z') K(z, z') dz dz'.
Complex self_energy_element(const OrderParameterProfile& profile, double k_row,
                            double k_col, double q);

SelfEnergyMatrix self_energy(const OrderParameterProfile& profile,
                             const FourierGrid& grid, double q,
                             double detuning);

}  // namespace bec1d
