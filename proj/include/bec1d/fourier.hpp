#pragma once

#include <Eigen/Dense>

#include "bec1d/profile.hpp"

namespace bec1d {

// Modes s = -cutoff..cutoff with k_s = 2 pi s / length. Storage index of
// mode s is s + cutoff.
struct FourierGrid {
  int cutoff = 0;
  double length = 1.0;

  Eigen::Index size() const { return 2 * cutoff + 1; }
  Eigen::Index index(int mode) const { return mode + cutoff; }
  int mode(Eigen::Index i) const { return static_cast<int>(i) - cutoff; }
  double wavenumber(int mode) const { return 2.0 * kPi * mode / length; }
  double max_wavenumber() const { return wavenumber(cutoff); }
  Eigen::VectorXd wavenumbers() const;
};

FourierGrid make_grid(int cutoff, double length);

// Smallest cutoff with k_max >= margin * (q + 2 * bragg_reach).
int default_cutoff(const OrderParameterProfile& profile, double q,
                   double margin = 4.0);

// N_ts = (1/L) int |Xi|^2 exp(-i (k_t - k_s) z) dz, closed form.
Eigen::MatrixXcd density_fourier(const OrderParameterProfile& profile,
                                 const FourierGrid& grid);

}  // namespace bec1d
