#include "bec1d/fourier.hpp"

#include <cmath>

#include "bec1d/special.hpp"

namespace bec1d {

Eigen::VectorXd FourierGrid::wavenumbers() const {
  Eigen::VectorXd k(size());
  for (Eigen::Index i = 0; i < size(); ++i) k(i) = wavenumber(mode(i));
  return k;
}

FourierGrid make_grid(int cutoff, double length) {
  if (cutoff < 0) throw InvalidParameter("cutoff must be >= 0");
  if (!(length > 0.0)) throw InvalidParameter("grid length must be > 0");
  return FourierGrid{cutoff, length};
}

int default_cutoff(const OrderParameterProfile& profile, double q,
                   double margin) {
  const double k_max = margin * (q + 2.0 * profile.max_wavenumber());
  return static_cast<int>(std::ceil(k_max * profile.length() / (2.0 * kPi)));
}

Eigen::MatrixXcd density_fourier(const OrderParameterProfile& profile,
                                 const FourierGrid& grid) {
  const Eigen::Index n = grid.size();
  const double h = profile.half_length();
  const auto& comps = profile.components();
  // Toeplitz in m = s - t.
  Eigen::VectorXcd diag(2 * n - 1);
  for (Eigen::Index j = 0; j < 2 * n - 1; ++j) {
    const double km = grid.wavenumber(static_cast<int>(j - (n - 1)));
    Complex sum = 0.0;
    for (const auto& a : comps)
      for (const auto& b : comps)
        sum += a.amplitude * std::conj(b.amplitude) *
               segment_integral(a.wavenumber - b.wavenumber + km, h);
    diag(j) = sum / profile.length();
  }
  Eigen::MatrixXcd N(n, n);
  for (Eigen::Index s = 0; s < n; ++s)
    for (Eigen::Index t = 0; t < n; ++t) N(t, s) = diag(s - t + n - 1);
  return N;
}

}  // namespace bec1d
