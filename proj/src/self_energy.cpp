#include "bec1d/self_energy.hpp"

#include <cmath>
#include <vector>

#include "bec1d/special.hpp"

namespace bec1d {

namespace {

// Distance from the light-line poles below which the split forms lose
// accuracy to cancellation.
constexpr double kPoleGap = 0.5;

double pole_distance(double x, double q) {
  return std::min(std::abs(x - q), std::abs(x + q));
}

// Pieces of the inner integral
//   int exp(i beta z' + i q |z - z'|) dz'
//     = local(beta) exp(i beta z) + X(beta) exp(i q z) + Y(beta) exp(-i q z)
// valid when beta is away from +-q.
struct SplitFactors {
  Complex local, X, Y;
  Complex E_plus, E_minus;  // E(beta + q), E(beta - q), used transposed
};

SplitFactors split_factors(double beta, double q, double h) {
  SplitFactors f;
  f.local = 2.0 * kI * q / ((q - beta) * (q + beta));
  f.X = kI * std::exp(-kI * ((beta - q) * h)) / (beta - q);
  f.Y = -kI * std::exp(kI * ((beta + q) * h)) / (beta + q);
  f.E_plus = segment_integral(beta + q, h);
  f.E_minus = segment_integral(beta - q, h);
  return f;
}

Complex exact_double_integral(double alpha, double beta, double q, double h) {
  return ordered_pair_integral(alpha + q, beta - q, h) +
         ordered_pair_integral(beta + q, alpha - q, h);
}

}  // namespace

Complex kernel_strength(double q) {
  return -2.0 * kPi * kI * q * kDipoleSquared;
}

Complex kernel_double_integral(double alpha, double beta, double q,
                               double half) {
  // The integral is symmetric in (alpha, beta).
  if (pole_distance(alpha, q) > pole_distance(beta, q)) std::swap(alpha, beta);
  if (pole_distance(beta, q) >= kPoleGap) {
    const SplitFactors f = split_factors(beta, q, half);
    return f.local * segment_integral(alpha + beta, half) +
           f.X * segment_integral(alpha + q, half) +
           f.Y * segment_integral(alpha - q, half);
  }
  return exact_double_integral(alpha, beta, q, half);
}

Complex self_energy_element(const OrderParameterProfile& profile, double k_row,
                            double k_col, double q) {
  Complex sum = 0.0;
  for (const auto& a : profile.components())
    for (const auto& b : profile.components())
      sum += a.amplitude * std::conj(b.amplitude) *
             kernel_double_integral(a.wavenumber - k_row, k_col - b.wavenumber,
                                    q, profile.half_length());
  return kernel_strength(q) * sum / profile.length();
}

SelfEnergyMatrix self_energy(const OrderParameterProfile& profile,
                             const FourierGrid& grid, double q,
                             double detuning) {
  const Eigen::Index n = grid.size();
  const double h = profile.half_length();
  SelfEnergyMatrix out;
  out.detuning = detuning;
  out.profile = profile.kind();
  out.sigma = Eigen::MatrixXcd::Zero(n, n);

  std::vector<SplitFactors> rows(n), cols(n);
  std::vector<char> row_far(n), col_far(n);
  std::vector<Complex> toeplitz(2 * n - 1);

  for (const auto& a : profile.components()) {
    for (const auto& b : profile.components()) {
      const Complex weight = a.amplitude * std::conj(b.amplitude);
      if (weight == Complex(0.0, 0.0)) continue;
      for (Eigen::Index i = 0; i < n; ++i) {
        const double k = grid.wavenumber(grid.mode(i));
        const double alpha = a.wavenumber - k;
        const double beta = k - b.wavenumber;
        row_far[i] = pole_distance(alpha, q) >= kPoleGap;
        col_far[i] = pole_distance(beta, q) >= kPoleGap;
        if (row_far[i]) {
          rows[i] = split_factors(alpha, q, h);
        } else {
          rows[i].E_plus = segment_integral(alpha + q, h);
          rows[i].E_minus = segment_integral(alpha - q, h);
        }
        if (col_far[i]) {
          cols[i] = split_factors(beta, q, h);
        } else {
          cols[i].E_plus = segment_integral(beta + q, h);
          cols[i].E_minus = segment_integral(beta - q, h);
        }
      }
      // alpha + beta = kappa_a - kappa_b + k_{s-t}
      for (Eigen::Index m = 0; m < 2 * n - 1; ++m)
        toeplitz[m] = segment_integral(
            a.wavenumber - b.wavenumber +
                grid.wavenumber(static_cast<int>(m - (n - 1))),
            h);

      for (Eigen::Index s = 0; s < n; ++s) {
        const SplitFactors& c = cols[s];
        for (Eigen::Index t = 0; t < n; ++t) {
          const SplitFactors& r = rows[t];
          const Complex e_sum = toeplitz[s - t + n - 1];
          Complex value;
          if (col_far[s]) {
            value = c.local * e_sum + c.X * r.E_plus + c.Y * r.E_minus;
          } else if (row_far[t]) {
            value = r.local * e_sum + r.X * c.E_plus + r.Y * c.E_minus;
          } else {
            value = exact_double_integral(
                a.wavenumber - grid.wavenumber(grid.mode(t)),
                grid.wavenumber(grid.mode(s)) - b.wavenumber, q, h);
          }
          out.sigma(t, s) += weight * value;
        }
      }
    }
  }
  out.sigma *= kernel_strength(q) / profile.length();
  return out;
}

}  // namespace bec1d
