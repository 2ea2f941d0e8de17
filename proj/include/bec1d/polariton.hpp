#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "bec1d/fourier.hpp"
#include "bec1d/params.hpp"
#include "bec1d/permittivity.hpp"
#include "bec1d/profile.hpp"
#include "bec1d/self_energy.hpp"

namespace bec1d {

class SingularSystemError : public std::runtime_error {
 public:
  SingularSystemError(const std::string& what, double detuning, int cutoff)
      : std::runtime_error(what), detuning(detuning), cutoff(cutoff) {}
  double detuning;
  int cutoff;
};

struct ScatterCoefficients {
  double T = 1.0;
  double R = 0.0;
  double L_loss = 0.0;
  Complex S_forward{1.0, 0.0};
  Complex S_backward{0.0, 0.0};
};

struct SolverOptions {
  double margin = 4.0;          // initial k_max in units of q + 2*reach
  double tol = 1e-6;            // |dT|, |dR| between successive cutoffs
  int max_doublings = 6;
  std::optional<int> cutoff;    // fixed initial cutoff instead of margin
  bool far_mode_closure = true; // exact tail for the uniform profile
};

// sqrt(eps(z)) from the local density |Xi(z)|^2. The detuning is measured
// from the displaced resonance and no further chemical-potential shift is
// applied inside eps. Holds a reference to the profile.
class LocalPermittivity {
 public:
  LocalPermittivity(const OrderParameterProfile& profile, double detuning);
  Complex sqrt_epsilon(double z) const;
  // Value on the slab for a uniform profile.
  Complex uniform_value() const { return uniform_; }

 private:
  const OrderParameterProfile& profile_;
  double detuning_;
  Complex uniform_;
};

// (1/L) int sqrt(eps(z)) exp(-i (k_t - k_s) z) dz as a Toeplitz matrix.
Eigen::MatrixXcd permittivity_fourier(const OrderParameterProfile& profile,
                                      const FourierGrid& grid,
                                      const LocalPermittivity& eps);

// Truncated operator
//   M_ts = (D - r k_t^2) delta_ts + b N_ts / n0 + (i/2) E_ts - Sigma_ts
// with N the density convolution and E the sqrt(eps) convolution.
Eigen::MatrixXcd assemble_operator(const OrderParameterProfile& profile,
                                   const FourierGrid& grid, double detuning,
                                   const SimulationParams& params,
                                   const SelfEnergyMatrix& sigma,
                                   const LocalPermittivity& eps);

struct SolveDiagnostics {
  double rcond = 1.0;
  double residual = 0.0;  // ||M G - I||_max / ||M||_max
};

// Dense LU inverse; throws SingularSystemError when the reciprocal condition
// estimate drops below 1e-12 or the residual check fails.
Eigen::MatrixXcd solve_propagator(const Eigen::MatrixXcd& M, double detuning,
                                  int cutoff,
                                  SolveDiagnostics* diagnostics = nullptr);

// Modes |s| > cutoff of a uniform slab, eliminated exactly. On the far block
// every vector that couples to the core or to the incident wave lies in the
// span of w_s = (-1)^s (1/(q - k_s), 1/(q + k_s)).
struct FarModeClosure {
  Eigen::Matrix2cd bilinear;   // w^T M_FF^{-1} w
  Eigen::MatrixX2cd coupling;  // U: M_CF = U w^T
  double source = 0.0;         // incident projection: omega_F = source * w_0
};

// Gram sums sum_{|s| > cutoff} w_i w_j / Lambda(k_s) of the far block, with
// Lambda the diagonal of the uniform operator there.
Eigen::Matrix2cd far_mode_gram(const FourierGrid& grid, double detuning,
                               double q, const SimulationParams& params,
                               Complex sqrt_epsilon);

struct PolaritonSystem {
  FourierGrid grid;
  Eigen::MatrixXcd op;          // effective core operator
  Eigen::MatrixXcd propagator;  // its inverse
  double detuning = 0.0;
  double q = 1.0;
  ProfileKind profile = ProfileKind::Uniform;
  std::optional<FarModeClosure> closure;
  SolveDiagnostics diagnostics;
};

PolaritonSystem build_system(const OrderParameterProfile& profile,
                             const FourierGrid& grid, double detuning,
                             const SimulationParams& params,
                             bool far_mode_closure = true);

ScatterCoefficients s_matrix(const PolaritonSystem& system,
                             const OrderParameterProfile& profile,
                             const SimulationParams& params);

struct ConvergedCoefficients {
  ScatterCoefficients coefficients;
  int cutoff = 0;
  bool converged = true;
  // (cutoff, T, R) per attempted grid.
  std::vector<std::tuple<int, double, double>> history;
};

class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, ConvergedCoefficients last)
      : std::runtime_error(what), last(std::move(last)) {}
  ConvergedCoefficients last;
};

// Doubles the cutoff until T and R settle within options.tol; throws
// ConvergenceError (carrying the last attempt) otherwise.
ConvergedCoefficients converge(const OrderParameterProfile& profile,
                               double detuning, const SimulationParams& params,
                               const SolverOptions& options = {});

}  // namespace bec1d
