#include "bec1d/polariton.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "bec1d/quadrature.hpp"
#include "bec1d/special.hpp"

namespace bec1d {

namespace {

// Far-mode sums are carried explicitly up to this wavenumber (k0) before the
// integral tail takes over.
constexpr double kExplicitFarWavenumber = 1000.0;
constexpr long kMaxExplicitFarModes = 4'000'000;

// Eliminated modes must stay clear of the light line.
constexpr double kClosureGap = 0.25;

std::string describe(const char* what, double detuning, int cutoff) {
  std::ostringstream os;
  os << what << " (detuning " << detuning << ", cutoff " << cutoff << ")";
  return os.str();
}

// Composite Gauss-Legendre panel width small enough for the highest
// Toeplitz harmonic and for the spatial structure of eps(z).
QuadratureRule slab_rule(double half, double k_max) {
  const double width = std::min(0.25, 3.0 / std::max(k_max, 1e-3));
  const int panels = static_cast<int>(std::ceil(2.0 * half / width));
  return composite_gauss_legendre(-half, half, panels, 10);
}

Eigen::VectorXcd window_vector(const OrderParameterProfile& profile,
                               const FourierGrid& grid, double k) {
  // W(k - k_s) = int Xi(z) exp(i (k - k_s) z) dz
  Eigen::VectorXcd w(grid.size());
  for (Eigen::Index i = 0; i < grid.size(); ++i)
    w(i) = profile.window_transform(k - grid.wavenumber(grid.mode(i)));
  return w;
}

struct CoreProblem {
  Eigen::MatrixXcd op;
  std::optional<FarModeClosure> closure;
  double q = 1.0;
};

CoreProblem build_core(const OrderParameterProfile& profile,
                       const FourierGrid& grid, double detuning,
                       const SimulationParams& params, bool far_mode_closure) {
  if (std::abs(grid.length - profile.length()) > 1e-12 * profile.length())
    throw InvalidParameter("grid and profile lengths differ");
  CoreProblem core;
  core.q = optical_wavenumber(detuning, params);
  const LocalPermittivity eps(profile, detuning);
  const SelfEnergyMatrix sigma = self_energy(profile, grid, core.q, detuning);
  core.op = assemble_operator(profile, grid, detuning, params, sigma, eps);

  if (!far_mode_closure || profile.kind() != ProfileKind::Uniform ||
      params.density == 0.0)
    return core;
  if (grid.wavenumber(grid.cutoff + 1) < core.q + kClosureGap)
    throw InvalidParameter(
        describe("cutoff too small for the far-mode closure", detuning,
                 grid.cutoff));

  const double q = core.q;
  const double h = profile.half_length();
  const double n0 = params.density;
  const Complex cn = kernel_strength(q) * n0 / profile.length();
  const double sin_qh = std::sin(q * h);
  const Complex phase = std::exp(kI * (q * h));

  // Far block: M_FF = Lambda + beta0 w w^T.
  const Complex beta0 = cn * 2.0 * kI * sin_qh * phase;
  const Eigen::Matrix2cd gram =
      far_mode_gram(grid, detuning, q, params, eps.uniform_value());
  const Eigen::Matrix2cd bilinear =
      gram * (Eigen::Matrix2cd::Identity() + beta0 * gram).inverse();

  FarModeClosure closure;
  closure.bilinear = 0.5 * (bilinear + bilinear.transpose());
  closure.coupling.resize(grid.size(), 2);
  for (Eigen::Index i = 0; i < grid.size(); ++i) {
    const double k = grid.wavenumber(grid.mode(i));
    closure.coupling(i, 0) = cn * kI * phase * segment_integral(q - k, h);
    closure.coupling(i, 1) = cn * kI * phase * segment_integral(q + k, h);
  }
  closure.source = 2.0 * std::sqrt(n0) * sin_qh;
  core.op -= closure.coupling * closure.bilinear *
             closure.coupling.transpose();
  core.closure = std::move(closure);
  return core;
}

ScatterCoefficients coefficients_from_solution(
    const CoreProblem& core, const OrderParameterProfile& profile,
    const FourierGrid& grid, const Eigen::VectorXcd& x) {
  const double q = core.q;
  const Complex pref = -kI * (1.5 * kPi * q) / profile.length();
  const Eigen::VectorXcd fwd = window_vector(profile, grid, q);
  const Eigen::VectorXcd bwd = window_vector(profile, grid, -q);
  Complex amp_f = fwd.dot(x);  // conjugates the first argument
  Complex amp_b = bwd.dot(x);
  if (core.closure) {
    const FarModeClosure& c = *core.closure;
    Eigen::Vector2cd rhs(c.source, 0.0);
    rhs -= c.coupling.transpose() * x;
    const Eigen::Vector2cd far = c.bilinear * rhs;
    amp_f += c.source * far(0);
    amp_b += c.source * far(1);
  }
  ScatterCoefficients out;
  out.S_forward = 1.0 + pref * amp_f;
  out.S_backward = pref * amp_b;
  out.T = std::norm(out.S_forward);
  out.R = std::norm(out.S_backward);
  out.L_loss = 1.0 - out.T - out.R;
  return out;
}

Eigen::VectorXcd core_source(const CoreProblem& core,
                             const OrderParameterProfile& profile,
                             const FourierGrid& grid) {
  Eigen::VectorXcd w = window_vector(profile, grid, core.q);
  if (core.closure) {
    const FarModeClosure& c = *core.closure;
    w -= c.coupling * (c.bilinear.col(0) * c.source);
  }
  return w;
}

ScatterCoefficients solve_coefficients(const OrderParameterProfile& profile,
                                       const FourierGrid& grid,
                                       double detuning,
                                       const SimulationParams& params,
                                       bool far_mode_closure) {
  const CoreProblem core =
      build_core(profile, grid, detuning, params, far_mode_closure);
  const Eigen::PartialPivLU<Eigen::MatrixXcd> lu(core.op);
  if (!(lu.rcond() >= 1e-12))
    throw SingularSystemError(
        describe("ill-conditioned polariton operator", detuning, grid.cutoff),
        detuning, grid.cutoff);
  const Eigen::VectorXcd rhs = core_source(core, profile, grid);
  const Eigen::VectorXcd x = lu.solve(rhs);
  const double scale = core.op.cwiseAbs().maxCoeff() *
                       std::max(x.cwiseAbs().maxCoeff(), 1e-300);
  if (!((core.op * x - rhs).cwiseAbs().maxCoeff() <= 1e-8 * scale))
    throw SingularSystemError(
        describe("polariton solve failed its residual check", detuning,
                 grid.cutoff),
        detuning, grid.cutoff);
  return coefficients_from_solution(core, profile, grid, x);
}

}  // namespace

LocalPermittivity::LocalPermittivity(const OrderParameterProfile& profile,
                                     double detuning)
    : profile_(profile), detuning_(detuning) {
  if (profile.kind() == ProfileKind::Uniform)
    uniform_ = solve_epsilon(detuning, profile.density(0.0)).sqrt_epsilon;
}

Complex LocalPermittivity::sqrt_epsilon(double z) const {
  return solve_epsilon(detuning_, profile_.density(z)).sqrt_epsilon;
}

Eigen::MatrixXcd permittivity_fourier(const OrderParameterProfile& profile,
                                      const FourierGrid& grid,
                                      const LocalPermittivity& eps) {
  const Eigen::Index n = grid.size();
  if (profile.kind() == ProfileKind::Uniform) {
    Eigen::MatrixXcd E = Eigen::MatrixXcd::Zero(n, n);
    E.diagonal().setConstant(eps.uniform_value());
    return E;
  }
  // f_m = (1/L) int sqrt(eps(z)) exp(-i k_m z) dz for m = -(n-1)..(n-1);
  // E_ts = f_{t-s}.
  const double h = profile.half_length();
  const double k1 = grid.wavenumber(1);
  const QuadratureRule rule = slab_rule(h, k1 * static_cast<double>(n - 1));
  Eigen::VectorXcd f = Eigen::VectorXcd::Zero(2 * n - 1);
  for (size_t j = 0; j < rule.nodes.size(); ++j) {
    const double z = rule.nodes[j];
    const Complex value = rule.weights[j] * eps.sqrt_epsilon(z);
    const Complex step = std::exp(-kI * (k1 * z));
    Complex up = value, down = value;
    f(n - 1) += value;
    for (Eigen::Index m = 1; m < n; ++m) {
      up *= step;
      down *= std::conj(step);
      f(n - 1 + m) += up;
      f(n - 1 - m) += down;
    }
  }
  f /= profile.length();
  Eigen::MatrixXcd E(n, n);
  for (Eigen::Index s = 0; s < n; ++s)
    for (Eigen::Index t = 0; t < n; ++t) E(t, s) = f(t - s + n - 1);
  return E;
}

Eigen::MatrixXcd assemble_operator(const OrderParameterProfile& profile,
                                   const FourierGrid& grid, double detuning,
                                   const SimulationParams& params,
                                   const SelfEnergyMatrix& sigma,
                                   const LocalPermittivity& eps) {
  const Eigen::Index n = grid.size();
  if (sigma.sigma.rows() != n || sigma.sigma.cols() != n)
    throw InvalidParameter("self-energy and grid sizes differ");
  // Lorentz-Lorenz shift per unit density.
  const double shift_per_density = lorentz_shift(1.0);
  Eigen::MatrixXcd M = shift_per_density * density_fourier(profile, grid) +
                       0.5 * kI * permittivity_fourier(profile, grid, eps) -
                       sigma.sigma;
  for (Eigen::Index i = 0; i < n; ++i) {
    const double k = grid.wavenumber(grid.mode(i));
    M(i, i) += detuning - params.recoil * k * k;
  }
  return M;
}

Eigen::MatrixXcd solve_propagator(const Eigen::MatrixXcd& M, double detuning,
                                  int cutoff, SolveDiagnostics* diagnostics) {
  if (M.rows() != M.cols()) throw InvalidParameter("operator is not square");
  if (!M.allFinite())
    throw SingularSystemError(
        describe("operator has non-finite entries", detuning, cutoff),
        detuning, cutoff);
  const Eigen::PartialPivLU<Eigen::MatrixXcd> lu(M);
  // NaN-safe: an exactly singular factorization yields rcond = NaN.
  const double rcond = lu.rcond();
  if (!(rcond >= 1e-12))
    throw SingularSystemError(
        describe("ill-conditioned polariton operator", detuning, cutoff),
        detuning, cutoff);
  Eigen::MatrixXcd G = lu.inverse();
  const double norm = M.cwiseAbs().maxCoeff();
  const double residual =
      (M * G - Eigen::MatrixXcd::Identity(M.rows(), M.cols()))
          .cwiseAbs()
          .maxCoeff();
  if (!(residual <= 1e-8 * norm))
    throw SingularSystemError(
        describe("propagator failed its residual check", detuning, cutoff),
        detuning, cutoff);
  if (diagnostics) {
    diagnostics->rcond = rcond;
    diagnostics->residual = residual / norm;
  }
  return G;
}

Eigen::Matrix2cd far_mode_gram(const FourierGrid& grid, double detuning,
                               double q, const SimulationParams& params,
                               Complex sqrt_epsilon) {
  const double b = lorentz_shift(params.density);
  const double r = params.recoil;
  const Complex base = detuning + b + 0.5 * kI * sqrt_epsilon;
  auto lambda = [&](double k) {
    return base - r * k * k - 3.0 * b * q * q / ((q - k) * (q + k));
  };
  Complex sums[3] = {0.0, 0.0, 0.0};
  auto add = [&](double k, double weight) {
    const double u = 1.0 / (q - k), v = 1.0 / (q + k);
    const Complex inv = weight / lambda(k);
    sums[0] += u * u * inv;
    sums[1] += u * v * inv;
    sums[2] += v * v * inv;
  };

  const double dk = grid.wavenumber(1);
  double k_explicit = std::max(kExplicitFarWavenumber, 2.0 * grid.max_wavenumber());
  if (r > 0.0) {
    // Keep the recoil shell Re Lambda = 0 inside the explicit range.
    const double shell = std::sqrt((std::abs(detuning) + 4.0 * b + 1.0) / r);
    k_explicit = std::max(k_explicit, 8.0 * shell);
  }
  const long last = std::min<long>(
      static_cast<long>(std::ceil(k_explicit / dk)),
      static_cast<long>(grid.cutoff) + kMaxExplicitFarModes);
  // Smallest terms first.
  for (long s = last; s > grid.cutoff; --s) {
    const double k = grid.wavenumber(static_cast<int>(s));
    add(k, 1.0);
    add(-k, 1.0);
  }
  // Remainder: sum_{s > last} g(k_s) ~ (1/dk) int_K^inf g(k) dk with
  // K = k_last + dk/2, mapped through k = K/u.
  const double K = grid.wavenumber(static_cast<int>(last)) + 0.5 * dk;
  const QuadratureRule rule = gauss_legendre(16);
  for (size_t j = 0; j < rule.nodes.size(); ++j) {
    const double u = 0.5 * (rule.nodes[j] + 1.0);
    const double w = 0.5 * rule.weights[j] * K / (u * u) / dk;
    add(K / u, w);
    add(-K / u, w);
  }
  Eigen::Matrix2cd gram;
  gram << sums[0], sums[1], sums[1], sums[2];
  return gram;
}

PolaritonSystem build_system(const OrderParameterProfile& profile,
                             const FourierGrid& grid, double detuning,
                             const SimulationParams& params,
                             bool far_mode_closure) {
  CoreProblem core =
      build_core(profile, grid, detuning, params, far_mode_closure);
  PolaritonSystem system;
  system.grid = grid;
  system.detuning = detuning;
  system.q = core.q;
  system.profile = profile.kind();
  system.propagator = solve_propagator(core.op, detuning, grid.cutoff,
                                       &system.diagnostics);
  system.op = std::move(core.op);
  system.closure = std::move(core.closure);
  return system;
}

ScatterCoefficients s_matrix(const PolaritonSystem& system,
                             const OrderParameterProfile& profile,
                             const SimulationParams& params) {
  (void)params;
  CoreProblem core;
  core.q = system.q;
  core.closure = system.closure;
  const Eigen::VectorXcd x =
      system.propagator * core_source(core, profile, system.grid);
  return coefficients_from_solution(core, profile, system.grid, x);
}

ConvergedCoefficients converge(const OrderParameterProfile& profile,
                               double detuning, const SimulationParams& params,
                               const SolverOptions& options) {
  if (!(options.tol > 0.0)) throw InvalidParameter("tol must be > 0");
  validate(params);
  const double q = optical_wavenumber(detuning, params);
  int cutoff = options.cutoff.value_or(
      default_cutoff(profile, q, options.margin));
  ConvergedCoefficients out;
  auto attempt = [&](int c) {
    const ScatterCoefficients coeff =
        solve_coefficients(profile, make_grid(c, profile.length()), detuning,
                           params, options.far_mode_closure);
    out.history.emplace_back(c, coeff.T, coeff.R);
    out.coefficients = coeff;
    out.cutoff = c;
  };
  attempt(cutoff);
  if (params.density == 0.0) return out;
  for (int d = 0; d < options.max_doublings; ++d) {
    const auto [c_prev, T_prev, R_prev] = out.history.back();
    cutoff *= 2;
    attempt(cutoff);
    if (std::abs(out.coefficients.T - T_prev) < options.tol &&
        std::abs(out.coefficients.R - R_prev) < options.tol)
      return out;
  }
  out.converged = false;
  throw ConvergenceError(
      describe("cutoff doubling did not converge", detuning, out.cutoff), out);
}

}  // namespace bec1d
