#include <doctest.h>

#include <cmath>
#include <random>

#include "bec1d/maxwell.hpp"

using namespace bec1d;

namespace {

Permittivity forced(Complex eps) {
  Permittivity e;
  e.epsilon = eps;
  e.sqrt_epsilon = std::sqrt(eps);
  if (e.sqrt_epsilon.imag() < 0) e.sqrt_epsilon = -e.sqrt_epsilon;
  return e;
}

SimulationParams slab(double L) {
  SimulationParams p;
  p.slab_depth = L;
  return p;
}

}  // namespace

TEST_CASE("vacuum slab is transparent") {
  for (double L : {0.3, 1.0, 17.0}) {
    const auto r = maxwell_slab(0.0, slab(L), Permittivity{});
    CHECK(r.T == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(r.R == 0.0);
  }
  CHECK_THROWS_AS(maxwell_slab(0.0, slab(1.0), forced(0.0)), std::domain_error);
}

TEST_CASE("half-wave condition suppresses reflection") {
  // psi = L sqrt(eps) q = m pi with q = 1 at zero detuning.
  const double n = 1.5;
  SimulationParams p;
  p.slab_depth = 3.0 / (2.0 * n);  // psi = 2 pi L n = 3 pi
  const auto r = maxwell_slab(0.0, p, forced(n * n));
  CHECK(r.R < 1e-28);
  CHECK(r.T == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("lossless slab conserves flux") {
  for (double eps : {1.2, 2.5, 0.6}) {
    for (double L : {0.17, 1.0, 4.3}) {
      const auto r = maxwell_slab(0.0, slab(L), forced(eps));
      CHECK(r.T + r.R == doctest::Approx(1.0).epsilon(1e-9));
    }
  }
}

TEST_CASE("agrees with the transfer-matrix slab") {
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> det(-6.0, 6.0), len(0.05, 12.0),
      dens(0.0, 0.2);
  for (int i = 0; i < 500; ++i) {
    const double d = det(rng);
    SimulationParams p = slab(len(rng));
    p.density = dens(rng);
    const auto e = solve_epsilon(d, p.density);
    const auto a = maxwell_slab(d, p, e);
    const auto b = transfer_matrix_slab(d, p, e);
    CHECK(std::abs(a.T - b.T) < 1e-10);
    CHECK(std::abs(a.R - b.R) < 1e-10);
    CHECK(a.T + a.R <= 1.0 + 1e-9);
    CHECK(a.T >= 0.0);
    CHECK(a.R >= 0.0);
  }
}

TEST_CASE("thick opaque slab uses the bounded form") {
  SimulationParams p = slab(400.0);
  const auto e = solve_epsilon(0.0, 0.2);
  const auto r = maxwell_slab(0.0, p, e);
  CHECK(std::isfinite(r.T));
  CHECK(std::isfinite(r.R));
  const Complex n = e.sqrt_epsilon;
  CHECK(r.R == doctest::Approx(std::norm((1.0 - n) / (1.0 + n))).epsilon(1e-12));
}

TEST_CASE("thin-slab limit") {
  const auto e = solve_epsilon(0.0, 0.05);
  double prev_T = 0.0;
  for (double L : {1e-1, 1e-2, 1e-3, 1e-5}) {
    const auto r = maxwell_slab(0.0, slab(L), e);
    CHECK(r.T > prev_T);
    prev_T = r.T;
  }
  const auto r = maxwell_slab(0.0, slab(1e-7), e);
  CHECK(r.T == doctest::Approx(1.0).epsilon(1e-5));
  CHECK(r.R < 1e-10);
}

TEST_CASE("forward-only variant") {
  SimulationParams p = slab(10.0);
  SUBCASE("uniform slab: first order phase") {
    const auto prof = make_profile(ProfileKind::Uniform, p);
    const double d = 1.3;
    const auto e = solve_epsilon(d, p.density);
    const auto r = forward_only_slab(d, p, prof, 1);
    const double q = optical_wavenumber(d, p);
    const double expected =
        std::exp(-2.0 * q * p.length() * 0.5 * e.epsilon.imag());
    CHECK(r.T == doctest::Approx(expected).epsilon(1e-12));
    CHECK(r.R == 0.0);
  }
  SUBCASE("higher order converges to the exact square root") {
    const auto prof = make_profile(ProfileKind::Uniform, p);
    const double d = 4.0;
    const auto e = solve_epsilon(d, p.density);
    const auto r = forward_only_slab(d, p, prof, 30);
    const double q = optical_wavenumber(d, p);
    CHECK(r.T == doctest::Approx(std::exp(-2.0 * q * p.length() *
                                          e.sqrt_epsilon.imag()))
                     .epsilon(1e-9));
  }
  SUBCASE("density zero and order validation") {
    SimulationParams v = p;
    v.density = 0.0;
    const auto prof = make_profile(ProfileKind::Cosine, v);
    CHECK(forward_only_slab(0.0, v, prof).T == 1.0);
    CHECK_THROWS_AS(forward_only_slab(0.0, v, prof, 0), InvalidParameter);
  }
}
