#include <doctest.h>

#include <cmath>
#include <random>

#include "bec1d/self_energy.hpp"
#include "oracles.hpp"

using namespace bec1d;

namespace {

// Entrywise relative error. Entries far below the matrix scale come out of
// cancellations between O(max) terms (some vanish exactly when L is a whole
// number of wavelengths), so their denominator is floored at 1e-6 * max.
double max_relative(const Eigen::MatrixXcd& got, const Eigen::MatrixXcd& ref) {
  const double floor = 1e-6 * ref.cwiseAbs().maxCoeff();
  double worst = 0.0;
  for (Eigen::Index i = 0; i < ref.rows(); ++i)
    for (Eigen::Index j = 0; j < ref.cols(); ++j)
      worst = std::max(worst, std::abs(got(i, j) - ref(i, j)) /
                                  std::max(std::abs(ref(i, j)), floor));
  return worst;
}

}  // namespace

TEST_CASE("uniform slab matches the closed forms") {
  std::mt19937 rng(99);
  std::uniform_real_distribution<double> len(0.5, 20.0), det(-3.0, 3.0);
  double worst = 0.0;
  for (int trial = 0; trial < 40; ++trial) {
    SimulationParams p;
    p.slab_depth = len(rng);
    const double d = det(rng);
    const double q = optical_wavenumber(d, p);
    const auto prof = make_profile(ProfileKind::Uniform, p);
    const auto grid = make_grid(default_cutoff(prof, q), p.length());
    const auto sigma = self_energy(prof, grid, q, d).sigma;
    Eigen::MatrixXcd ref(grid.size(), grid.size());
    for (int t = -grid.cutoff; t <= grid.cutoff; ++t)
      for (int s = -grid.cutoff; s <= grid.cutoff; ++s)
        ref(grid.index(t), grid.index(s)) = Complex(oracle::uniform_sigma(
            p.density, p.length(), q, t, s));
    worst = std::max(worst, max_relative(sigma, ref));
  }
  CHECK(worst < 1e-10);
}

TEST_CASE("pole-coincident grid point stays finite") {
  // L = 3 lambda0 and zero detuning put k_3 exactly on the light line when
  // the frequency correction vanishes.
  SimulationParams p;
  p.slab_depth = 3.0;
  const double q = 1.0;
  const auto prof = make_profile(ProfileKind::Uniform, p);
  const auto grid = make_grid(12, p.length());
  REQUIRE(std::abs(grid.wavenumber(3) - q) < 1e-15);
  const auto sigma = self_energy(prof, grid, q, 0.0).sigma;
  CHECK(sigma.allFinite());
  // Compare with the closed forms at a slightly shifted q.
  const double dq = 1e-7;
  for (int t : {-3, 0, 3, 5})
    for (int s : {-3, 3, 7}) {
      const Complex a(oracle::uniform_sigma(p.density, p.length(), q + dq, t, s));
      const Complex b(oracle::uniform_sigma(p.density, p.length(), q - dq, t, s));
      const Complex got = sigma(grid.index(t), grid.index(s));
      CHECK(std::abs(got - 0.5 * (a + b)) < 1e-6 * std::max(1.0, std::abs(got)));
    }
}

TEST_CASE("all profiles match brute-force quadrature") {
  SimulationParams p;
  p.slab_depth = 2.0;
  p.delta_q = 0.5;
  const double d = 0.0;
  const double q = optical_wavenumber(d, p);
  const auto grid = make_grid(8, p.length());
  for (auto kind : {ProfileKind::Uniform, ProfileKind::Cosine, ProfileKind::Split}) {
    const auto prof = make_profile(kind, p);
    const auto sigma = self_energy(prof, grid, q, d).sigma;
    const auto ref = oracle::quadrature_sigma(prof, 8, q);
    CAPTURE(to_string(kind));
    CHECK(max_relative(sigma, ref) < 1e-8);
  }
  // Off-resonant frequency and an incommensurate modulation.
  p.delta_q = 0.83;
  const double q2 = 1.0 + 0.31;
  const auto prof = make_profile(ProfileKind::Split, p);
  CHECK(max_relative(self_energy(prof, grid, q2, 0.0).sigma,
                     oracle::quadrature_sigma(prof, 8, q2)) < 1e-8);
}

TEST_CASE("empty condensate has no self-energy") {
  SimulationParams p;
  p.density = 0.0;
  const auto prof = make_profile(ProfileKind::Cosine, p);
  const auto grid = make_grid(5, p.length());
  CHECK(self_energy(prof, grid, 1.0, 0.0).sigma.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("reciprocity under index negation") {
  // For real Xi(z): Sigma_ts = Sigma_{-s,-t}. The uniform slab is also
  // symmetric in (t, s).
  SimulationParams p;
  p.slab_depth = 2.7;
  p.delta_q = 0.44;
  const double q = 1.0 + 0.2 / 1e8;
  for (auto kind : {ProfileKind::Uniform, ProfileKind::Cosine, ProfileKind::Split}) {
    const auto prof = make_profile(kind, p);
    const auto grid = make_grid(20, p.length());
    const auto S = self_energy(prof, grid, q, 0.2).sigma;
    const Eigen::MatrixXcd flipped = S.reverse().transpose();
    CHECK((S - flipped).cwiseAbs().maxCoeff() < 1e-12 * S.cwiseAbs().maxCoeff());
    if (kind == ProfileKind::Uniform)
      CHECK((S - S.transpose()).cwiseAbs().maxCoeff() <
            1e-12 * S.cwiseAbs().maxCoeff());
  }
}

TEST_CASE("diagonal is dominated by the bulk pole term away from the light line") {
  SimulationParams p;
  p.slab_depth = 10.0;
  const auto prof = make_profile(ProfileKind::Uniform, p);
  const auto grid = make_grid(80, p.length());
  const double q = 1.0;
  const auto S = self_energy(prof, grid, q, 0.0).sigma;
  const double b3 = 3.0 * M_PI * p.density;
  for (int s : {30, 55, -70}) {
    const double k = grid.wavenumber(s);
    const double bulk = b3 * q * q / (q * q - k * k);
    CHECK(std::abs(S(grid.index(s), grid.index(s)) - bulk) < 1e-3 * std::abs(bulk));
  }
}

TEST_CASE("kernel double integral is symmetric and continuous across the switch") {
  const double q = 1.0, h = 7.0;
  for (double a : {-3.0, 0.2, 0.9, 1.49, 1.51})
    for (double b : {-1.2, 0.51, 1.0, 2.5}) {
      CHECK(std::abs(kernel_double_integral(a, b, q, h) -
                     kernel_double_integral(b, a, q, h)) < 1e-12);
    }
  const Complex below = kernel_double_integral(0.3, 1.5 - 1e-12, q, h);
  const Complex above = kernel_double_integral(0.3, 1.5 + 1e-12, q, h);
  CHECK(std::abs(below - above) < 1e-10);
}
