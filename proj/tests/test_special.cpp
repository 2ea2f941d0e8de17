#include <doctest.h>

#include <cmath>
#include <random>

#include "bec1d/special.hpp"
#include "oracles.hpp"

using namespace bec1d;
using LD = long double;
using LComplex = std::complex<LD>;

namespace {

LComplex f(LD x) { return std::exp(LComplex(0, x)); }

}  // namespace

TEST_CASE("first divided difference of exp(ix)") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> u(-30.0, 30.0);
  for (int n = 0; n < 200; ++n) {
    const double a = u(rng), b = u(rng);
    const LComplex ref = (f(b) - f(a)) / LD(b - a);
    CHECK(std::abs(exp_divided_difference(a, b) - std::complex<double>(ref)) <
          1e-13);
  }
  // Coincident nodes give the derivative.
  CHECK(std::abs(exp_divided_difference(0.7, 0.7) -
                 std::complex<double>(0, 1) * std::exp(std::complex<double>(0, 0.7))) <
        1e-15);
}

TEST_CASE("second divided difference, clustered and spread nodes") {
  // Reference in long double with nodes spread enough to avoid cancellation
  // at that precision, plus the confluent limit f''/2.
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> c(-20.0, 20.0), spread(0.05, 5.0);
  for (int n = 0; n < 300; ++n) {
    const double x0 = c(rng);
    const double x1 = x0 + spread(rng), x2 = x1 + spread(rng);
    const LComplex d01 = (f(x1) - f(x0)) / LD(x1 - x0);
    const LComplex d12 = (f(x2) - f(x1)) / LD(x2 - x1);
    const LComplex ref = (d12 - d01) / LD(x2 - x0);
    const auto got = exp_divided_difference(x2, x0, x1);
    CHECK(std::abs(got - std::complex<double>(ref)) < 1e-11);
  }
  const double x = 1.3;
  CHECK(std::abs(exp_divided_difference(x, x, x) +
                 0.5 * std::exp(std::complex<double>(0, x))) < 1e-15);
  // Long double instantiation agrees with double.
  const auto dl = exp_divided_difference<LD>(0.1L, 0.4L, 0.45L);
  const auto dd = exp_divided_difference(0.1, 0.4, 0.45);
  CHECK(std::abs(std::complex<double>(dl) - dd) < 1e-15);
}

TEST_CASE("ordered pair integral against quadrature") {
  const double half = 2.5;
  for (auto [a, b] : {std::pair{0.3, -1.1}, std::pair{2.0, -2.0},
                      std::pair{1e-9, 3e-9}, std::pair{-4.0, 0.7}}) {
    // int_{-h}^{h} dz e^{iaz} int_{-h}^{z} dz' e^{ibz'}
    const oracle::Rule outer = oracle::composite(40, 12, -half, half);
    std::complex<double> ref = 0.0;
    for (size_t i = 0; i < outer.x.size(); ++i) {
      const double z = outer.x[i];
      const oracle::Rule inner = oracle::composite(20, 12, -half, z);
      std::complex<double> in = 0.0;
      for (size_t j = 0; j < inner.x.size(); ++j)
        in += inner.w[j] * std::exp(std::complex<double>(0, b * inner.x[j]));
      ref += outer.w[i] * std::exp(std::complex<double>(0, a * z)) * in;
    }
    CHECK(std::abs(ordered_pair_integral(a, b, half) - ref) <
          1e-11 * std::max(1.0, std::abs(ref)));
  }
  CHECK(std::abs(ordered_pair_integral(0.0, 0.0, 1.5) - 4.5) < 1e-14);
}

TEST_CASE("segment integral and sinc") {
  CHECK(sinc(0.0) == 1.0);
  CHECK(sinc(1e-6) == doctest::Approx(1.0 - 1e-12 / 6).epsilon(1e-16));
  CHECK(segment_integral(0.0, 3.0) == 6.0);
  CHECK(segment_integral(2.0, 3.0) == doctest::Approx(std::sin(6.0)).epsilon(1e-15));
}
