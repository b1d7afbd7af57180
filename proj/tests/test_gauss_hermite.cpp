#include "heatnet/gauss_hermite.hpp"

#include <cmath>
#include <stdexcept>

#include "doctest.h"

using heatnet::gauss_hermite;
using heatnet::gaussian_expectation;

namespace {

// double factorial (2m-1)!! with (-1)!! = 1
double double_factorial(int k) {
  double r = 1.0;
  for (int i = k; i >= 1; i -= 2) r *= i;
  return r;
}

}  // namespace

TEST_CASE("closed-form rules for small n") {
  const double sqrt_pi = std::sqrt(M_PI);

  const auto& r1 = gauss_hermite(1);
  CHECK(r1.nodes[0] == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(r1.weights[0] == doctest::Approx(sqrt_pi));

  const auto& r2 = gauss_hermite(2);
  CHECK(r2.nodes[0] == doctest::Approx(-1.0 / std::sqrt(2.0)));
  CHECK(r2.nodes[1] == doctest::Approx(1.0 / std::sqrt(2.0)));
  CHECK(r2.weights[0] == doctest::Approx(sqrt_pi / 2.0));
  CHECK(r2.weights[1] == doctest::Approx(sqrt_pi / 2.0));

  const auto& r3 = gauss_hermite(3);
  CHECK(r3.nodes[0] == doctest::Approx(-std::sqrt(1.5)));
  CHECK(std::fabs(r3.nodes[1]) < 1e-14);
  CHECK(r3.nodes[2] == doctest::Approx(std::sqrt(1.5)));
  CHECK(r3.weights[0] == doctest::Approx(sqrt_pi / 6.0));
  CHECK(r3.weights[1] == doctest::Approx(2.0 * sqrt_pi / 3.0));
  CHECK(r3.weights[2] == doctest::Approx(sqrt_pi / 6.0));

  // n = 5 values as tabulated in Abramowitz & Stegun 25.4.46.
  const auto& r5 = gauss_hermite(5);
  CHECK(r5.nodes[4] == doctest::Approx(2.02018287045609).epsilon(1e-12));
  CHECK(r5.nodes[3] == doctest::Approx(0.958572464613819).epsilon(1e-12));
  CHECK(r5.weights[4] == doctest::Approx(0.019953242059046).epsilon(1e-10));
  CHECK(r5.weights[3] == doctest::Approx(0.393619323152241).epsilon(1e-10));
  CHECK(r5.weights[2] == doctest::Approx(0.945308720482942).epsilon(1e-10));

  CHECK_THROWS_AS(gauss_hermite(0), std::invalid_argument);
}

TEST_CASE("nodes are symmetric, sorted, and weights sum to sqrt(pi)") {
  for (int n : {4, 7, 16, 40, 200}) {
    const auto& r = gauss_hermite(n);
    REQUIRE(r.nodes.size() == n);
    double wsum = 0.0;
    for (int i = 0; i < n; ++i) {
      wsum += r.weights[i];
      CHECK(r.weights[i] > 0.0);
      if (i > 0) CHECK(r.nodes[i] > r.nodes[i - 1]);
      CHECK(r.nodes[i] == doctest::Approx(-r.nodes[n - 1 - i]).epsilon(1e-11));
    }
    CHECK(wsum == doctest::Approx(std::sqrt(M_PI)).epsilon(1e-13));
  }
}

TEST_CASE("polynomial exactness up to degree 2n - 1") {
  // integral of t^{2m} exp(-t^2) dt = sqrt(pi) (2m-1)!! / 2^m;
  // odd powers vanish.
  for (int n : {3, 6, 10}) {
    const auto& r = gauss_hermite(n);
    for (int k = 0; k <= 2 * n - 1; ++k) {
      double quad = 0.0, magnitude = 0.0;
      for (int i = 0; i < n; ++i) {
        const double term = r.weights[i] * std::pow(r.nodes[i], k);
        quad += term;
        magnitude += std::fabs(term);
      }
      double exact = 0.0;
      if (k % 2 == 0)
        exact = std::sqrt(M_PI) * double_factorial(k - 1) / std::pow(2.0, k / 2);
      // Odd powers cancel between +-nodes; the achievable accuracy scales
      // with the magnitude of the cancelled terms, not with the result.
      CHECK(std::fabs(quad - exact) < 1e-12 * (1.0 + magnitude));
    }
  }
}

TEST_CASE("gaussian expectations: moments and a transcendental identity") {
  auto sq = [](double z) { return z * z; };
  auto quart = [](double z) { return z * z * z * z; };
  CHECK(gaussian_expectation(sq, 0.0, 1.0, 8) == doctest::Approx(1.0));
  CHECK(gaussian_expectation(quart, 0.0, 1.0, 8) == doctest::Approx(3.0));

  // E[(m + s Z)^2] = m^2 + s^2
  CHECK(gaussian_expectation(sq, 1.5, 2.0, 8) ==
        doctest::Approx(1.5 * 1.5 + 4.0));

  // Degenerate stddev short-circuits to a point evaluation.
  CHECK(gaussian_expectation(sq, 3.0, 0.0, 8) == 9.0);
  CHECK_THROWS_AS(gaussian_expectation(sq, 0.0, -1.0, 8),
                  std::invalid_argument);

  // E[sin(x + Z)] = sin(x) exp(-1/2) for standard normal Z.
  for (double x : {0.0, 0.3, 1.0, -2.5}) {
    auto f = [x](double z) { return std::sin(x + z); };
    CHECK(gaussian_expectation(f, 0.0, 1.0, 200) ==
          doctest::Approx(std::sin(x) * std::exp(-0.5)).epsilon(1e-12));
  }
}

TEST_CASE("large rules stay finite: far-tail weights may underflow to 0") {
  const auto& r = gauss_hermite(2048);
  double wsum = 0.0;
  for (int i = 0; i < 2048; ++i) {
    CHECK(std::isfinite(r.weights[i]));
    CHECK(r.weights[i] >= 0.0);
    if (i > 0) CHECK(r.nodes[i] > r.nodes[i - 1]);
    wsum += r.weights[i];
  }
  CHECK(wsum == doctest::Approx(std::sqrt(M_PI)).epsilon(1e-13));

  double second_moment = 0.0;
  for (int i = 0; i < 2048; ++i)
    second_moment += r.weights[i] * r.nodes[i] * r.nodes[i];
  CHECK(second_moment == doctest::Approx(std::sqrt(M_PI) / 2.0).epsilon(1e-12));
}

TEST_CASE("node doubling converges for smooth integrands") {
  auto f = [](double z) { return std::log1p(std::exp(-std::fabs(z))) +
                                 std::max(z, 0.0); };  // softplus
  const double v200 = gaussian_expectation(f, 0.4, std::sqrt(2.0), 200);
  const double v400 = gaussian_expectation(f, 0.4, std::sqrt(2.0), 400);
  CHECK(std::fabs(v200 - v400) < 1e-12);

  const double coarse = gaussian_expectation(f, 0.4, std::sqrt(2.0), 10);
  CHECK(std::fabs(coarse - v400) < 1e-3);
  CHECK(std::fabs(coarse - v400) > std::fabs(v200 - v400));
}
