#include "heatnet/bounds.hpp"

#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "test_util.hpp"

using namespace heatnet;

TEST_CASE("gamma values, recurrence, and stirling sandwich") {
  CHECK(std::fabs(gamma_sandwich(1.0).rhs - 1.0) < 1e-12);
  CHECK(std::fabs(gamma_sandwich(0.5).rhs - std::sqrt(M_PI)) <
        1e-12 * std::sqrt(M_PI));

  for (double x : {0.3, 1.7, 9.2}) {
    const double g = gamma_sandwich(x).rhs;
    const double g1 = gamma_sandwich(x + 1.0).rhs;
    CHECK(std::fabs(g1 - x * g) < 1e-12 * std::fabs(g1));
  }

  // Log-spaced grid over [0.1, 100].
  for (int i = 0; i < 500; ++i) {
    const double x = 0.1 * std::pow(1000.0, i / 499.0);
    const BoundReport rep = gamma_sandwich(x);
    CHECK(rep.ok);
    CHECK(rep.lhs <= rep.rhs);
  }
  CHECK_THROWS_AS(gamma_sandwich(0.0), std::invalid_argument);
}

TEST_CASE("ball volumes: closed forms and elementary bound") {
  CHECK(std::fabs(ball_volume(1).exact - 2.0) < 1e-12);
  CHECK(std::fabs(ball_volume(2).exact - M_PI) < 1e-12 * M_PI);
  CHECK(std::fabs(ball_volume(3).exact - 4.0 * M_PI / 3.0) < 1e-11);
  CHECK(std::fabs(ball_volume(4).exact - M_PI * M_PI / 2.0) < 1e-11);

  for (int d = 1; d <= 30; ++d) {
    const BallVolume v = ball_volume(d);
    CHECK(v.exact > 0.0);
    CHECK(v.bound > 0.0);
    CHECK(v.exact <= v.bound);
  }
  CHECK(ball_volume(20).exact < ball_volume(20).bound);
  CHECK_THROWS_AS(ball_volume(0), std::invalid_argument);
}

TEST_CASE("kahane constant upper bound") {
  CHECK(kahane_bound(2.0) == 1.0);
  CHECK(kahane_bound(1.0) == 1.0);  // max clamps below p = 2
  CHECK(kahane_bound(5.0) == 2.0);
  CHECK(std::fabs(kahane_bound(3.0) - std::sqrt(2.0)) < 1e-15);
  CHECK_THROWS_AS(kahane_bound(0.5), std::invalid_argument);
}

TEST_CASE("monte carlo lp bound: closed-form cases") {
  // Zero-variance: both sides vanish.
  const BoundReport cst = mc_lp_bound_check(
      constant_sampler(Eigen::VectorXd::Constant(3, 1.25)), 2.0, 10, 50, 7);
  CHECK(cst.lhs == 0.0);
  CHECK(cst.rhs == 0.0);
  CHECK(cst.ok);

  // Standard Gaussian, d = 3, p = 2: E||err||^2 = d/n exactly, and the
  // right-hand side is 2 * 1 * sqrt(3) / 10.
  const BoundReport g = mc_lp_bound_check(gaussian_sampler(3), 2.0, 100,
                                          2000, 11);
  CHECK(g.ok);
  CHECK(std::fabs(g.rhs - 2.0 * std::sqrt(3.0) / 10.0) < 1e-14);
  const double expected_lhs = std::sqrt(3.0) / 10.0;
  CHECK(std::fabs(g.lhs - expected_lhs) < 0.1 * expected_lhs);

  const BoundReport u = mc_lp_bound_check(uniform_cube_sampler(2), 4.0, 50,
                                          2000, 13);
  CHECK(u.ok);
  CHECK(u.lhs > 0.0);

  // Exact central moments behind the right-hand sides.
  CHECK(std::fabs(gaussian_sampler(2).central_moment_root(4.0) -
                  std::pow(8.0, 0.25)) < 1e-12);
  CHECK(std::fabs(gaussian_sampler(3).central_moment_root(2.0) -
                  std::sqrt(3.0)) < 1e-12);
  CHECK(std::fabs(uniform_cube_sampler(2).central_moment_root(2.0) -
                  std::sqrt(2.0 / 12.0)) < 1e-15);
  CHECK(std::fabs(uniform_cube_sampler(3).central_moment_root(4.0) -
                  std::pow(3.0 / 80.0 + 6.0 / 144.0, 0.25)) < 1e-15);

  CHECK_THROWS_AS(uniform_cube_sampler(2).central_moment_root(3.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      mc_lp_bound_check(gaussian_sampler(2), 1.5, 10, 10, 1),
      std::invalid_argument);
}

TEST_CASE("monte carlo lp error shrinks like 1/sqrt(n)") {
  const BoundReport small =
      mc_lp_bound_check(gaussian_sampler(2), 2.0, 25, 1500, 21);
  const BoundReport large =
      mc_lp_bound_check(gaussian_sampler(2), 2.0, 400, 1500, 22);
  CHECK(small.ok);
  CHECK(large.ok);
  const double ratio = small.lhs / large.lhs;  // ideal: sqrt(400/25) = 4
  CHECK(ratio > 2.5);
  CHECK(ratio < 6.5);
}

TEST_CASE("sobolev sup embedding: constants and closed forms") {
  for (int d : {1, 2, 3}) {
    ScalarField one;
    one.value = [](const Eigen::VectorXd&) { return 1.0; };
    one.gradient = [d](const Eigen::VectorXd&) {
      return Eigen::VectorXd::Zero(d);
    };
    const BoundReport rep = sobolev_sup_check(one, d, 16);
    CHECK(rep.ok);
    CHECK(rep.lhs == 1.0);
    CHECK(std::fabs(rep.rhs - 8.0 * std::sqrt(std::exp(1.0))) < 1e-9);
  }

  // d = 1, f(x) = x: integral of x^2 + 1 is 4/3.
  ScalarField lin;
  lin.value = [](const Eigen::VectorXd& x) { return x[0]; };
  lin.gradient = [](const Eigen::VectorXd&) {
    return Eigen::VectorXd::Ones(1);
  };
  const BoundReport rep = sobolev_sup_check(lin, 1);
  CHECK(rep.ok);
  CHECK(rep.lhs == 1.0);
  CHECK(std::fabs(rep.rhs -
                  8.0 * std::sqrt(std::exp(1.0)) * std::sqrt(4.0 / 3.0)) <
        1e-6 * rep.rhs);

  CHECK_THROWS_AS(sobolev_sup_check(lin, 4), std::invalid_argument);
  CHECK_THROWS_AS(sobolev_sup_check(lin, 1, 1), std::invalid_argument);
}

TEST_CASE("sobolev sup embedding holds for random trigonometric fields") {
  auto dr = testutil::draws(611);
  const int res_for_d[4] = {0, 256, 64, 24};
  for (int d : {1, 2, 3}) {
    for (int rep_i = 0; rep_i < 50; ++rep_i) {
      // f(x) = sum_t a_t sin(k_t . x + phi_t) with small integer k_t.
      std::vector<double> amp(3), phase(3);
      std::vector<Eigen::VectorXd> freq(3);
      for (int t = 0; t < 3; ++t) {
        amp[size_t(t)] = -2.0 + 4.0 * dr.uniform();
        phase[size_t(t)] = 6.28 * dr.uniform();
        Eigen::VectorXd k(d);
        for (int j = 0; j < d; ++j)
          k[j] = std::floor(5.0 * dr.uniform()) - 2.0;
        freq[size_t(t)] = k;
      }
      ScalarField f;
      f.value = [&](const Eigen::VectorXd& x) {
        double s = 0.0;
        for (int t = 0; t < 3; ++t)
          s += amp[size_t(t)] *
               std::sin(freq[size_t(t)].dot(x) + phase[size_t(t)]);
        return s;
      };
      f.gradient = [&](const Eigen::VectorXd& x) {
        Eigen::VectorXd g = Eigen::VectorXd::Zero(d);
        for (int t = 0; t < 3; ++t)
          g += amp[size_t(t)] *
               std::cos(freq[size_t(t)].dot(x) + phase[size_t(t)]) *
               freq[size_t(t)];
        return g;
      };
      CHECK(sobolev_sup_check(f, d, res_for_d[d]).ok);
    }
  }
}

TEST_CASE("uniform monte carlo sobolev bound") {
  // Deterministic field: empirical mean equals the mean field.
  const auto det = deterministic_field_sampler(
      [](const Eigen::VectorXd& x) { return std::sin(3.0 * x[0]); }, 1, 0.0,
      1.0, 1.0, 3.0);
  const BoundReport drep = mc_sobolev_uniform_check(det, 2.0, 20, 30, 3);
  CHECK(drep.lhs < 1e-14);  // only averaging roundoff survives
  CHECK(drep.ok);

  // sin(x + Z) on [0,1], p = 2, n = 200.
  const auto field = sin_field_sampler(Eigen::VectorXd::Ones(1), 0.0, 1.0);
  const BoundReport rep = mc_sobolev_uniform_check(field, 2.0, 200, 500, 5);
  CHECK(rep.ok);
  CHECK(rep.lhs > 0.0);
  const double expected_rhs = 4.0 * 1.0 * 8.0 * std::sqrt(std::exp(1.0)) /
                              std::sqrt(200.0) * (1.0 + 1.0);
  CHECK(std::fabs(rep.rhs - expected_rhs) < 1e-12);

  // Determinism in the seed.
  const BoundReport again = mc_sobolev_uniform_check(field, 2.0, 200, 500, 5);
  CHECK(again.lhs == rep.lhs);
  CHECK(mc_sobolev_uniform_check(field, 2.0, 200, 500, 6).lhs != rep.lhs);
}

TEST_CASE("uniform monte carlo sobolev error shrinks with n") {
  const auto field = sin_field_sampler(Eigen::VectorXd::Ones(1), 0.0, 1.0);
  double prev = 1e300;
  const double n_free = 4.0 * 1.0 * 8.0 * std::sqrt(std::exp(1.0)) * 2.0;
  for (int n : {50, 200, 800}) {
    const BoundReport rep = mc_sobolev_uniform_check(field, 2.0, n, 250, 9);
    CHECK(rep.ok);
    CHECK(rep.lhs < prev);
    CHECK(rep.lhs * std::sqrt(double(n)) <= n_free);
    prev = rep.lhs;
  }
}

TEST_CASE("uniform monte carlo sobolev in two dimensions") {
  Eigen::VectorXd w(2);
  w << 1.0, 1.0;
  const auto field = sin_field_sampler(w, 0.0, 1.0);
  const BoundReport rep = mc_sobolev_uniform_check(field, 4.0, 100, 150, 17);
  CHECK(rep.ok);
  CHECK(rep.lhs > 0.0);

  CHECK_THROWS_AS(mc_sobolev_uniform_check(field, 2.0, 100, 150, 17),
                  std::invalid_argument);  // 8 sqrt(e) needs max{2,p} >= 4
  Eigen::VectorXd w3 = Eigen::VectorXd::Ones(3);
  CHECK_THROWS_AS(
      mc_sobolev_uniform_check(sin_field_sampler(w3, 0.0, 1.0), 4.0, 10, 10,
                               1),
      std::invalid_argument);
  CHECK_THROWS_AS(mc_sobolev_uniform_check(field, 0.5, 10, 10, 1),
                  std::invalid_argument);
}
