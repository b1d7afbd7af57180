#include "heatnet/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "heatnet/gauss_hermite.hpp"
#include "oracle_cases.hpp"
#include "test_util.hpp"

using heatnet::exact_solution;
using heatnet::exact_solution_detailed;
using heatnet::FlowSpec;
using heatnet::InitialCondition;
using heatnet::kernel_convolution;
using heatnet::mc_reference;

namespace {

Eigen::VectorXd to_vec(const std::vector<double>& v) {
  return Eigen::Map<const Eigen::VectorXd>(v.data(), Eigen::Index(v.size()));
}

Eigen::MatrixXd to_mat(const std::vector<double>& a, Eigen::Index d) {
  Eigen::MatrixXd M(d, d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j)
      M(i, j) = a[static_cast<std::size_t>(i * d + j)];
  return M;
}

FlowSpec heat_spec(Eigen::Index d, double T) {
  return FlowSpec(Eigen::VectorXd::Zero(d), Eigen::MatrixXd::Identity(d, d),
                  T);
}

double fit_slope(const std::vector<double>& logx,
                 const std::vector<double>& logy) {
  const double n = double(logx.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < logx.size(); ++i) {
    sx += logx[i];
    sy += logy[i];
    sxx += logx[i] * logx[i];
    sxy += logx[i] * logy[i];
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace

TEST_CASE("ridge solutions match frozen extended-precision quadrature") {
  for (const auto& c : frozen::oracle_cases()) {
    const Eigen::VectorXd w = to_vec(c.w);
    const Eigen::Index d = w.size();
    InitialCondition ic =
        c.kind == "ridge_softplus"
            ? heatnet::ridge_softplus_ic(w, c.shift)
            : heatnet::ridge_ic(c.profile, w, c.shift);
    FlowSpec spec(to_vec(c.mu), to_mat(c.A, d), c.T);
    const double got = exact_solution(ic, spec, to_vec(c.x));
    CAPTURE(c.kind);
    CAPTURE(c.profile);
    CHECK(std::fabs(got - c.expected) <= 2e-12 * (1.0 + std::fabs(c.expected)));
  }
}

TEST_CASE("closed forms: martingale property and the squared norm") {
  auto dr = testutil::draws(301);

  // Driftless linear data is a martingale: u(T,x) = w.x + b for all T.
  for (double T : {0.1, 1.0, 7.0}) {
    Eigen::VectorXd w = dr.normal_vector(4);
    Eigen::VectorXd x = dr.normal_vector(4);
    InitialCondition ic = heatnet::linear_ic(w, 0.0);
    CHECK(std::fabs(exact_solution(ic, heat_spec(4, T), x) - w.dot(x)) <=
          1e-12 * (1.0 + std::fabs(w.dot(x))));
  }

  // With drift the mean moves: u(T,x) = w.(x + T mu) + b.
  {
    Eigen::VectorXd w(2), mu(2), x(2);
    w << 1.0, -2.0;
    mu << 0.5, 0.25;
    x << 3.0, 4.0;
    FlowSpec spec(mu, Eigen::MatrixXd::Identity(2, 2) * 0.3, 2.0);
    InitialCondition ic = heatnet::linear_ic(w, 1.5);
    CHECK(exact_solution(ic, spec, x) ==
          doctest::Approx(w.dot(x + 2.0 * mu) + 1.5).epsilon(1e-14));
  }

  // ||x||^2 + c0 under the plain heat equation gains exactly 2dT.
  {
    InitialCondition ic = heatnet::squared_norm_ic(3, 0.0);
    Eigen::VectorXd x(3);
    x << 1.0, -1.0, 2.0;
    CHECK(std::fabs(exact_solution(ic, heat_spec(3, 0.5), x) -
                    (x.squaredNorm() + 3.0)) <= 1e-10);

    // No closed form away from the heat equation: refuse, do not guess.
    FlowSpec drifted(Eigen::VectorXd::Ones(3),
                     Eigen::MatrixXd::Identity(3, 3), 0.5);
    FlowSpec scaled(Eigen::VectorXd::Zero(3),
                    2.0 * Eigen::MatrixXd::Identity(3, 3), 0.5);
    CHECK(heatnet::oracle_supports(ic, heat_spec(3, 0.5)));
    CHECK_FALSE(heatnet::oracle_supports(ic, drifted));
    CHECK_FALSE(heatnet::oracle_supports(ic, scaled));
    CHECK_THROWS_AS(exact_solution(ic, drifted, x),
                    heatnet::UnsupportedCombination);
    CHECK_THROWS_AS(exact_solution(ic, scaled, x),
                    heatnet::UnsupportedCombination);
  }
}

TEST_CASE("dual oracle: quadrature vs 1e7-sample Monte Carlo") {
  InitialCondition ic = heatnet::ridge_softplus_ic(Eigen::VectorXd::Ones(2), 0.0);
  FlowSpec spec = heat_spec(2, 1.0);
  Eigen::VectorXd x = Eigen::VectorXd::Zero(2);

  const double quad = exact_solution(ic, spec, x);
  const auto mc = mc_reference(ic, spec, x, 10000000, 2026);
  CHECK(mc.stderr_est > 0.0);
  CHECK(std::fabs(mc.estimate - quad) <= 3.0 * mc.stderr_est);
}

TEST_CASE("heat-kernel tensor convolution") {
  // Kernel normalization: phi == 1 integrates to 1 for every (T, x).
  for (Eigen::Index d : {1, 2, 3}) {
    Eigen::VectorXd x = Eigen::VectorXd::Constant(d, 0.4);
    const double v = kernel_convolution(
        [](const Eigen::VectorXd&) { return 1.0; }, {1.0, 0.0}, 0.7, x, 12);
    CHECK(v == doctest::Approx(1.0).epsilon(1e-13));
  }

  // Linear phi is preserved pointwise.
  {
    Eigen::VectorXd w(2);
    w << 2.0, -0.5;
    Eigen::VectorXd x(2);
    x << 0.3, 1.1;
    const double v = kernel_convolution(
        [&](const Eigen::VectorXd& y) { return w.dot(y) + 0.25; }, {3.0, 1.0},
        1.3, x, 20);
    CHECK(v == doctest::Approx(w.dot(x) + 0.25).epsilon(1e-12));
  }

  // Cross-oracle agreement on the softplus ridge in d = 2.
  {
    InitialCondition ic =
        heatnet::ridge_softplus_ic(Eigen::VectorXd::Ones(2), 0.0);
    Eigen::VectorXd x(2);
    x << 0.2, -0.6;
    const double conv = kernel_convolution(
        [&](const Eigen::VectorXd& y) { return ic(y); }, ic.envelope(), 1.0,
        x);
    CHECK(std::fabs(conv - exact_solution(ic, heat_spec(2, 1.0), x)) <= 1e-8);
  }

  CHECK_THROWS_AS(kernel_convolution([](const Eigen::VectorXd&) { return 1.0; },
                                     {1.0, 0.0}, 1.0,
                                     Eigen::VectorXd::Zero(5), 10),
                  std::invalid_argument);
  CHECK_THROWS_AS(kernel_convolution([](const Eigen::VectorXd&) { return 1.0; },
                                     {1.0, 10.0}, 1.0,
                                     Eigen::VectorXd::Zero(2), 10),
                  std::invalid_argument);
}

TEST_CASE("node doubling: convergence at sigma near 10, loud failure when capped") {
  // w = 7, T = 1, d = 1 gives sigma = sqrt(98) ~ 9.9; the doubling loop
  // must converge onto the extended-precision value 4.0148614492080537
  // (mpmath quadrature at 40 significant digits).
  InitialCondition wide = heatnet::ridge_softplus_ic(
      Eigen::VectorXd::Constant(1, 7.0), 0.0);
  const auto v = exact_solution_detailed(wide, heat_spec(1, 1.0),
                                         Eigen::VectorXd::Zero(1));
  CHECK(v.error_estimate <= 1e-12 * (1.0 + std::fabs(v.value)));
  CHECK(std::fabs(v.value - 4.0148614492080537) <= 1e-10);

  // Capping the node budget below what the ridge needs must throw, not
  // return silently.
  CHECK_THROWS_AS(
      exact_solution(wide, heat_spec(1, 1.0), Eigen::VectorXd::Zero(1), 2, 4),
      std::runtime_error);
}

TEST_CASE("semigroup property via the 1D ridge reduction") {
  // Evolving for T1 + T2 equals evolving the T1-solution for T2: the ridge
  // profile convolves with N(0, s1^2) then N(0, s2^2) = N(0, s1^2 + s2^2).
  InitialCondition ic =
      heatnet::ridge_softplus_ic(Eigen::VectorXd::Ones(2), 0.5);
  const double T1 = 0.4, T2 = 0.6;
  const double nw2 = 2.0;  // ||w||^2
  const double s1 = std::sqrt(2.0 * T1 * nw2), s2 = std::sqrt(2.0 * T2 * nw2);

  Eigen::VectorXd x(2);
  x << 0.3, -0.1;
  const double direct = exact_solution(ic, heat_spec(2, T1 + T2), x);

  auto g = [&](double t) {
    return heatnet::activation_value(heatnet::Activation::softplus, t - 0.5) + 0.5;
  };
  auto v1 = [&](double s) { return heatnet::gaussian_expectation(g, s, s1, 200); };
  const double nested = heatnet::gaussian_expectation(v1, ic.w.dot(x), s2, 200);
  CHECK(std::fabs(direct - nested) <= 1e-8);
}

TEST_CASE("short-time limit recovers the initial condition") {
  auto dr = testutil::draws(303);
  const FlowSpec spec = heat_spec(2, 1e-8);
  std::vector<InitialCondition> ics = {
      heatnet::ridge_softplus_ic(dr.normal_vector(2), 0.7),
      heatnet::ridge_ic("logistic", dr.normal_vector(2), -0.2),
      heatnet::ridge_ic("sin", dr.normal_vector(2), 0.0),
      heatnet::linear_ic(dr.normal_vector(2), 1.0),
  };
  for (const auto& ic : ics) {
    for (int rep = 0; rep < 5; ++rep) {
      Eigen::VectorXd x = dr.normal_vector(2);
      CHECK(std::fabs(exact_solution(ic, spec, x) - ic(x)) <= 1e-3);
    }
  }
}

TEST_CASE("monte carlo reference: exactness, agreement, determinism") {
  // Constant data: zero-variance estimator.
  {
    InitialCondition ic = heatnet::linear_ic(Eigen::VectorXd::Zero(2), 4.25);
    const auto mc = mc_reference(ic, heat_spec(2, 1.0),
                                 Eigen::VectorXd::Zero(2), 1000, 9);
    CHECK(mc.estimate == 4.25);
    CHECK(mc.stderr_est == 0.0);
  }

  // d = 1 softplus ridge at n = 1e6 sits within 4 standard errors.
  {
    InitialCondition ic =
        heatnet::ridge_softplus_ic(Eigen::VectorXd::Ones(1), 0.0);
    FlowSpec spec = heat_spec(1, 1.0);
    Eigen::VectorXd x = Eigen::VectorXd::Constant(1, 0.3);
    const double exact = exact_solution(ic, spec, x);
    const auto mc = mc_reference(ic, spec, x, 1000000, 77);
    CHECK(std::fabs(mc.estimate - exact) <= 4.0 * mc.stderr_est);
  }

  // Deterministic per seed; distinct seeds decorrelate.
  {
    InitialCondition ic =
        heatnet::ridge_softplus_ic(Eigen::VectorXd::Ones(2), 1.0);
    FlowSpec spec = heat_spec(2, 0.5);
    Eigen::VectorXd x = Eigen::VectorXd::Ones(2);
    const auto a = mc_reference(ic, spec, x, 5000, 1);
    const auto b = mc_reference(ic, spec, x, 5000, 1);
    const auto c = mc_reference(ic, spec, x, 5000, 2);
    CHECK(a.estimate == b.estimate);
    CHECK(a.stderr_est == b.stderr_est);
    CHECK(a.estimate != c.estimate);
    CHECK_THROWS_AS(mc_reference(ic, spec, x, 1, 1), std::invalid_argument);
  }
}

TEST_CASE("monte carlo error decays at the square-root rate") {
  InitialCondition ic =
      heatnet::ridge_softplus_ic(Eigen::VectorXd::Ones(1), 0.0);
  FlowSpec spec = heat_spec(1, 1.0);
  Eigen::VectorXd x = Eigen::VectorXd::Constant(1, 0.2);
  const double exact = exact_solution(ic, spec, x);

  const std::vector<std::int64_t> ns = {100, 1000, 10000, 100000};
  std::vector<double> logn, logerr;
  for (std::int64_t n : ns) {
    std::vector<double> errs;
    for (std::uint64_t seed = 1; seed <= 20; ++seed)
      errs.push_back(
          std::fabs(mc_reference(ic, spec, x, n, seed).estimate - exact));
    std::sort(errs.begin(), errs.end());
    const double median = 0.5 * (errs[9] + errs[10]);
    logn.push_back(std::log(double(n)));
    logerr.push_back(std::log(median));
  }
  const double slope = fit_slope(logn, logerr);
  CAPTURE(slope);
  CHECK(slope >= -0.65);
  CHECK(slope <= -0.35);
}

TEST_CASE("growth envelopes hold on random probes; factories validate") {
  auto dr = testutil::draws(305);
  std::vector<InitialCondition> ics = {
      heatnet::ridge_softplus_ic(dr.normal_vector(3), 2.0),
      heatnet::ridge_ic("softplus", dr.normal_vector(3), -1.0),
      heatnet::ridge_ic("logistic", dr.normal_vector(3), 0.4),
      heatnet::ridge_ic("sin", dr.normal_vector(3), 0.1),
      heatnet::linear_ic(dr.normal_vector(3), -3.0),
      heatnet::squared_norm_ic(3, 5.0),
  };
  for (const auto& ic : ics) {
    for (int rep = 0; rep < 200; ++rep) {
      Eigen::VectorXd x = dr.normal_vector(3, 7.0);
      CAPTURE(int(ic.kind));
      CHECK(heatnet::envelope_holds(ic, x));
    }
  }

  CHECK_THROWS_AS(heatnet::ridge_ic("tanh", Eigen::VectorXd::Ones(2), 0.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(heatnet::ridge_softplus_ic(Eigen::VectorXd(), 0.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(heatnet::squared_norm_ic(0, 0.0), std::invalid_argument);
}

TEST_CASE("cube Lipschitz bounds dominate sampled gradient norms") {
  auto dr = testutil::draws(307);
  const double a = -1.5, b = 2.0;
  std::vector<InitialCondition> ics = {
      heatnet::ridge_softplus_ic(dr.normal_vector(3), 0.5),
      heatnet::ridge_ic("logistic", dr.normal_vector(3), 0.2),
      heatnet::linear_ic(dr.normal_vector(3), 0.0),
      heatnet::squared_norm_ic(3, 1.0),
  };
  for (const auto& ic : ics) {
    const double lip = ic.lipschitz_on_cube(a, b);
    for (int rep = 0; rep < 100; ++rep) {
      Eigen::VectorXd x(3);
      for (int i = 0; i < 3; ++i) x[i] = a + (b - a) * dr.uniform();
      Eigen::VectorXd grad(3);
      const double h = 1e-6;
      for (int i = 0; i < 3; ++i) {
        Eigen::VectorXd xp = x, xm = x;
        xp[i] += h;
        xm[i] -= h;
        grad[i] = (ic(xp) - ic(xm)) / (2.0 * h);
      }
      CHECK(grad.norm() <= lip * (1.0 + 1e-6) + 1e-9);
    }
  }
}
