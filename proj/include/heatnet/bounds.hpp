#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <functional>
#include <string>

#include "heatnet/rng.hpp"

namespace heatnet {

// Outcome of one analytic-inequality check.  ok means lhs <= rhs up to the
// slack stated in context (statistical checks use 3 standard errors,
// quadrature-backed ones a fixed relative margin).
struct BoundReport {
  double lhs = 0.0;
  double rhs = 0.0;
  bool ok = false;
  std::string context;
};

// Two-sided Stirling check sqrt(2 pi / x) (x/e)^x <= Gamma(x) <=
// sqrt(2 pi / x) (x/e)^x e^{1/(12x)}.  lhs is the Stirling lower bound,
// rhs is Gamma(x); ok requires both sides (evaluated in log domain).
BoundReport gamma_sandwich(double x);

// Volume of the d-dimensional Euclidean unit ball: exact value
// pi^{d/2} / Gamma(d/2 + 1) and the elementary upper bound
// (d pi)^{-1/2} (2 pi e / d)^{d/2}; exact <= bound for every d >= 1.
struct BallVolume {
  double exact = 0.0;
  double bound = 0.0;
};
BallVolume ball_volume(int d);

// Upper bound sqrt(max{1, p-1}) for the p-Kahane-Khintchine constant;
// the definition-level constant (a supremum over Banach spaces) is not
// computable and is never evaluated directly.
double kahane_bound(double p);

// Vector sampler with known mean and known central moments, used to test
// the Monte Carlo L^p bound against closed-form right-hand sides.  draw
// consumes stream indices [base, base + dim) so sample sequences are
// reproducible and prefix-stable.
struct VectorSampler {
  std::string name;
  int dim = 0;
  Eigen::VectorXd mean;
  // (E ||X - EX||^p)^{1/p}; throws std::invalid_argument for a p it does
  // not know in closed form.
  std::function<double(double)> central_moment_root;
  std::function<Eigen::VectorXd(rng::Stream&, std::uint64_t)> draw;
};
VectorSampler gaussian_sampler(int d);      // N(0, I_d); any p >= 1
VectorSampler uniform_cube_sampler(int d);  // U[0,1]^d; p in {2, 4}
VectorSampler constant_sampler(const Eigen::VectorXd& v);

// Empirical check of (E || EX - (1/n) sum X_i ||^p)^{1/p} <=
// 2 K_p (E ||X - EX||^p)^{1/p} / sqrt(n) with K_p = kahane_bound(p).
// lhs is an outer-Monte-Carlo power mean; ok allows 3 standard errors.
// Requires p >= 2.
BoundReport mc_lp_bound_check(const VectorSampler& dist, double p, int n,
                              int outer, std::uint64_t seed);

// Scalar C^1 field on a cube, given by pointwise value and gradient.
struct ScalarField {
  std::function<double(const Eigen::VectorXd&)> value;
  std::function<Eigen::VectorXd(const Eigen::VectorXd&)> gradient;
};

// Default tensor-grid resolution per axis for d = 1, 2, 3.
int default_grid_res(int d);

// Sobolev embedding check on (0,1)^d:
//   sup |f| <= 8 sqrt(e) [ integral (|f|^q + ||grad f||^q) ]^{1/q},
// q = max{2, d^2}.  lhs is the grid max of |f|, rhs the trapezoidal
// evaluation of the right-hand side; ok allows 1% integration slack.
// d must be in {1, 2, 3}; grid_res <= 0 selects default_grid_res(d).
BoundReport sobolev_sup_check(const ScalarField& f, int d, int grid_res = 0);

// I.i.d. smooth random field on [a,b]^dim with known mean field and sup
// envelopes M0 >= sup |xi|, M1 >= sup ||grad xi||.  draw returns one
// realized sample as a value function, consuming draws_per_sample stream
// indices starting at base.
struct RandomFieldSampler {
  std::string name;
  int dim = 0;
  double a = 0.0, b = 1.0;
  double M0 = 0.0, M1 = 0.0;
  std::function<double(const Eigen::VectorXd&)> mean_field;
  std::function<std::function<double(const Eigen::VectorXd&)>(
      rng::Stream&, std::uint64_t)>
      draw;
  std::uint64_t draws_per_sample = 1;
};

// The sin(w.x + Z), Z ~ N(0,1) family on [a,b]^d: mean field
// sin(w.x) e^{-1/2}, envelopes M0 = 1, M1 = ||w||.
RandomFieldSampler sin_field_sampler(const Eigen::VectorXd& w, double a,
                                     double b);
// Field with no randomness: every sample equals the given function.
RandomFieldSampler deterministic_field_sampler(
    std::function<double(const Eigen::VectorXd&)> f, int dim, double a,
    double b, double M0, double M1);

// Uniform Monte Carlo Sobolev check:
//   (E [ sup_{[a,b]^d} | E xi - (1/n) sum xi_i |^p ])^{1/p}
//     <= (4 K 8 sqrt(e) / sqrt(n)) (M0 + (b-a) M1),
// K = kahane_bound(max{2,p}).  The sup is taken over a dense grid; ok
// allows 3 standard errors plus 2% grid slack.  d must be 1 or 2, and for
// d = 2 the Sobolev constant 8 sqrt(e) is only justified for
// max{2,p} >= 4, so smaller p are rejected.
BoundReport mc_sobolev_uniform_check(const RandomFieldSampler& field,
                                     double p, int n, int outer,
                                     std::uint64_t seed);

}  // namespace heatnet
