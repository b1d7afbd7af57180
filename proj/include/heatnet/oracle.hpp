#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>

#include "heatnet/flow.hpp"

namespace heatnet {

// |phi(x)| <= c (1 + ||x||^gamma) on all of R^d.
struct GrowthEnvelope {
  double c = 0.0;
  double gamma = 0.0;
};

// A named 1D ridge profile together with the facts the solution oracle
// needs about it: growth of the profile and a global derivative bound.
struct RidgeProfile {
  std::function<double(double)> value;
  std::function<double(double)> derivative;
  GrowthEnvelope envelope;
  double derivative_sup = 0.0;
};

// Catalog lookup; knows "softplus", "logistic", "sin".
const RidgeProfile& ridge_profile(const std::string& name);

// Initial data phi for the PDE, restricted to shapes whose time-T solution
// admits an independent high-accuracy evaluation.
struct InitialCondition {
  enum class Kind { ridge_softplus, ridge, linear, squared_norm };

  Kind kind = Kind::linear;
  Eigen::VectorXd w;    // ridge direction / linear coefficients
  double shift = 0.0;   // K (ridge_softplus), b (ridge/linear), c0 (squared_norm)
  std::string profile;  // named 1D profile, kind == ridge only
  Eigen::Index dim = 0;

  double operator()(const Eigen::VectorXd& x) const;

  // Declared (not inferred) polynomial-growth envelope; sound globally.
  GrowthEnvelope envelope() const;

  // sup ||grad phi|| over the cube [a,b]^d.  For every (ic, spec) pair the
  // oracle supports this also bounds the Lipschitz constant of u(T, .) on
  // that cube: grad u = E[grad phi(X)] for the ridge/linear variants, and
  // the squared-norm variant is only supported where u = ||x||^2 + 2dT + c0.
  double lipschitz_on_cube(double a, double b) const;
};

// Factories validate their data and probe the declared envelope.
InitialCondition ridge_softplus_ic(Eigen::VectorXd w, double K);  // ln(1+e^{w.x-K})+K
InitialCondition ridge_ic(std::string profile, Eigen::VectorXd w, double b);
InitialCondition linear_ic(Eigen::VectorXd w, double b);
InitialCondition squared_norm_ic(Eigen::Index dim, double c0);  // ||x||^2 + c0

bool envelope_holds(const InitialCondition& ic, const Eigen::VectorXd& x);

struct UnsupportedCombination : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// False exactly when the closed form is missing: squared_norm with
// drift or with A != I.
bool oracle_supports(const InitialCondition& ic, const FlowSpec& spec);

struct OracleValue {
  double value = 0.0;
  double error_estimate = 0.0;  // |I_nodes - I_{2 nodes}| for quadrature paths
};

// u(T,x) = E[phi(x + T mu + sqrt(T) S W)].  Linear and squared-norm data
// evaluate in closed form; ridge data reduce to the 1D Gaussian integral
// E[g(m + sigma Z)] with m = w.x + T w.mu (+ b), sigma^2 = 2T w^T A w,
// by Gauss-Hermite quadrature starting at `nodes` points and doubling until
// |I_n - I_2n| <= 1e-12 (1 + |I_2n|) or the doubled count would exceed
// max_nodes.  error_estimate is the final doubling residual.
OracleValue exact_solution_detailed(const InitialCondition& ic,
                                    const FlowSpec& spec,
                                    const Eigen::VectorXd& x, int nodes = 200,
                                    int max_nodes = 8192);

// Same, but enforces the convergence contract: throws std::runtime_error
// when the node-doubling residual exceeds 1e-9.
double exact_solution(const InitialCondition& ic, const FlowSpec& spec,
                      const Eigen::VectorXd& x, int nodes = 200,
                      int max_nodes = 8192);

// Heat-kernel convolution (A = I, mu = 0) of an arbitrary pointwise
// function by tensor-product quadrature, y = x + 2 sqrt(T) u:
// u(T,x) = pi^{-d/2} * sum over node tuples of prod(w) * phi(...).
// Requires d <= 4 and env.gamma <= 8.
double kernel_convolution(const std::function<double(const Eigen::VectorXd&)>& phi,
                          const GrowthEnvelope& env, double T,
                          const Eigen::VectorXd& x, int nodes_per_axis = 40);

struct McEstimate {
  double estimate = 0.0;
  double stderr_est = 0.0;
};

// Plain Monte Carlo mean of phi(x + T mu + sqrt(T) S g) over n draws with
// sample standard error; deterministic per seed, stream disjoint from the
// builder's sampling stream.
McEstimate mc_reference(const InitialCondition& ic, const FlowSpec& spec,
                        const Eigen::VectorXd& x, std::int64_t n,
                        std::uint64_t seed);

}  // namespace heatnet
