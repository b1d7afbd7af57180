#pragma once

#include <Eigen/Dense>

#include <functional>

namespace heatnet {

// Physicists' Gauss-Hermite rule: integral of f(t) exp(-t^2) dt over R
// is approximated by sum_i weights[i] * f(nodes[i]); exact for polynomials
// of degree <= 2n - 1.  Nodes are sorted ascending and symmetric about 0,
// weights sum to sqrt(pi).
struct GaussHermiteRule {
  Eigen::VectorXd nodes;
  Eigen::VectorXd weights;
};

// Computed via the symmetric tridiagonal Jacobi matrix (Golub-Welsch):
// zero diagonal, off-diagonal sqrt(k/2).  Rules are cached per n; the
// returned reference stays valid for the process lifetime and the cache
// is safe to hit from multiple threads.
const GaussHermiteRule& gauss_hermite(int n);

// E[f(mean + stddev Z)] for standard normal Z, via the substitution
// z = sqrt(2) t: pi^{-1/2} sum_i w_i f(mean + stddev sqrt(2) t_i).
double gaussian_expectation(const std::function<double(double)>& f,
                            double mean, double stddev, int n);

}  // namespace heatnet
