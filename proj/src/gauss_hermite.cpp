#include "heatnet/gauss_hermite.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

namespace heatnet {

namespace {

// Christoffel-function weight at node x: w = mu0 / sum_k ptilde_k(x)^2 over
// the orthonormal recurrence b_{k+1} ptilde_{k+1} = x ptilde_k - b_k
// ptilde_{k-1}, b_k = sqrt(k/2).  Evaluated at an eigenvalue of the Jacobi
// matrix the forward recurrence is stable; extreme nodes overflow double
// range, so the iterates are rescaled and the weight underflows to exact 0
// (its true value is below 2^-1000 there).
double christoffel_weight(double x, int n) {
  const double mu0 = std::sqrt(M_PI);
  double p_prev = 0.0, p_cur = 1.0;
  double sum = 1.0;
  int rescales = 0;
  for (int k = 0; k + 1 < n; ++k) {
    const double bk = std::sqrt(k / 2.0);
    const double bk1 = std::sqrt((k + 1) / 2.0);
    const double p_next = (x * p_cur - bk * p_prev) / bk1;
    p_prev = p_cur;
    p_cur = p_next;
    sum += p_cur * p_cur;
    if (std::fabs(p_cur) > 0x1p500) {
      p_prev *= 0x1p-500;
      p_cur *= 0x1p-500;
      sum *= 0x1p-1000;
      ++rescales;
    }
  }
  double w = mu0 / sum;
  for (int r = 0; r < rescales; ++r) w *= 0x1p-1000;  // may underflow to 0
  return w;
}

GaussHermiteRule compute_rule(int n) {
  Eigen::VectorXd diag = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd subdiag(std::max(n - 1, 0));
  for (int k = 1; k < n; ++k) subdiag[k - 1] = std::sqrt(k / 2.0);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  es.computeFromTridiagonal(diag, subdiag, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("gauss_hermite: eigendecomposition failed");
  GaussHermiteRule rule;
  rule.nodes = es.eigenvalues();  // ascending
  rule.weights.resize(n);
  for (int i = 0; i < n; ++i)
    rule.weights[i] = christoffel_weight(rule.nodes[i], n);
  return rule;
}

}  // namespace

const GaussHermiteRule& gauss_hermite(int n) {
  if (n < 1) throw std::invalid_argument("gauss_hermite: n must be >= 1");
  static std::mutex mtx;
  static std::map<int, GaussHermiteRule> cache;  // node references are stable
  std::lock_guard<std::mutex> lock(mtx);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, compute_rule(n)).first;
  return it->second;
}

double gaussian_expectation(const std::function<double(double)>& f,
                            double mean, double stddev, int n) {
  if (stddev < 0.0)
    throw std::invalid_argument("gaussian_expectation: stddev must be >= 0");
  if (stddev == 0.0) return f(mean);
  const GaussHermiteRule& rule = gauss_hermite(n);
  const double scale = stddev * std::sqrt(2.0);
  double acc = 0.0;
  for (int i = 0; i < n; ++i)
    acc += rule.weights[i] * f(mean + scale * rule.nodes[i]);
  return acc / std::sqrt(M_PI);
}

}  // namespace heatnet
