#include "heatnet/flow.hpp"

#include <cmath>
#include <stdexcept>

#include "heatnet/rng.hpp"

namespace heatnet {

FlowSpec::FlowSpec(Eigen::VectorXd mu_in, Eigen::MatrixXd A_in, double T_in)
    : mu(std::move(mu_in)), A(std::move(A_in)), T(T_in) {
  if (T <= 0.0) throw std::invalid_argument("FlowSpec: T must be positive");
  if (A.rows() != A.cols() || A.rows() != mu.size())
    throw std::invalid_argument("FlowSpec: A must be d x d with d = len(mu)");
  const double scale = std::max(1.0, A.cwiseAbs().maxCoeff());
  if ((A - A.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale)
    throw std::invalid_argument("FlowSpec: A is not symmetric");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(A);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("FlowSpec: eigendecomposition failed");
  Eigen::VectorXd lam = es.eigenvalues();
  for (Eigen::Index i = 0; i < lam.size(); ++i) {
    if (lam[i] < -1e-10)
      throw std::invalid_argument(
          "FlowSpec: A has negative eigenvalue " + std::to_string(lam[i]));
    lam[i] = std::max(lam[i], 0.0);
  }
  S = es.eigenvectors() *
      (2.0 * lam.array()).sqrt().matrix().asDiagonal() *
      es.eigenvectors().transpose();
}

std::vector<AffineSample> sample_affine_flows(const FlowSpec& spec,
                                              std::int64_t n,
                                              std::uint64_t seed,
                                              std::uint32_t stream_sub) {
  if (n < 1) throw std::invalid_argument("sample_affine_flows: n must be >= 1");
  const Eigen::Index d = spec.dim();
  const double sqrtT = std::sqrt(spec.T);
  const Eigen::VectorXd drift = spec.T * spec.mu;
  const rng::Stream stream{seed, rng::kFlow, stream_sub};
  std::vector<AffineSample> samples;
  samples.reserve(static_cast<std::size_t>(n));
  for (std::int64_t k = 0; k < n; ++k) {
    Eigen::VectorXd g(d);
    for (Eigen::Index j = 0; j < d; ++j)
      g[j] = stream.normal(static_cast<std::uint64_t>(k) * d + j);
    samples.push_back(
        {Eigen::MatrixXd::Identity(d, d), drift + sqrtT * (spec.S * g)});
  }
  return samples;
}

namespace {

// (mean of y^p)^{1/p} plus the relative standard error of that root,
// used for the 3-sigma slack in the ok verdict.
struct PowerMean {
  double root;
  double rel_stderr;
};

PowerMean power_mean(const std::vector<double>& norms, double p) {
  const double n = static_cast<double>(norms.size());
  double mean = 0.0;
  for (double v : norms) mean += std::pow(v, p);
  mean /= n;
  double var = 0.0;
  for (double v : norms) {
    const double dv = std::pow(v, p) - mean;
    var += dv * dv;
  }
  var /= n;
  if (mean <= 0.0) return {0.0, 0.0};
  const double se = std::sqrt(var / n);
  return {std::pow(mean, 1.0 / p), se / (p * mean)};
}

}  // namespace

CheckResult gaussian_moment_check(const Eigen::MatrixXd& A, double t,
                                  double p, std::int64_t n,
                                  std::uint64_t seed) {
  if (t <= 0.0 || p < 1.0 || n < 1)
    throw std::invalid_argument("gaussian_moment_check: need t>0, p>=1, n>=1");
  const Eigen::Index d = A.cols();
  const rng::Stream stream{seed, rng::kMomentCheck, 0};
  const double sqrtt = std::sqrt(t);
  std::vector<double> norms(static_cast<std::size_t>(n));
  for (std::int64_t k = 0; k < n; ++k) {
    Eigen::VectorXd g(d);
    for (Eigen::Index j = 0; j < d; ++j)
      g[j] = stream.normal(static_cast<std::uint64_t>(k) * d + j);
    norms[static_cast<std::size_t>(k)] = (A * (sqrtt * g)).norm();
  }
  const PowerMean pm = power_mean(norms, p);
  const double bound =
      std::sqrt(std::max(1.0, p - 1.0) * (A.transpose() * A).trace() * t);
  CheckResult r;
  r.empirical = pm.root;
  r.bound = bound;
  r.ok = r.empirical <= bound * (1.0 + 3.0 * pm.rel_stderr) + 1e-15;
  return r;
}

CheckResult apriori_moment_check(const FlowSpec& spec,
                                 const Eigen::VectorXd& x, double p,
                                 std::int64_t n, std::uint64_t seed) {
  if (p < 1.0 || n < 1)
    throw std::invalid_argument("apriori_moment_check: need p>=1, n>=1");
  const auto samples = sample_affine_flows(spec, n, seed, 1);
  std::vector<double> norms;
  norms.reserve(samples.size());
  for (const AffineSample& s : samples) norms.push_back(s.apply(x).norm());
  const PowerMean pm = power_mean(norms, p);
  const double bound =
      x.norm() + spec.mu.norm() * spec.T +
      std::sqrt(std::max(1.0, p - 1.0) *
                (spec.S.transpose() * spec.S).trace() * spec.T);
  CheckResult r;
  r.empirical = pm.root;
  r.bound = bound;
  r.ok = r.empirical <= bound * (1.0 + 3.0 * pm.rel_stderr) + 1e-15;
  return r;
}

CheckResult contraction_check(const FlowSpec& spec, const Eigen::VectorXd& x,
                              const Eigen::VectorXd& y, double p,
                              std::int64_t n, std::uint64_t seed) {
  if (p < 1.0 || n < 1)
    throw std::invalid_argument("contraction_check: need p>=1, n>=1");
  const auto samples = sample_affine_flows(spec, n, seed, 2);
  std::vector<double> norms;
  norms.reserve(samples.size());
  for (const AffineSample& s : samples)
    norms.push_back((s.apply(x) - s.apply(y)).norm());  // common noise
  const PowerMean pm = power_mean(norms, p);
  const double bound = (x - y).norm();
  CheckResult r;
  r.empirical = pm.root;
  r.bound = bound;
  r.ok = r.empirical <= bound + 1e-12 * (1.0 + bound);
  return r;
}

}  // namespace heatnet
