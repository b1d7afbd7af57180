#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <vector>

namespace heatnet {

// Constant-coefficient transport/diffusion data for the PDE
// du/dt = A : grad^2 u + mu . grad u on [0,T].  The matching SDE has
// diffusion S = sqrt(2A) (so the heat equation A = I gives S = sqrt(2) I);
// with constant drift the time-T flow is exactly x + T mu + S W_T.
struct FlowSpec {
  Eigen::VectorXd mu;
  Eigen::MatrixXd A;
  double T = 1.0;
  Eigen::MatrixXd S;  // sqrt(2A), fixed at construction

  // Validates symmetry (1e-12 relative) and positive semidefiniteness
  // (eigenvalues >= -1e-10, clamped to 0 before the square root).
  FlowSpec(Eigen::VectorXd mu_in, Eigen::MatrixXd A_in, double T_in);

  Eigen::Index dim() const { return mu.size(); }
};

// One Monte Carlo realization of the flow as an affine map
// x -> Wmat x + Bvec.  Constant drift makes Wmat the identity exactly and
// Bvec = T mu + sqrt(T) S g with g a standard normal vector.
struct AffineSample {
  Eigen::MatrixXd Wmat;
  Eigen::VectorXd Bvec;

  Eigen::VectorXd apply(const Eigen::VectorXd& x) const {
    return Wmat * x + Bvec;
  }
};

// n independent samples; sample k, component j consumes the counter-based
// normal at index k*d + j of stream (seed, kFlow, stream_sub), so results
// do not depend on evaluation order and prefixes agree across different n.
std::vector<AffineSample> sample_affine_flows(const FlowSpec& spec,
                                              std::int64_t n,
                                              std::uint64_t seed,
                                              std::uint32_t stream_sub = 0);

struct CheckResult {
  double empirical = 0.0;
  double bound = 0.0;
  bool ok = false;
};

// (E ||A W_t||^p)^{1/p} against sqrt(max{1,p-1} Trace(A^T A) t).
CheckResult gaussian_moment_check(const Eigen::MatrixXd& A, double t,
                                  double p, std::int64_t n,
                                  std::uint64_t seed);

// (E ||X_T^x||^p)^{1/p} against ||x|| + ||mu|| T
// + sqrt(max{1,p-1} Trace(S^T S) T); constant drift, so no e^{cT} factor.
CheckResult apriori_moment_check(const FlowSpec& spec,
                                 const Eigen::VectorXd& x, double p,
                                 std::int64_t n, std::uint64_t seed);

// (E ||X_T^x - X_T^y||^p)^{1/p} with common noise; constant drift cancels
// the noise exactly, so empirical = ||x - y|| to machine precision.
CheckResult contraction_check(const FlowSpec& spec, const Eigen::VectorXd& x,
                              const Eigen::VectorXd& y, double p,
                              std::int64_t n, std::uint64_t seed);

}  // namespace heatnet
