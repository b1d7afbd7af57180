#include "heatnet/sup_error.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "heatnet/sobol.hpp"

namespace heatnet {

namespace {

double point_error(const Network& psi, const InitialCondition& ic,
                   const FlowSpec& spec, const Eigen::VectorXd& x) {
  return std::fabs(exact_solution(ic, spec, x) - realize(psi, x)[0]);
}

}  // namespace

int default_sup_resolution(int d) {
  switch (d) {
    case 1:
      return 256;
    case 2:
      return 48;
    case 3:
      return 16;
    default:
      return 4096;
  }
}

SupEstimate sup_error(const Network& psi, const InitialCondition& ic,
                      const FlowSpec& spec, double a, double b,
                      SupMethod method, int resolution) {
  const Eigen::Index d = spec.dim();
  if (psi.input_dim() != d || ic.dim != d)
    throw std::invalid_argument(
        "sup_error: network, initial condition, and flow must share one "
        "dimension");
  if (psi.output_dim() != 1)
    throw std::invalid_argument("sup_error needs a scalar-output network");
  if (!(b > a)) throw std::invalid_argument("domain must satisfy a < b");
  if (!oracle_supports(ic, spec))
    throw UnsupportedCombination(
        "sup_error: no oracle for this (initial condition, flow) pair");
  const int res = resolution > 0 ? resolution
                                 : default_sup_resolution(static_cast<int>(d));

  SupEstimate est;
  est.method = method;

  if (method == SupMethod::tensor_grid) {
    if (d > 3)
      throw std::invalid_argument(
          "tensor_grid supports d <= 3; use low_discrepancy");
    const double h = (b - a) / res;
    std::int64_t npts = 1;
    for (Eigen::Index k = 0; k < d; ++k) npts *= res + 1;

    Eigen::MatrixXd X(d, npts);
    std::vector<int> idx(static_cast<std::size_t>(d), 0);
    for (std::int64_t col = 0; col < npts; ++col) {
      for (Eigen::Index k = 0; k < d; ++k)
        X(k, col) = a + idx[static_cast<std::size_t>(k)] * h;
      Eigen::Index k = d - 1;
      while (k >= 0 && ++idx[static_cast<std::size_t>(k)] > res)
        idx[static_cast<std::size_t>(k--)] = 0;
    }
    const Eigen::MatrixXd Y = realize_many(psi, X);

    double sup = 0.0;
    double lip_psi = 0.0;
    for (std::int64_t col = 0; col < npts; ++col) {
      const Eigen::VectorXd x = X.col(col);
      sup = std::max(sup, std::fabs(exact_solution(ic, spec, x) - Y(0, col)));
      lip_psi = std::max(lip_psi, gradient(psi, x).norm());
    }
    est.grid_sup = sup;
    est.points_used = npts;
    est.certified_sup =
        sup + h * std::sqrt(static_cast<double>(d)) *
                  (ic.lipschitz_on_cube(a, b) + lip_psi) / 2.0;
    est.has_certified = true;
    return est;
  }

  if (d > 16)
    throw std::invalid_argument("low_discrepancy supports d <= 16");

  // Scan phase: errors at `res` Sobol points, tracking the four worst.
  SobolSequence seq(static_cast<int>(d));
  struct Start {
    double err;
    Eigen::VectorXd x;
  };
  std::vector<Start> worst;
  double sup = 0.0;
  for (int i = 0; i < res; ++i) {
    const Eigen::VectorXd x =
        (a + (b - a) * seq.next().array()).matrix();
    const double err = point_error(psi, ic, spec, x);
    sup = std::max(sup, err);
    worst.push_back({err, x});
    std::sort(worst.begin(), worst.end(),
              [](const Start& l, const Start& r) { return l.err > r.err; });
    if (worst.size() > 4) worst.pop_back();
  }
  est.points_used = res;

  // Refinement: 25 coordinate-descent passes from each of the four worst
  // points (100 passes total), climbing toward larger error.
  for (const Start& start : worst) {
    Eigen::VectorXd cur = start.x;
    double cur_err = start.err;
    double step = (b - a) / 8.0;
    for (int it = 0; it < 25; ++it) {
      bool improved = false;
      for (Eigen::Index j = 0; j < d; ++j) {
        for (double sgn : {-1.0, 1.0}) {
          Eigen::VectorXd cand = cur;
          cand[j] = std::clamp(cur[j] + sgn * step, a, b);
          const double e = point_error(psi, ic, spec, cand);
          ++est.points_used;
          if (e > cur_err) {
            cur_err = e;
            cur = cand;
            improved = true;
          }
        }
      }
      if (!improved) step *= 0.5;
    }
    sup = std::max(sup, cur_err);
  }
  est.grid_sup = sup;
  est.has_certified = false;
  return est;
}

}  // namespace heatnet
