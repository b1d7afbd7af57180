#pragma once

#include <cstdint>

#include "heatnet/network.hpp"
#include "heatnet/oracle.hpp"

namespace heatnet {

enum class SupMethod { tensor_grid, low_discrepancy };

// Estimate of sup_{x in [a,b]^d} |u(T,x) - R(psi)(x)|.  tensor_grid also
// certifies: certified_sup = grid_sup + h sqrt(d) (Lip_u + Lip_psi) / 2,
// with Lip_psi measured as the max gradient norm over the grid and Lip_u
// the initial condition's cube Lipschitz bound (which dominates the
// solution's for every supported flow).  low_discrepancy reports only a
// lower bound on the sup (has_certified stays false).
struct SupEstimate {
  double grid_sup = 0.0;
  double certified_sup = 0.0;
  bool has_certified = false;
  std::int64_t points_used = 0;
  SupMethod method = SupMethod::tensor_grid;
};

// Default per-axis resolution for tensor grids (d <= 3) and default point
// count for low-discrepancy scans (d >= 4).
int default_sup_resolution(int d);

// psi, ic, and spec must share one dimension; (ic, spec) must be oracle
// supported.  tensor_grid requires d <= 3 and evaluates the (res+1)^d
// uniform grid including both endpoints; low_discrepancy requires d <= 16
// and scans `resolution` Sobol points, then runs 100 coordinate-descent
// refinement passes from the four worst points.  resolution <= 0 selects
// the default.
SupEstimate sup_error(const Network& psi, const InitialCondition& ic,
                      const FlowSpec& spec, double a, double b,
                      SupMethod method, int resolution = 0);

}  // namespace heatnet
