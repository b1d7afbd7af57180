#pragma once

#include <vector>

#include "heatnet/network.hpp"

namespace heatnet {

// Affine map x -> A x + b.
struct AffineMap {
  Eigen::MatrixXd A;
  Eigen::VectorXd b;
};

// Replace the first layer by (W_1 G, W_1 delta + B_1), so the new network
// realizes y -> R(net)(G y + delta).  G may be rectangular (l_0 x e);
// depth and all later layers are unchanged.
Network precompose_affine(const Network& net, const Eigen::MatrixXd& G,
                          const Eigen::VectorXd& delta);

// The n-fold averaging construction.  Given maps (gamma_k, delta_k), the
// result psi stacks the shifted first layers vertically, repeats every
// hidden layer as an n-block diagonal, and scales the concatenated output
// layer by 1/n, so that
//     R(psi)(x) = (1/n) * sum_k R(net)(gamma_k x + delta_k)
// holds exactly (up to float roundoff) and the counters obey, exactly,
//     neurons(psi) = l_0 + n*(l_1 + ... + l_{L-1}) + l_L
//     params(psi)  = n l_1 (l_0+1) + sum_{k=2}^{L-1} n l_k (n l_{k-1} + 1)
//                    + n l_L l_{L-1} + l_L
//     depth(psi)   = depth(net),   nonzero(psi) <= n * params(net).
// Requires scalar output (l_L = 1) and a non-empty map list with a common
// input dimension.  Blocks are materialized densely; a size guard rejects
// ensembles whose hidden blocks would not fit in memory.
Network average_ensemble(const Network& net,
                         const std::vector<AffineMap>& maps);

}  // namespace heatnet
