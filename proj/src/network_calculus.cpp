#include "heatnet/network_calculus.hpp"

#include <stdexcept>
#include <string>

namespace heatnet {

Network precompose_affine(const Network& net, const Eigen::MatrixXd& G,
                          const Eigen::VectorXd& delta) {
  net.validate();
  if (G.rows() != net.input_dim() || delta.size() != net.input_dim())
    throw std::invalid_argument(
        "precompose_affine: map outputs length " + std::to_string(G.rows()) +
        "/" + std::to_string(delta.size()) + ", network expects " +
        std::to_string(net.input_dim()));
  Network out = net;
  out.layers[0].W = net.layers[0].W * G;
  out.layers[0].b = net.layers[0].W * delta + net.layers[0].b;
  return out;
}

Network average_ensemble(const Network& net,
                         const std::vector<AffineMap>& maps) {
  net.validate();
  if (maps.empty())
    throw std::invalid_argument("average_ensemble: empty map list");
  if (net.output_dim() != 1)
    throw std::invalid_argument(
        "average_ensemble: needs scalar output, got " +
        std::to_string(net.output_dim()));
  const Eigen::Index l0 = net.input_dim();
  const Eigen::Index d = maps.front().A.cols();
  for (std::size_t k = 0; k < maps.size(); ++k) {
    if (maps[k].A.rows() != l0 || maps[k].b.size() != l0)
      throw std::invalid_argument(
          "average_ensemble: map " + std::to_string(k) + " outputs length " +
          std::to_string(maps[k].A.rows()) + ", network expects " +
          std::to_string(l0));
    if (maps[k].A.cols() != d)
      throw std::invalid_argument(
          "average_ensemble: map " + std::to_string(k) + " has input dim " +
          std::to_string(maps[k].A.cols()) + ", map 0 has " +
          std::to_string(d));
  }
  const Eigen::Index n = static_cast<Eigen::Index>(maps.size());
  const std::size_t L = net.layers.size();

  // Dense hidden blocks scale like (n l_k)^2; refuse absurd allocations.
  constexpr double kMaxEntries = 1.5e8;
  double entries = static_cast<double>(n) * net.layers[0].W.rows() * d;
  for (std::size_t k = 1; k + 1 < L; ++k)
    entries += static_cast<double>(n) * net.layers[k].W.rows() *
               static_cast<double>(n) * net.layers[k].W.cols();
  entries += static_cast<double>(n) * net.layers[L - 1].W.cols();
  if (entries > kMaxEntries)
    throw std::length_error(
        "average_ensemble: dense ensemble would need " +
        std::to_string(entries) + " matrix entries");

  Network psi;
  psi.activation = net.activation;
  psi.layers.resize(L);

  // First layer: rows of (W_1 gamma_k) stacked, bias W_1 delta_k + B_1.
  const Eigen::MatrixXd& W1 = net.layers[0].W;
  const Eigen::VectorXd& B1 = net.layers[0].b;
  const Eigen::Index l1 = W1.rows();
  psi.layers[0].W.resize(n * l1, d);
  psi.layers[0].b.resize(n * l1);
  for (Eigen::Index k = 0; k < n; ++k) {
    psi.layers[0].W.middleRows(k * l1, l1) = W1 * maps[k].A;
    psi.layers[0].b.segment(k * l1, l1) = W1 * maps[k].b + B1;
  }

  // Hidden layers: n-block diagonal with repeated bias (empty when L = 2).
  for (std::size_t k = 1; k + 1 < L; ++k) {
    const Eigen::MatrixXd& Wk = net.layers[k].W;
    const Eigen::VectorXd& Bk = net.layers[k].b;
    const Eigen::Index r = Wk.rows(), c = Wk.cols();
    psi.layers[k].W = Eigen::MatrixXd::Zero(n * r, n * c);
    psi.layers[k].b.resize(n * r);
    for (Eigen::Index blk = 0; blk < n; ++blk) {
      psi.layers[k].W.block(blk * r, blk * c, r, c) = Wk;
      psi.layers[k].b.segment(blk * r, r) = Bk;
    }
  }

  // Output layer: (1/n) * (W_L ... W_L), bias B_L.
  const Eigen::MatrixXd& WL = net.layers[L - 1].W;
  const Eigen::Index lprev = WL.cols();
  psi.layers[L - 1].W.resize(1, n * lprev);
  for (Eigen::Index k = 0; k < n; ++k)
    psi.layers[L - 1].W.middleCols(k * lprev, lprev) =
        WL / static_cast<double>(n);
  psi.layers[L - 1].b = net.layers[L - 1].b;

  psi.validate();
  return psi;
}

}  // namespace heatnet
