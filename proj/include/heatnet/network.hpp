#pragma once

#include <Eigen/Dense>
#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <vector>

#include "heatnet/activation.hpp"
#include "json.hpp"

namespace heatnet {

// Thrown when layer dimensions do not chain; layer_index is 1-based like
// the layer numbering in error messages.
class NetworkShapeError : public std::invalid_argument {
 public:
  NetworkShapeError(int layer_index, const std::string& what)
      : std::invalid_argument(what), layer_index(layer_index) {}
  int layer_index;
};

struct Layer {
  Eigen::MatrixXd W;  // l_k x l_{k-1}
  Eigen::VectorXd b;  // l_k
};

// Feedforward network: L >= 2 affine layers, componentwise activation on
// all but the last.  Immutable by convention after construction; realize
// and gradient are pure.
struct Network {
  Activation activation = Activation::softplus;
  std::vector<Layer> layers;

  Eigen::Index input_dim() const { return layers.front().W.cols(); }
  Eigen::Index output_dim() const { return layers.back().W.rows(); }
  // Shape vector (l_0, ..., l_L).
  std::vector<Eigen::Index> shape() const;

  // Throws NetworkShapeError if dimensions do not chain, a bias length
  // mismatches its weight matrix, or fewer than 2 layers are present.
  void validate() const;
};

// W_L x_{L-1} + B_L with x_k = act(W_k x_{k-1} + B_k) for 0 < k < L; the
// output layer applies no activation.
Eigen::VectorXd realize(const Network& net, const Eigen::VectorXd& x);

// Batched realize: columns of X are input points, columns of the result
// are outputs.  Processes points in fixed-size chunks so memory stays
// bounded for wide averaged networks; the only evaluation path used by
// grid sweeps, so grid results are reproducible byte-for-byte.
Eigen::MatrixXd realize_many(const Network& net, const Eigen::MatrixXd& X);

// Reverse-mode gradient of the scalar realization; requires l_L == 1.
Eigen::VectorXd gradient(const Network& net, const Eigen::VectorXd& x);

// The four complexity counters.  params = sum l_k (l_{k-1}+1);
// nonzero_params counts nonzero weight/bias entries; neurons = sum of all
// l_k including input and output; depth = number of affine layers + 1.
// Arbitrary-precision because averaged networks grow like n^2.
struct NetworkCounts {
  mpz_class params;
  mpz_class nonzero_params;
  mpz_class neurons;
  mpz_class depth;
};
NetworkCounts counters(const Network& net);

// Polynomial-growth probe: checks |R(x)| <= c d^z (1 + ||x||^zz) and
// ||grad R(x)|| <= c d^w (1 + ||x||^ww) at each probe point.
struct GrowthViolation {
  Eigen::VectorXd x;
  double lhs;
  double rhs;
  bool gradient_bound;  // false: value bound, true: gradient bound
};
struct GrowthReport {
  std::size_t points_checked = 0;
  std::vector<GrowthViolation> violations;
  bool ok() const { return violations.empty(); }
};
GrowthReport growth_check(const Network& net, double c, double z, double zz,
                          double w, double ww,
                          const std::vector<Eigen::VectorXd>& probe_points);

// JSON form: {"activation": ..., "layers": [{"rows", "cols",
// "weights" (row-major), "bias"}, ...]}.  Doubles round-trip exactly.
nlohmann::json to_json(const Network& net);
Network network_from_json(const nlohmann::json& j);
void save_network(const Network& net, const std::string& path);
Network load_network(const std::string& path);

}  // namespace heatnet
