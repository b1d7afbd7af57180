#include "heatnet/network.hpp"

#include <cmath>
#include <fstream>

namespace heatnet {

namespace {

// Stable softplus: max(x,0) + log1p(exp(-|x|)); same formula scalar and
// batched so both evaluation paths agree.
inline void apply_activation_inplace(Activation a, Eigen::MatrixXd& Z) {
  if (a == Activation::softplus) {
    Z = Z.array().max(0.0) + (-Z.array().abs()).exp().log1p();
  } else {
    Z = Z.array().unaryExpr(
        [](double v) { return activation_value(Activation::logistic, v); });
  }
}

constexpr Eigen::Index kChunk = 256;  // grid points per evaluation block

}  // namespace

std::vector<Eigen::Index> Network::shape() const {
  std::vector<Eigen::Index> s;
  s.reserve(layers.size() + 1);
  s.push_back(layers.front().W.cols());
  for (const Layer& l : layers) s.push_back(l.W.rows());
  return s;
}

void Network::validate() const {
  if (layers.size() < 2)
    throw NetworkShapeError(static_cast<int>(layers.size()),
                            "network needs at least 2 affine layers, got " +
                                std::to_string(layers.size()));
  for (std::size_t k = 0; k < layers.size(); ++k) {
    const Layer& l = layers[k];
    if (l.b.size() != l.W.rows())
      throw NetworkShapeError(
          static_cast<int>(k + 1),
          "layer " + std::to_string(k + 1) + ": bias length " +
              std::to_string(l.b.size()) + " != weight rows " +
              std::to_string(l.W.rows()));
    if (k > 0 && l.W.cols() != layers[k - 1].W.rows())
      throw NetworkShapeError(
          static_cast<int>(k + 1),
          "layer " + std::to_string(k + 1) + ": expects input of length " +
              std::to_string(l.W.cols()) + " but previous layer outputs " +
              std::to_string(layers[k - 1].W.rows()));
  }
}

Eigen::MatrixXd realize_many(const Network& net, const Eigen::MatrixXd& X) {
  if (X.rows() != net.input_dim())
    throw NetworkShapeError(1, "input has " + std::to_string(X.rows()) +
                                   " rows, layer 1 expects " +
                                   std::to_string(net.input_dim()));
  const Eigen::Index m = X.cols();
  Eigen::MatrixXd out(net.output_dim(), m);
  const std::size_t L = net.layers.size();
  for (Eigen::Index start = 0; start < m; start += kChunk) {
    const Eigen::Index count = std::min(kChunk, m - start);
    Eigen::MatrixXd a = X.middleCols(start, count);
    for (std::size_t k = 0; k + 1 < L; ++k) {
      Eigen::MatrixXd z =
          (net.layers[k].W * a).colwise() + net.layers[k].b;
      apply_activation_inplace(net.activation, z);
      a = std::move(z);
    }
    out.middleCols(start, count) =
        (net.layers[L - 1].W * a).colwise() + net.layers[L - 1].b;
  }
  return out;
}

Eigen::VectorXd realize(const Network& net, const Eigen::VectorXd& x) {
  return realize_many(net, x);
}

Eigen::VectorXd gradient(const Network& net, const Eigen::VectorXd& x) {
  if (net.output_dim() != 1)
    throw std::invalid_argument(
        "gradient needs scalar output, network outputs " +
        std::to_string(net.output_dim()));
  if (x.size() != net.input_dim())
    throw NetworkShapeError(1, "gradient input has length " +
                                   std::to_string(x.size()) +
                                   ", layer 1 expects " +
                                   std::to_string(net.input_dim()));
  const std::size_t L = net.layers.size();
  // Forward pass keeping pre-activations.
  std::vector<Eigen::VectorXd> pre(L - 1);
  Eigen::VectorXd a = x;
  for (std::size_t k = 0; k + 1 < L; ++k) {
    pre[k] = net.layers[k].W * a + net.layers[k].b;
    a = pre[k].unaryExpr(
        [&](double v) { return activation_value(net.activation, v); });
  }
  // Backward pass: v starts as the single output row.
  Eigen::RowVectorXd v = net.layers[L - 1].W.row(0);
  for (std::size_t k = L - 1; k-- > 0;) {
    Eigen::RowVectorXd scaled =
        v.array() * pre[k]
                        .unaryExpr([&](double z) {
                          return activation_derivative(net.activation, z);
                        })
                        .transpose()
                        .array();
    v = scaled * net.layers[k].W;
  }
  return v.transpose();
}

NetworkCounts counters(const Network& net) {
  NetworkCounts c{0, 0, 0, 0};
  c.depth = static_cast<unsigned long>(net.layers.size() + 1);
  c.neurons = static_cast<unsigned long>(net.input_dim());
  for (const Layer& l : net.layers) {
    const unsigned long rows = static_cast<unsigned long>(l.W.rows());
    const unsigned long cols = static_cast<unsigned long>(l.W.cols());
    c.params += mpz_class(rows) * (cols + 1);
    c.neurons += rows;
    long nz = 0;
    for (Eigen::Index i = 0; i < l.W.size(); ++i)
      if (l.W.data()[i] != 0.0) ++nz;
    for (Eigen::Index i = 0; i < l.b.size(); ++i)
      if (l.b[i] != 0.0) ++nz;
    c.nonzero_params += nz;
  }
  return c;
}

GrowthReport growth_check(const Network& net, double c, double z, double zz,
                          double w, double ww,
                          const std::vector<Eigen::VectorXd>& probe_points) {
  const double d = static_cast<double>(net.input_dim());
  GrowthReport report;
  for (const Eigen::VectorXd& x : probe_points) {
    ++report.points_checked;
    const double nx = x.norm();
    const double value = std::fabs(realize(net, x)[0]);
    const double value_bound = c * std::pow(d, z) * (1.0 + std::pow(nx, zz));
    if (value > value_bound)
      report.violations.push_back({x, value, value_bound, false});
    const double grad = gradient(net, x).norm();
    const double grad_bound = c * std::pow(d, w) * (1.0 + std::pow(nx, ww));
    if (grad > grad_bound)
      report.violations.push_back({x, grad, grad_bound, true});
  }
  return report;
}

nlohmann::json to_json(const Network& net) {
  net.validate();
  nlohmann::json j;
  j["activation"] = to_string(net.activation);
  j["layers"] = nlohmann::json::array();
  for (const Layer& l : net.layers) {
    nlohmann::json jl;
    jl["rows"] = l.W.rows();
    jl["cols"] = l.W.cols();
    std::vector<double> weights;
    weights.reserve(static_cast<std::size_t>(l.W.size()));
    for (Eigen::Index r = 0; r < l.W.rows(); ++r)
      for (Eigen::Index c2 = 0; c2 < l.W.cols(); ++c2)
        weights.push_back(l.W(r, c2));
    jl["weights"] = weights;
    jl["bias"] = std::vector<double>(l.b.data(), l.b.data() + l.b.size());
    j["layers"].push_back(std::move(jl));
  }
  return j;
}

Network network_from_json(const nlohmann::json& j) {
  Network net;
  net.activation = activation_from_string(j.at("activation"));
  for (const auto& jl : j.at("layers")) {
    const Eigen::Index rows = jl.at("rows");
    const Eigen::Index cols = jl.at("cols");
    const auto& weights = jl.at("weights");
    const auto& bias = jl.at("bias");
    if (static_cast<Eigen::Index>(weights.size()) != rows * cols)
      throw std::invalid_argument("weights length != rows*cols");
    if (static_cast<Eigen::Index>(bias.size()) != rows)
      throw std::invalid_argument("bias length != rows");
    Layer l;
    l.W.resize(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r)
      for (Eigen::Index c = 0; c < cols; ++c)
        l.W(r, c) = weights[static_cast<std::size_t>(r * cols + c)];
    l.b.resize(rows);
    for (Eigen::Index r = 0; r < rows; ++r)
      l.b[r] = bias[static_cast<std::size_t>(r)];
    net.layers.push_back(std::move(l));
  }
  net.validate();
  return net;
}

void save_network(const Network& net, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << to_json(net).dump(1) << "\n";
}

Network load_network(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open: " + path);
  nlohmann::json j;
  in >> j;
  return network_from_json(j);
}

}  // namespace heatnet
