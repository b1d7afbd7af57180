#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <vector>

#include "heatnet/network.hpp"
#include "heatnet/rng.hpp"

namespace testutil {

// The d-input softplus ridge net: R(x) = ln(1+e^{x_1+...+x_d-K}) + K.
inline heatnet::Network softplus_ridge(int d, double K) {
  heatnet::Network net;
  net.activation = heatnet::Activation::softplus;
  heatnet::Layer l1;
  l1.W = Eigen::MatrixXd::Ones(1, d);
  l1.b = Eigen::VectorXd::Constant(1, -K);
  heatnet::Layer l2;
  l2.W = Eigen::MatrixXd::Constant(1, 1, 1.0);
  l2.b = Eigen::VectorXd::Constant(1, K);
  net.layers = {l1, l2};
  return net;
}

struct Draws {
  heatnet::rng::Stream stream;
  std::uint64_t next = 0;
  double normal() { return stream.normal(next++); }
  double uniform() { return stream.uniform(next++); }
  Eigen::VectorXd normal_vector(Eigen::Index n, double scale = 1.0) {
    Eigen::VectorXd v(n);
    for (Eigen::Index i = 0; i < n; ++i) v[i] = scale * normal();
    return v;
  }
  Eigen::MatrixXd normal_matrix(Eigen::Index r, Eigen::Index c,
                                double scale = 1.0) {
    Eigen::MatrixXd m(r, c);
    for (Eigen::Index i = 0; i < r; ++i)
      for (Eigen::Index j = 0; j < c; ++j) m(i, j) = scale * normal();
    return m;
  }
};

inline Draws draws(std::uint64_t seed, std::uint32_t sub = 0) {
  return Draws{heatnet::rng::Stream{seed, heatnet::rng::kTestField, sub}, 0};
}

inline heatnet::Network random_network(const std::vector<int>& shape,
                                       heatnet::Activation act, Draws& d,
                                       double scale = 1.0) {
  heatnet::Network net;
  net.activation = act;
  for (std::size_t k = 1; k < shape.size(); ++k) {
    heatnet::Layer l;
    l.W = d.normal_matrix(shape[k], shape[k - 1], scale);
    l.b = d.normal_vector(shape[k], scale);
    net.layers.push_back(std::move(l));
  }
  return net;
}

// Central finite differences of a scalar-output network.
inline Eigen::VectorXd fd_gradient(const heatnet::Network& net,
                                   const Eigen::VectorXd& x,
                                   double h = 1e-5) {
  Eigen::VectorXd g(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    Eigen::VectorXd xp = x, xm = x;
    xp[i] += h;
    xm[i] -= h;
    g[i] = (heatnet::realize(net, xp)[0] - heatnet::realize(net, xm)[0]) /
           (2.0 * h);
  }
  return g;
}

}  // namespace testutil
