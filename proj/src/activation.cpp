#include "heatnet/activation.hpp"

#include <cmath>
#include <stdexcept>

namespace heatnet {

namespace {

inline double softplus(double x) {
  if (x > 30.0) return x;            // log1p(exp(-x)) < 1e-13 here
  if (x < -30.0) return std::exp(x); // log1p(e^x) = e^x to double precision
  return std::log1p(std::exp(x));
}

inline double logistic(double x) {
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

}  // namespace

double activation_value(Activation a, double x) {
  switch (a) {
    case Activation::softplus: return softplus(x);
    case Activation::logistic: return logistic(x);
  }
  throw std::logic_error("unknown activation");
}

double activation_derivative(Activation a, double x) {
  switch (a) {
    case Activation::softplus: return logistic(x);
    case Activation::logistic: {
      const double s = logistic(x);
      return s * (1.0 - s);
    }
  }
  throw std::logic_error("unknown activation");
}

std::string to_string(Activation a) {
  return a == Activation::softplus ? "softplus" : "logistic";
}

Activation activation_from_string(const std::string& name) {
  if (name == "softplus") return Activation::softplus;
  if (name == "logistic") return Activation::logistic;
  throw std::invalid_argument("unknown activation: " + name);
}

}  // namespace heatnet
