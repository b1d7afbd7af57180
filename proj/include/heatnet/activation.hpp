#pragma once

#include <string>

namespace heatnet {

// Closed set of C^1 activations; both are evaluated with overflow-safe
// branches at |x| = 30 because flow samples push pre-activations to
// +-O(sqrt(d*T)) per coordinate and sums of d of them.
enum class Activation { softplus, logistic };

double activation_value(Activation a, double x);
double activation_derivative(Activation a, double x);

std::string to_string(Activation a);
Activation activation_from_string(const std::string& name);

}  // namespace heatnet
