#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <vector>

namespace heatnet {

// Direction-number data behind one Sobol dimension: the primitive
// polynomial x^degree + (middle bits) + 1 and the initial odd m_i.
// Exposed so validity (primitivity, m_i odd, m_i < 2^i) is testable.
struct SobolDirections {
  int degree = 0;
  std::uint32_t poly_middle = 0;  // coefficient bits of x^{degree-1}..x^1
  std::vector<std::uint32_t> initial_m;
};
SobolDirections sobol_directions(int dim_index);  // 1-based, <= 16

// Gray-code Sobol sequence in [0,1)^dim, 32-bit resolution, dims <= 16.
// next() returns the points with index 1, 2, ...; a fresh object always
// reproduces the same sequence.
class SobolSequence {
 public:
  explicit SobolSequence(int dim);
  Eigen::VectorXd next();
  std::uint64_t index() const { return index_; }
  int dim() const { return dim_; }

 private:
  int dim_;
  std::uint64_t index_ = 0;
  std::vector<std::uint32_t> state_;  // one accumulator per dimension
  std::vector<std::uint32_t> v_;      // 32 direction numbers per dimension
};

}  // namespace heatnet
