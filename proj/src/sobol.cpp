#include "heatnet/sobol.hpp"

#include <stdexcept>

namespace heatnet {

namespace {

constexpr int kMaxDim = 16;
constexpr int kBits = 32;

// Degree, middle-coefficient bits, and initial m_i for dimensions 2..16;
// dimension 1 is the van der Corput sequence (all m_i = 1, no recurrence).
struct Row {
  int s;
  std::uint32_t a;
  std::uint32_t m[6];
};
constexpr Row kRows[kMaxDim - 1] = {
    {1, 0, {1}},
    {2, 1, {1, 3}},
    {3, 1, {1, 3, 1}},
    {3, 2, {1, 1, 1}},
    {4, 1, {1, 1, 3, 3}},
    {4, 4, {1, 3, 5, 13}},
    {5, 2, {1, 1, 5, 5, 17}},
    {5, 4, {1, 1, 5, 5, 5}},
    {5, 7, {1, 1, 7, 11, 19}},
    {5, 11, {1, 1, 5, 1, 1}},
    {5, 13, {1, 1, 1, 3, 11}},
    {5, 14, {1, 3, 5, 5, 31}},
    {6, 1, {1, 3, 3, 9, 7, 49}},
    {6, 13, {1, 1, 1, 15, 21, 21}},
    {6, 16, {1, 3, 1, 13, 27, 49}},
};

void fill_directions(int dim_index, std::uint32_t* v) {
  if (dim_index == 1) {
    for (int j = 0; j < kBits; ++j) v[j] = 1u << (kBits - 1 - j);
    return;
  }
  const Row& row = kRows[dim_index - 2];
  const int s = row.s;
  for (int j = 0; j < s; ++j) v[j] = row.m[j] << (kBits - 1 - j);
  for (int j = s; j < kBits; ++j) {
    v[j] = v[j - s] ^ (v[j - s] >> s);
    for (int k = 1; k < s; ++k)
      if ((row.a >> (s - 1 - k)) & 1u) v[j] ^= v[j - k];
  }
}

}  // namespace

SobolDirections sobol_directions(int dim_index) {
  if (dim_index < 1 || dim_index > kMaxDim)
    throw std::invalid_argument("sobol dimensions run from 1 to 16");
  SobolDirections d;
  if (dim_index == 1) {
    d.degree = 1;
    d.poly_middle = 0;
    d.initial_m = {1};
    return d;
  }
  const Row& row = kRows[dim_index - 2];
  d.degree = row.s;
  d.poly_middle = row.a;
  d.initial_m.assign(row.m, row.m + row.s);
  return d;
}

SobolSequence::SobolSequence(int dim) : dim_(dim) {
  if (dim < 1 || dim > kMaxDim)
    throw std::invalid_argument("sobol dimensions run from 1 to 16");
  state_.assign(static_cast<std::size_t>(dim), 0);
  v_.assign(static_cast<std::size_t>(dim) * kBits, 0);
  for (int c = 0; c < dim; ++c)
    fill_directions(c + 1, v_.data() + static_cast<std::size_t>(c) * kBits);
}

Eigen::VectorXd SobolSequence::next() {
  ++index_;
  // Gray-code step: flip the direction given by the lowest zero bit of
  // index-1, i.e. the lowest set bit of index.
  int bit = 0;
  std::uint64_t i = index_;
  while ((i & 1u) == 0) {
    i >>= 1;
    ++bit;
  }
  Eigen::VectorXd x(dim_);
  for (int c = 0; c < dim_; ++c) {
    state_[static_cast<std::size_t>(c)] ^=
        v_[static_cast<std::size_t>(c) * kBits + bit];
    x[c] = state_[static_cast<std::size_t>(c)] * 0x1p-32;
  }
  return x;
}

}  // namespace heatnet
