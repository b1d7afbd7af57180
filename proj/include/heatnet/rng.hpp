#pragma once

#include <array>
#include <cstdint>

// Counter-based random numbers (Philox4x32-10).
//
// Every draw is addressed by (seed, stream, index): the seed is user-facing,
// the stream separates purposes (flow sampling, reference MC, checks, ...)
// and sub-streams (restart / outer-replicate indices), and the index walks
// the i.i.d. sequence inside a stream.  There is no generator state, so any
// parallel schedule that partitions indices produces bit-identical output.

namespace heatnet::rng {

// Purpose tags; kept distinct so streams never overlap across subsystems.
enum StreamPurpose : std::uint32_t {
  kFlow = 1,         // affine flow sampling (sub = restart index)
  kMcReference = 2,  // oracle Monte Carlo reference
  kMomentCheck = 3,  // gaussian/apriori/contraction checks
  kMcLp = 4,         // Monte Carlo L^p bound check (sub = outer index)
  kMcSobolev = 5,    // uniform MC Sobolev check (sub = outer index)
  kTestField = 6,    // random test fields / networks in property suites
  kMisc = 7
};

// One 128-bit Philox block.  key = seed, counter = (index, stream).
std::array<std::uint32_t, 4> philox_block(std::uint64_t seed,
                                          std::uint32_t stream_purpose,
                                          std::uint32_t stream_sub,
                                          std::uint64_t block_index);

// index-th uniform in (0,1), 53-bit mantissa, never 0 or 1.
double uniform01(std::uint64_t seed, std::uint32_t stream_purpose,
                 std::uint32_t stream_sub, std::uint64_t index);

// index-th standard normal via the inverse CDF (Wichura's PPND16),
// |error| < 1e-15 over the full double range of the uniform input.
double normal01(std::uint64_t seed, std::uint32_t stream_purpose,
                std::uint32_t stream_sub, std::uint64_t index);

// Inverse standard normal CDF, exposed for tests.
double inverse_normal_cdf(double p);

// Handle bundling (seed, stream); draws are still random-access by index.
struct Stream {
  std::uint64_t seed = 0;
  std::uint32_t purpose = kMisc;
  std::uint32_t sub = 0;

  double uniform(std::uint64_t index) const {
    return uniform01(seed, purpose, sub, index);
  }
  double normal(std::uint64_t index) const {
    return normal01(seed, purpose, sub, index);
  }
};

}  // namespace heatnet::rng
