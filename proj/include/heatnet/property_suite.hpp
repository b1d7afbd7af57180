#pragma once

#include <cstdint>
#include <vector>

#include "heatnet/bounds.hpp"

namespace heatnet {

// Which inequality families to run and at what size.  Zero / empty / false
// disables a family; none() runs nothing (and reports nothing), full() is
// the complete battery the command-line runner executes.
struct PropertySuiteConfig {
  int gamma_grid_points = 0;         // log grid on [0.1, 100]
  int ball_max_dim = 0;              // d = 1..max
  bool mc_lp = false;                // 3 distributions x p in {2,4}
  int sobolev_fields_per_dim = 0;    // random trig fields, d in {1,2,3}
  bool moment_checks = false;        // Gaussian + a-priori flow moments
  bool contraction = false;          // common-noise contraction, exact
  std::vector<int> mc_sobolev_sizes; // uniform MC Sobolev sample counts
  std::uint64_t seed = 2026;

  static PropertySuiteConfig none() { return {}; }
  static PropertySuiteConfig full();
};

// Runs every enabled family with fixed seeds; one report per check, in a
// fixed order, so output is reproducible.
std::vector<BoundReport> run_property_suite(const PropertySuiteConfig& cfg);

bool all_ok(const std::vector<BoundReport>& reports);

}  // namespace heatnet
