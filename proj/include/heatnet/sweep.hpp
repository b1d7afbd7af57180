#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "heatnet/builder.hpp"
#include "json.hpp"

namespace heatnet {

// A (dims x eps x seeds) grid of build cells over the softplus-ridge
// benchmark family (w = 1, shift K) under the plain heat flow on [a,b]^d.
//
// empirical mode: each cell runs the doubling construction and measures
// its sup error.  theoretical mode: each cell evaluates the closed-form
// sample count and the exact parameter-count bound instead of building
// anything; eps must then be a power of two (2^-k) so every quantity stays
// an exact integer.
struct SweepConfig {
  std::vector<int> dims;
  std::vector<double> eps_values;
  std::vector<std::uint64_t> seeds;
  std::string mode = "empirical";  // "empirical" | "theoretical"
  double T = 1.0;
  double a = 0.0, b = 1.0;
  double K = 0.0;
  int restarts = 4;
  std::int64_t n_start = 64;
  std::int64_t n_max = 65536;
  bool no_timing = false;  // emit ms = 0 so outputs are byte-stable
  int threads = 1;         // 0 = hardware concurrency
};

// One table row.  Counter cells are decimal strings because theoretical
// mode exceeds any machine-integer range; absent cells (grid sup columns
// in theoretical mode, certified_sup on the low-discrepancy path where
// the scan is only a lower bound) stay empty in CSV and null in JSON.
struct SweepRow {
  int d = 0;
  double eps = 0.0;
  std::uint64_t seed = 0;
  std::string mode;
  std::string n_used;
  std::string params, nonzero_params, neurons, depth;
  double grid_sup = 0.0;
  bool has_grid_sup = false;
  double certified_sup = 0.0;
  bool has_certified_sup = false;
  // empirical: grid sup-error <= eps; theoretical: exact count bound holds.
  bool certified = false;
  std::int64_t ms = 0;
  std::string params_bound;  // theoretical mode only
};

// Rows in deterministic (d, eps, seed) order regardless of thread count.
std::vector<SweepRow> run_sweep(const SweepConfig& cfg);

// Shortest round-trip decimal text; the only double formatter used in
// emitted tables.
std::string format_double(double x);

std::string sweep_csv_header();
std::string sweep_csv_line(const SweepRow& row);
std::string sweep_csv(const std::vector<SweepRow>& rows);

// Least-squares slope of y against x; needs >= 2 distinct x values.
struct SlopeFit {
  double slope = 0.0;
  double intercept = 0.0;
  int points = 0;
};
SlopeFit fit_loglog_slope(const std::vector<double>& x,
                          const std::vector<double>& y);

// log n_used against log(1/eps) at fixed d (pooled over seeds), keyed by
// d; only dims with >= 2 distinct eps values appear.  Empirical rows only.
std::map<int, SlopeFit> slopes_vs_inverse_eps(const std::vector<SweepRow>&);
// log n_used against log d at fixed eps, keyed by format_double(eps).
std::map<std::string, SlopeFit> slopes_vs_dim(const std::vector<SweepRow>&);

// Full report: config echo, rows (mirroring the CSV columns plus
// params_bound in theoretical mode), and fitted slopes where defined.
nlohmann::json sweep_json(const SweepConfig& cfg,
                          const std::vector<SweepRow>& rows);

}  // namespace heatnet
