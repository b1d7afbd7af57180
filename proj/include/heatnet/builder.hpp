#pragma once

#include <gmpxx.h>

#include <cstdint>

#include "heatnet/flow.hpp"
#include "heatnet/network.hpp"
#include "heatnet/oracle.hpp"
#include "heatnet/sup_error.hpp"
#include "json.hpp"

namespace heatnet {

// One finished averaging construction plus its certification record.  The
// build inputs (domain, eps, T, restarts) are echoed so the metadata
// sidecar is self-contained.
struct BuiltApproximation {
  Network psi;
  std::int64_t n_used = 0;
  // Closed-form theoretical sample count, exact; computed only for the softplus-ridge
  // initial condition under the plain heat flow (mu = 0, A = I), where the
  // growth-constant family is pinned down.
  mpz_class n_theoretical;
  bool n_theoretical_known = false;
  std::uint64_t seed = 0;
  int restarts = 0;
  int restart_index = 0;  // winning restart
  NetworkCounts counts;
  double grid_sup_error = 0.0;
  double certified_sup = 0.0;  // meaningful iff has_certified_sup
  bool has_certified_sup = false;  // false on the low-discrepancy path
  bool certified = false;          // grid_sup_error <= eps
  double domain_a = 0.0, domain_b = 0.0;
  double eps = 0.0;
  double T = 0.0;
};

// The canonical two-layer base network realizing ln(1 + e^{w.x - K}) + K,
// i.e. exactly the softplus-ridge initial condition.
Network softplus_ridge_network(const Eigen::VectorXd& w, double K);

// Monte Carlo construction: for each restart r in {0..restarts-1}, draw n
// affine flow samples on stream (seed, r), average-ensemble them onto phi,
// and measure the sup error against the solution oracle (tensor grid for
// d <= 3, low-discrepancy scan above).  The restart with the smallest
// grid sup-error wins; exact ties keep the smallest index.  Throws before
// any sampling when the oracle cannot evaluate (ic, spec).
BuiltApproximation build(const InitialCondition& ic, const Network& phi,
                         const FlowSpec& spec, double a, double b, double eps,
                         std::int64_t n, std::uint64_t seed, int restarts,
                         int sup_resolution = 0);

// Doubling search: n = n_start, 2 n_start, ... until certified or n_max is
// passed; returns the first certified attempt, otherwise the attempt with
// the smallest grid sup-error.  Streams are indexed per sample, so attempt
// n shares its first n/2 flow samples with the previous attempt.
BuiltApproximation build_doubling(const InitialCondition& ic,
                                  const Network& phi, const FlowSpec& spec,
                                  double a, double b, double eps,
                                  std::uint64_t seed, int restarts,
                                  std::int64_t n_start = 64,
                                  std::int64_t n_max = 65536,
                                  int sup_resolution = 0);

// Problem-description round-trip, so a saved network's metadata suffices
// to re-evaluate its sup error later.
nlohmann::json ic_to_json(const InitialCondition& ic);
InitialCondition ic_from_json(const nlohmann::json& j);
nlohmann::json flow_to_json(const FlowSpec& spec);
FlowSpec flow_from_json(const nlohmann::json& j);

// Metadata sidecar: {n_used, n_theoretical (decimal string or null), seed,
// restarts, restart_index, counts (decimal strings), grid_sup_error,
// certified_sup (null on the low-discrepancy path, where the sup report
// is only a lower bound), certified, domain, eps, T, ic, flow}.  Carries
// no timing, so sidecars are byte-stable.
nlohmann::json metadata_json(const BuiltApproximation& built,
                             const InitialCondition& ic,
                             const FlowSpec& spec);

}  // namespace heatnet
