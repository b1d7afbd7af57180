#include "heatnet/builder.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "doctest.h"
#include "heatnet/constants.hpp"
#include "heatnet/network_calculus.hpp"
#include "test_util.hpp"

using namespace heatnet;

namespace {

FlowSpec heat_spec(Eigen::Index d, double T) {
  return FlowSpec(Eigen::VectorXd::Zero(d),
                  Eigen::MatrixXd::Identity(d, d), T);
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size() / 2;
  return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

}  // namespace

TEST_CASE("frozen dynamics reproduce the initial condition exactly") {
  const auto ic = ridge_softplus_ic(Eigen::VectorXd::Ones(1), 0.0);
  const FlowSpec frozen(Eigen::VectorXd::Zero(1), Eigen::MatrixXd::Zero(1, 1),
                        1.0);
  const Network phi = testutil::softplus_ridge(1, 0.0);
  const auto built = build(ic, phi, frozen, 0.0, 1.0, 1e-9, 1, 5, 2);
  CHECK(built.grid_sup_error <= 1e-12);
  CHECK(built.certified);
  CHECK(built.n_used == 1);
  CHECK(built.restart_index == 0);  // restart 0 already attains the tie
  // Identity flow maps leave the weights themselves unchanged.
  Eigen::VectorXd x(1);
  x << 0.375;
  CHECK(realize(built.psi, x)[0] == realize(phi, x)[0]);
  // Frozen dynamics are not the plain heat flow: no closed-form count.
  CHECK_FALSE(built.n_theoretical_known);
}

TEST_CASE("d=1 heat benchmark certifies at eps = 0.05 with n = 4096") {
  const auto ic = ridge_softplus_ic(Eigen::VectorXd::Ones(1), 0.0);
  const FlowSpec spec = heat_spec(1, 1.0);
  const Network phi = testutil::softplus_ridge(1, 0.0);

  int certified = 0;
  for (std::uint64_t seed : {11u, 12u, 13u}) {
    const auto built = build(ic, phi, spec, 0.0, 1.0, 0.05, 4096, seed, 8);
    CHECK(built.grid_sup_error < 0.15);
    if (built.certified) ++certified;

    // Exact counter identities for the (1,1,1) block construction.
    const long n = 4096;
    CHECK(built.counts.params == averaged_param_count({1, 1, 1}, n));
    CHECK(built.counts.neurons == averaged_neuron_count({1, 1, 1}, n));
    CHECK(built.counts.params == 3 * n + 1);
    const auto phi_counts = counters(phi);
    CHECK(built.counts.nonzero_params <= n * phi_counts.params);
    CHECK(built.counts.params <= n * n * phi_counts.params);
    CHECK(built.counts.neurons <= n * phi_counts.neurons);
    CHECK(built.counts.depth == phi_counts.depth);

    // Plain heat flow + softplus ridge: the closed-form count is available
    // and astronomically larger than the empirical one.
    CHECK(built.n_theoretical_known);
    CHECK(built.n_theoretical > mpz_class("1000000000000000000000000"));
  }
  CHECK(certified >= 2);
}

TEST_CASE("tiny ensembles return the best uncertified attempt") {
  const auto ic = ridge_softplus_ic(Eigen::VectorXd::Ones(1), 0.0);
  const FlowSpec spec = heat_spec(1, 1.0);
  const Network phi = testutil::softplus_ridge(1, 0.0);
  const auto built = build(ic, phi, spec, 0.0, 1.0, 0.01, 4, 11, 4);
  CHECK_FALSE(built.certified);
  CHECK(built.grid_sup_error > 0.01);
  CHECK(built.restart_index >= 0);
  CHECK(built.restart_index < 4);
  Eigen::VectorXd x(1);
  x << 0.5;
  CHECK(std::isfinite(realize(built.psi, x)[0]));

  // The winner really is the minimum over the restart streams.
  for (int r = 0; r < 4; ++r) {
    const auto flows = sample_affine_flows(spec, 4, 11, r);
    std::vector<AffineMap> maps;
    for (const auto& f : flows) maps.push_back({f.Wmat, f.Bvec});
    const Network psi_r = average_ensemble(phi, maps);
    const auto est =
        sup_error(psi_r, ic, spec, 0.0, 1.0, SupMethod::tensor_grid);
    CHECK(est.grid_sup >= built.grid_sup_error - 1e-15);
    if (r == built.restart_index)
      CHECK(est.grid_sup == built.grid_sup_error);
  }
}

TEST_CASE("same seed gives the identical build, different seed does not") {
  const auto ic = ridge_softplus_ic(Eigen::VectorXd::Ones(2), 0.25);
  const FlowSpec spec = heat_spec(2, 0.5);
  const Network phi = testutil::softplus_ridge(2, 0.25);
  const auto b1 = build(ic, phi, spec, -1.0, 1.0, 0.05, 64, 7, 3);
  const auto b2 = build(ic, phi, spec, -1.0, 1.0, 0.05, 64, 7, 3);
  CHECK(b1.grid_sup_error == b2.grid_sup_error);
  CHECK(b1.restart_index == b2.restart_index);
  CHECK(to_json(b1.psi).dump() == to_json(b2.psi).dump());
  CHECK(metadata_json(b1, ic, spec).dump() ==
        metadata_json(b2, ic, spec).dump());

  const auto b3 = build(ic, phi, spec, -1.0, 1.0, 0.05, 64, 8, 3);
  CHECK(b3.grid_sup_error != b1.grid_sup_error);
}

TEST_CASE("median error over seeds drops from n=64 to n=4096") {
  const auto ic = ridge_softplus_ic(Eigen::VectorXd::Ones(1), 0.0);
  const FlowSpec spec = heat_spec(1, 1.0);
  const Network phi = testutil::softplus_ridge(1, 0.0);
  std::vector<double> small, large;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    small.push_back(
        build(ic, phi, spec, 0.0, 1.0, 0.05, 64, seed, 1).grid_sup_error);
    large.push_back(
        build(ic, phi, spec, 0.0, 1.0, 0.05, 4096, seed, 1).grid_sup_error);
  }
  CHECK(median(large) < median(small));
}

TEST_CASE("doubling search stops at the first certified size") {
  const auto ic = ridge_softplus_ic(Eigen::VectorXd::Ones(1), 0.0);
  const FlowSpec spec = heat_spec(1, 1.0);
  const Network phi = testutil::softplus_ridge(1, 0.0);
  const auto built =
      build_doubling(ic, phi, spec, 0.0, 1.0, 0.05, 21, 4, 64, 65536);
  CHECK(built.certified);
  CHECK(built.n_used >= 64);
  CHECK(built.n_used <= 65536);
  // n stays on the doubling ladder.
  std::int64_t n = built.n_used;
  while (n > 64 && n % 2 == 0) n /= 2;
  CHECK(n == 64);
  // Every smaller ladder size fails with the same seed, so the returned
  // size really is the first certified one.
  for (std::int64_t m = 64; m < built.n_used; m *= 2)
    CHECK_FALSE(build(ic, phi, spec, 0.0, 1.0, 0.05, m, 21, 4).certified);

  // An unreachable target returns the best uncertified attempt.
  const auto hopeless =
      build_doubling(ic, phi, spec, 0.0, 1.0, 1e-6, 21, 2, 4, 16);
  CHECK_FALSE(hopeless.certified);
  CHECK(hopeless.n_used <= 16);
}

TEST_CASE("builder validation and metadata sidecar") {
  const auto ic = ridge_softplus_ic(Eigen::VectorXd::Ones(1), 0.0);
  const FlowSpec spec = heat_spec(1, 1.0);
  const Network phi = testutil::softplus_ridge(1, 0.0);

  // Unsupported oracle pair fails before sampling.
  Eigen::VectorXd mu(2);
  mu << 0.5, 0.0;
  const FlowSpec drifted(mu, Eigen::MatrixXd::Identity(2, 2), 1.0);
  const auto sq = squared_norm_ic(2, 0.0);
  const Network phi2 = testutil::softplus_ridge(2, 0.0);
  CHECK_THROWS_AS(build(sq, phi2, drifted, 0.0, 1.0, 0.1, 8, 1, 1),
                  UnsupportedCombination);

  CHECK_THROWS_AS(build(ic, phi2, spec, 0.0, 1.0, 0.1, 8, 1, 1),
                  std::invalid_argument);  // dimension mismatch
  CHECK_THROWS_AS(build(ic, phi, spec, 0.0, 1.0, 0.1, 0, 1, 1),
                  std::invalid_argument);
  CHECK_THROWS_AS(build(ic, phi, spec, 0.0, 1.0, 0.1, 8, 1, 0),
                  std::invalid_argument);
  CHECK_THROWS_AS(build(ic, phi, spec, 1.0, 0.0, 0.1, 8, 1, 1),
                  std::invalid_argument);
  CHECK_THROWS_AS(build_doubling(ic, phi, spec, 0.0, 1.0, 0.1, 1, 1, 16, 8),
                  std::invalid_argument);

  const auto built = build(ic, phi, spec, -0.25, 1.0, 0.05, 32, 5, 2);
  const auto j = metadata_json(built, ic, spec);
  CHECK(j["n_used"] == 32);
  CHECK(j["seed"] == 5);
  CHECK(j["restarts"] == 2);
  CHECK(j["restart_index"] == built.restart_index);
  CHECK(j["counts"]["params"] == built.counts.params.get_str());
  CHECK(j["counts"]["depth"] == "3");
  CHECK(j["grid_sup_error"] == built.grid_sup_error);
  CHECK(j["certified"] == built.certified);
  CHECK(j["domain"][0] == -0.25);
  CHECK(j["domain"][1] == 1.0);
  CHECK(j["eps"] == 0.05);
  CHECK(j["T"] == 1.0);
  CHECK(j["n_theoretical"] == built.n_theoretical.get_str());
  CHECK(built.has_certified_sup);
  CHECK(j["certified_sup"] == built.certified_sup);
  CHECK(built.certified_sup >= built.grid_sup_error);

  const FlowSpec frozen(Eigen::VectorXd::Zero(1), Eigen::MatrixXd::Zero(1, 1),
                        1.0);
  const auto frozen_meta = metadata_json(
      build(ic, phi, frozen, 0.0, 1.0, 0.1, 1, 1, 1), ic, frozen);
  CHECK(frozen_meta["n_theoretical"].is_null());
}

TEST_CASE("problem description survives the JSON round trip") {
  Eigen::VectorXd w(2);
  w << 1.5, -0.25;
  for (const auto& ic :
       {ridge_softplus_ic(w, 0.75), linear_ic(w, -1.0),
        ridge_ic("logistic", w, 0.5), squared_norm_ic(2, 3.0)}) {
    const auto back = ic_from_json(ic_to_json(ic));
    CHECK(back.kind == ic.kind);
    CHECK(back.dim == ic.dim);
    CHECK(back.shift == ic.shift);
    if (ic.kind != InitialCondition::Kind::squared_norm)
      CHECK(back.w == ic.w);
    Eigen::VectorXd x(2);
    x << 0.3, -0.8;
    CHECK(back(x) == ic(x));
  }

  Eigen::VectorXd mu(2);
  mu << 0.5, -0.125;
  Eigen::MatrixXd A(2, 2);
  A << 2.0, 0.5, 0.5, 1.0;
  const FlowSpec spec(mu, A, 0.75);
  const FlowSpec back = flow_from_json(flow_to_json(spec));
  CHECK(back.mu == spec.mu);
  CHECK(back.A == spec.A);
  CHECK(back.T == spec.T);
  CHECK(back.S == spec.S);

  CHECK_THROWS_AS(ic_from_json(nlohmann::json{{"kind", "mystery"},
                                              {"shift", 0.0},
                                              {"w", {1.0}}}),
                  std::invalid_argument);
}
