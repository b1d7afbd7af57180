#include "heatnet/property_suite.hpp"

#include <cmath>
#include <cstdio>
#include <functional>

#include "heatnet/flow.hpp"
#include "heatnet/rng.hpp"

namespace heatnet {

namespace {

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", x);
  return buf;
}

BoundReport from_check(const CheckResult& cr, std::string context) {
  BoundReport r;
  r.lhs = cr.empirical;
  r.rhs = cr.bound;
  r.ok = cr.ok;
  r.context = std::move(context);
  return r;
}

// Random three-term separable trig field on (0,1)^d with an analytic
// gradient; coefficients in [-2,2], integer frequencies in {1,2,3}.
ScalarField random_trig_field(int d, std::uint64_t seed, std::uint32_t sub,
                              std::uint64_t field_index) {
  const rng::Stream stream{seed, rng::kTestField, sub};
  std::uint64_t next = field_index * 64;
  std::vector<double> coeff(3);
  std::vector<std::vector<double>> freq(3), phase(3);
  for (int t = 0; t < 3; ++t) {
    coeff[t] = 2.0 * (2.0 * stream.uniform(next++) - 1.0);
    freq[t].resize(d);
    phase[t].resize(d);
    for (int j = 0; j < d; ++j) {
      freq[t][j] = 1.0 + std::floor(3.0 * stream.uniform(next++));
      phase[t][j] = 2.0 * M_PI * stream.uniform(next++);
    }
  }
  ScalarField f;
  f.value = [=](const Eigen::VectorXd& x) {
    double s = 0.0;
    for (int t = 0; t < 3; ++t) {
      double prod = coeff[t];
      for (int j = 0; j < d; ++j)
        prod *= std::sin(freq[t][j] * M_PI * x[j] + phase[t][j]);
      s += prod;
    }
    return s;
  };
  f.gradient = [=](const Eigen::VectorXd& x) {
    Eigen::VectorXd g = Eigen::VectorXd::Zero(d);
    for (int t = 0; t < 3; ++t)
      for (int j = 0; j < d; ++j) {
        double prod = coeff[t] * freq[t][j] * M_PI *
                      std::cos(freq[t][j] * M_PI * x[j] + phase[t][j]);
        for (int jj = 0; jj < d; ++jj)
          if (jj != j)
            prod *= std::sin(freq[t][jj] * M_PI * x[jj] + phase[t][jj]);
        g[j] += prod;
      }
    return g;
  };
  return f;
}

void run_gamma(int points, std::vector<BoundReport>& out) {
  for (int i = 0; i < points; ++i) {
    const double x =
        0.1 * std::pow(1000.0, static_cast<double>(i) / (points - 1));
    BoundReport r = gamma_sandwich(x);
    r.context = "gamma_sandwich x=" + fmt(x);
    out.push_back(std::move(r));
  }
}

void run_ball(int max_dim, std::vector<BoundReport>& out) {
  for (int d = 1; d <= max_dim; ++d) {
    const BallVolume v = ball_volume(d);
    BoundReport r;
    r.lhs = v.exact;
    r.rhs = v.bound;
    r.ok = v.exact > 0.0 && v.exact <= v.bound && std::isfinite(v.bound);
    r.context = "ball_volume d=" + std::to_string(d);
    out.push_back(std::move(r));
  }
}

void run_mc_lp(std::uint64_t seed, std::vector<BoundReport>& out) {
  Eigen::VectorXd cvec(4);
  cvec << 1.0, -2.0, 0.5, 3.0;
  const VectorSampler dists[] = {gaussian_sampler(3), uniform_cube_sampler(2),
                                 constant_sampler(cvec)};
  int idx = 0;
  for (const VectorSampler& dist : dists)
    for (double p : {2.0, 4.0}) {
      BoundReport r = mc_lp_bound_check(dist, p, 100, 500, seed + idx);
      r.context = "mc_lp " + dist.name + " p=" + fmt(p);
      out.push_back(std::move(r));
      ++idx;
    }
}

void run_sobolev(int fields_per_dim, std::uint64_t seed,
                 std::vector<BoundReport>& out) {
  const int res_for_dim[] = {0, 256, 64, 24};
  for (int d = 1; d <= 3; ++d)
    for (int t = 0; t < fields_per_dim; ++t) {
      const ScalarField f =
          random_trig_field(d, seed, static_cast<std::uint32_t>(d), t);
      BoundReport r = sobolev_sup_check(f, d, res_for_dim[d]);
      r.context = "sobolev_sup trig field d=" + std::to_string(d) +
                  " i=" + std::to_string(t);
      out.push_back(std::move(r));
    }
}

void run_moments(std::uint64_t seed, std::vector<BoundReport>& out) {
  std::vector<Eigen::MatrixXd> mats;
  mats.push_back(Eigen::MatrixXd::Identity(2, 2));
  mats.push_back(Eigen::Vector2d(1.0, 2.0).asDiagonal());
  Eigen::MatrixXd sym(3, 3);
  sym << 2.0, 0.5, 0.0, 0.5, 1.0, 0.25, 0.0, 0.25, 1.5;
  mats.push_back(sym);
  int idx = 0;
  for (std::size_t mi = 0; mi < mats.size(); ++mi)
    for (double t : {0.5, 1.0})
      for (double p : {2.0, 4.0}) {
        const auto cr =
            gaussian_moment_check(mats[mi], t, p, 2000, seed + idx);
        out.push_back(from_check(cr, "gaussian_moment A#" +
                                         std::to_string(mi) + " t=" + fmt(t) +
                                         " p=" + fmt(p)));
        ++idx;
      }

  std::vector<FlowSpec> specs;
  specs.emplace_back(Eigen::VectorXd::Zero(1), Eigen::MatrixXd::Identity(1, 1),
                     1.0);
  specs.emplace_back(Eigen::VectorXd::Zero(3), Eigen::MatrixXd::Identity(3, 3),
                     1.0);
  Eigen::VectorXd mu(2);
  mu << 0.5, -0.25;
  specs.emplace_back(mu, Eigen::MatrixXd::Identity(2, 2), 0.5);
  for (std::size_t si = 0; si < specs.size(); ++si) {
    const Eigen::Index d = specs[si].dim();
    const Eigen::VectorXd points[] = {Eigen::VectorXd::Zero(d),
                                      Eigen::VectorXd::Ones(d)};
    for (int xi = 0; xi < 2; ++xi)
      for (double p : {2.0, 4.0}) {
        const auto cr = apriori_moment_check(specs[si], points[xi], p, 2000,
                                             seed + 100 + idx);
        out.push_back(from_check(
            cr, "apriori_moment spec#" + std::to_string(si) +
                    " x#" + std::to_string(xi) + " p=" + fmt(p)));
        ++idx;
      }
  }
}

void run_contraction(std::uint64_t seed, std::vector<BoundReport>& out) {
  struct Case {
    FlowSpec spec;
    Eigen::VectorXd x, y;
  };
  std::vector<Case> cases;
  {
    Eigen::VectorXd x(1), y(1);
    x << 0.3;
    y << -0.8;
    cases.push_back({FlowSpec(Eigen::VectorXd::Zero(1),
                              Eigen::MatrixXd::Identity(1, 1), 1.0),
                     x, y});
  }
  cases.push_back({FlowSpec(Eigen::VectorXd::Zero(3),
                            Eigen::MatrixXd::Identity(3, 3), 1.0),
                   Eigen::VectorXd::Ones(3), -0.5 * Eigen::VectorXd::Ones(3)});
  {
    Eigen::VectorXd mu(2), x(2), y(2);
    mu << 0.5, -0.25;
    x << 1.0, -1.0;
    y << 0.25, 2.0;
    cases.push_back(
        {FlowSpec(mu, Eigen::MatrixXd::Identity(2, 2), 0.5), x, y});
  }
  int idx = 0;
  for (std::size_t ci = 0; ci < cases.size(); ++ci)
    for (double p : {2.0, 4.0}) {
      const auto cr = contraction_check(cases[ci].spec, cases[ci].x,
                                        cases[ci].y, p, 500, seed + idx);
      out.push_back(from_check(cr, "contraction spec#" + std::to_string(ci) +
                                       " p=" + fmt(p)));
      ++idx;
    }
}

void run_mc_sobolev(const std::vector<int>& sizes, std::uint64_t seed,
                    std::vector<BoundReport>& out) {
  Eigen::VectorXd w1(1);
  w1 << 2.0;
  const RandomFieldSampler field1 = sin_field_sampler(w1, 0.0, 1.0);
  int idx = 0;
  for (int n : sizes) {
    const int outer = n <= 50 ? 400 : n <= 200 ? 300 : 150;
    BoundReport r = mc_sobolev_uniform_check(field1, 2.0, n, outer,
                                             seed + idx);
    r.context = "mc_sobolev sin d=1 n=" + std::to_string(n);
    out.push_back(std::move(r));
    ++idx;
  }
  if (!sizes.empty()) {
    Eigen::VectorXd w2(2);
    w2 << 1.0, 1.0;
    const RandomFieldSampler field2 = sin_field_sampler(w2, 0.0, 1.0);
    BoundReport r =
        mc_sobolev_uniform_check(field2, 4.0, sizes.front(), 120, seed + 50);
    r.context = "mc_sobolev sin d=2 n=" + std::to_string(sizes.front());
    out.push_back(std::move(r));
  }
}

}  // namespace

PropertySuiteConfig PropertySuiteConfig::full() {
  PropertySuiteConfig cfg;
  cfg.gamma_grid_points = 500;
  cfg.ball_max_dim = 20;
  cfg.mc_lp = true;
  cfg.sobolev_fields_per_dim = 50;
  cfg.moment_checks = true;
  cfg.contraction = true;
  cfg.mc_sobolev_sizes = {50, 200, 800};
  return cfg;
}

std::vector<BoundReport> run_property_suite(const PropertySuiteConfig& cfg) {
  std::vector<BoundReport> out;
  if (cfg.gamma_grid_points > 1) run_gamma(cfg.gamma_grid_points, out);
  if (cfg.ball_max_dim >= 1) run_ball(cfg.ball_max_dim, out);
  if (cfg.mc_lp) run_mc_lp(cfg.seed, out);
  if (cfg.sobolev_fields_per_dim > 0)
    run_sobolev(cfg.sobolev_fields_per_dim, cfg.seed, out);
  if (cfg.moment_checks) run_moments(cfg.seed, out);
  if (cfg.contraction) run_contraction(cfg.seed, out);
  if (!cfg.mc_sobolev_sizes.empty())
    run_mc_sobolev(cfg.mc_sobolev_sizes, cfg.seed, out);
  return out;
}

bool all_ok(const std::vector<BoundReport>& reports) {
  for (const BoundReport& r : reports)
    if (!r.ok) return false;
  return true;
}

}  // namespace heatnet
