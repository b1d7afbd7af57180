#include "heatnet/bounds.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace heatnet {

namespace {

const double kSobolevConst = 8.0 * std::sqrt(M_E);

void require(bool cond, const char* msg) {
  if (!cond) throw std::invalid_argument(msg);
}

// Power mean (mean of y_o = err_o^p)^{1/p} over outer repetitions, with
// the relative standard error of the root.
struct PowerMean {
  double root = 0.0;
  double rel_stderr = 0.0;
};
PowerMean power_mean(const std::vector<double>& y, double p) {
  const double m = static_cast<double>(y.size());
  double mean = 0.0;
  for (double v : y) mean += v;
  mean /= m;
  double ss = 0.0;
  for (double v : y) ss += (v - mean) * (v - mean);
  PowerMean out;
  if (mean <= 0.0) return out;
  out.root = std::pow(mean, 1.0 / p);
  out.rel_stderr = std::sqrt(ss / (m - 1.0) / m) / (p * mean);
  return out;
}

std::string format_context(const std::string& what, const std::string& who,
                           double p, int n, int outer) {
  std::ostringstream os;
  os << what << ": " << who << ", p=" << p << ", n=" << n
     << ", outer=" << outer << ", slack=3se";
  return os.str();
}

}  // namespace

BoundReport gamma_sandwich(double x) {
  require(x > 0.0, "gamma_sandwich requires x > 0");
  const double log_stirling =
      0.5 * std::log(2.0 * M_PI / x) + x * (std::log(x) - 1.0);
  const double log_gamma = std::lgamma(x);
  const double tol = 1e-12 * std::max(1.0, std::fabs(log_gamma));
  BoundReport rep;
  rep.lhs = std::exp(log_stirling);
  rep.rhs = std::exp(log_gamma);
  rep.ok = log_stirling <= log_gamma + tol &&
           log_gamma <= log_stirling + 1.0 / (12.0 * x) + tol;
  std::ostringstream os;
  os << "stirling sandwich at x=" << x
     << ": lhs=stirling lower bound, rhs=gamma; ok also checks"
        " gamma <= lhs*e^{1/(12x)}";
  rep.context = os.str();
  return rep;
}

BallVolume ball_volume(int d) {
  require(d >= 1, "ball_volume requires d >= 1");
  const double hd = 0.5 * d;
  BallVolume v;
  v.exact = std::exp(hd * std::log(M_PI) - std::lgamma(hd + 1.0));
  v.bound = std::exp(-0.5 * std::log(d * M_PI) +
                     hd * std::log(2.0 * M_PI * M_E / d));
  return v;
}

double kahane_bound(double p) {
  require(p >= 1.0, "kahane_bound requires p >= 1");
  return std::sqrt(std::max(1.0, p - 1.0));
}

VectorSampler gaussian_sampler(int d) {
  require(d >= 1, "gaussian_sampler requires d >= 1");
  VectorSampler s;
  s.name = "gaussian";
  s.dim = d;
  s.mean = Eigen::VectorXd::Zero(d);
  // E||Z||^p = 2^{p/2} Gamma((d+p)/2) / Gamma(d/2) (chi distribution).
  s.central_moment_root = [d](double p) {
    require(p >= 1.0, "gaussian moments need p >= 1");
    return std::exp(0.5 * std::log(2.0) +
                    (std::lgamma(0.5 * (d + p)) - std::lgamma(0.5 * d)) / p);
  };
  s.draw = [d](rng::Stream& st, std::uint64_t base) {
    Eigen::VectorXd x(d);
    for (int j = 0; j < d; ++j) x[j] = st.normal(base + j);
    return x;
  };
  return s;
}

VectorSampler uniform_cube_sampler(int d) {
  require(d >= 1, "uniform_cube_sampler requires d >= 1");
  VectorSampler s;
  s.name = "uniform_cube";
  s.dim = d;
  s.mean = Eigen::VectorXd::Constant(d, 0.5);
  // Central coordinates are U[-1/2,1/2]: E Y^2 = 1/12, E Y^4 = 1/80.
  s.central_moment_root = [d](double p) {
    if (p == 2.0) return std::sqrt(d / 12.0);
    if (p == 4.0)
      return std::pow(d / 80.0 + d * (d - 1.0) / 144.0, 0.25);
    throw std::invalid_argument(
        "uniform_cube_sampler knows central moments for p in {2, 4} only");
  };
  s.draw = [d](rng::Stream& st, std::uint64_t base) {
    Eigen::VectorXd x(d);
    for (int j = 0; j < d; ++j) x[j] = st.uniform(base + j);
    return x;
  };
  return s;
}

VectorSampler constant_sampler(const Eigen::VectorXd& v) {
  require(v.size() >= 1, "constant_sampler requires a non-empty vector");
  VectorSampler s;
  s.name = "constant";
  s.dim = static_cast<int>(v.size());
  s.mean = v;
  s.central_moment_root = [](double p) {
    require(p >= 1.0, "moments need p >= 1");
    return 0.0;
  };
  s.draw = [v](rng::Stream&, std::uint64_t) { return v; };
  return s;
}

BoundReport mc_lp_bound_check(const VectorSampler& dist, double p, int n,
                              int outer, std::uint64_t seed) {
  require(p >= 2.0, "mc_lp_bound_check requires p >= 2");
  require(n >= 1, "mc_lp_bound_check requires n >= 1");
  require(outer >= 2, "mc_lp_bound_check requires outer >= 2");

  rng::Stream stream{seed, rng::kMcLp, 0};
  const std::uint64_t d = static_cast<std::uint64_t>(dist.dim);
  std::vector<double> y(static_cast<std::size_t>(outer));
  for (int o = 0; o < outer; ++o) {
    Eigen::VectorXd acc = Eigen::VectorXd::Zero(dist.dim);
    for (int i = 0; i < n; ++i) {
      const std::uint64_t base =
          (static_cast<std::uint64_t>(o) * n + static_cast<std::uint64_t>(i)) *
          d;
      acc += dist.draw(stream, base);
    }
    const double err = (dist.mean - acc / double(n)).norm();
    y[static_cast<std::size_t>(o)] = std::pow(err, p);
  }
  const PowerMean pm = power_mean(y, p);

  BoundReport rep;
  rep.lhs = pm.root;
  rep.rhs = 2.0 * kahane_bound(p) * dist.central_moment_root(p) /
            std::sqrt(double(n));
  rep.ok = rep.lhs <= rep.rhs * (1.0 + 3.0 * pm.rel_stderr) + 1e-15;
  rep.context = format_context("mc lp bound", dist.name, p, n, outer);
  return rep;
}

int default_grid_res(int d) {
  switch (d) {
    case 1:
      return 2048;
    case 2:
      return 512;
    case 3:
      return 128;
    default:
      throw std::invalid_argument("tensor grids support d in {1, 2, 3}");
  }
}

BoundReport sobolev_sup_check(const ScalarField& f, int d, int grid_res) {
  require(d >= 1 && d <= 3, "sobolev_sup_check supports d in {1, 2, 3}");
  const int res = grid_res > 0 ? grid_res : default_grid_res(d);
  require(res >= 2, "sobolev_sup_check needs grid_res >= 2");
  const double q = std::max(2.0, double(d) * double(d));
  const double h = 1.0 / res;

  double sup = 0.0;
  double integral = 0.0;
  std::vector<int> idx(static_cast<std::size_t>(d), 0);
  Eigen::VectorXd x(d);
  while (true) {
    double wt = 1.0;
    for (int k = 0; k < d; ++k) {
      x[k] = idx[static_cast<std::size_t>(k)] * h;
      if (idx[static_cast<std::size_t>(k)] == 0 ||
          idx[static_cast<std::size_t>(k)] == res)
        wt *= 0.5;
    }
    const double fv = std::fabs(f.value(x));
    sup = std::max(sup, fv);
    integral +=
        wt * (std::pow(fv, q) + std::pow(f.gradient(x).norm(), q));
    int k = d - 1;
    while (k >= 0 && ++idx[static_cast<std::size_t>(k)] > res)
      idx[static_cast<std::size_t>(k--)] = 0;
    if (k < 0) break;
  }
  integral *= std::pow(h, d);

  BoundReport rep;
  rep.lhs = sup;
  rep.rhs = kSobolevConst * std::pow(integral, 1.0 / q);
  rep.ok = rep.lhs <= rep.rhs * 1.01;
  std::ostringstream os;
  os << "sobolev sup embedding: d=" << d << ", q=" << q << ", res=" << res
     << ", slack=1%";
  rep.context = os.str();
  return rep;
}

RandomFieldSampler sin_field_sampler(const Eigen::VectorXd& w, double a,
                                     double b) {
  require(w.size() >= 1, "sin_field_sampler requires a non-empty direction");
  require(b > a, "sin_field_sampler requires a < b");
  RandomFieldSampler s;
  s.name = "sin(w.x+Z)";
  s.dim = static_cast<int>(w.size());
  s.a = a;
  s.b = b;
  s.M0 = 1.0;
  s.M1 = w.norm();
  // E sin(w.x + Z) = sin(w.x) e^{-1/2} for Z ~ N(0,1).
  s.mean_field = [w](const Eigen::VectorXd& x) {
    return std::sin(w.dot(x)) * std::exp(-0.5);
  };
  s.draw = [w](rng::Stream& st, std::uint64_t base) {
    const double z = st.normal(base);
    return [w, z](const Eigen::VectorXd& x) { return std::sin(w.dot(x) + z); };
  };
  s.draws_per_sample = 1;
  return s;
}

RandomFieldSampler deterministic_field_sampler(
    std::function<double(const Eigen::VectorXd&)> f, int dim, double a,
    double b, double M0, double M1) {
  require(dim >= 1, "deterministic_field_sampler requires dim >= 1");
  require(b > a, "deterministic_field_sampler requires a < b");
  RandomFieldSampler s;
  s.name = "deterministic";
  s.dim = dim;
  s.a = a;
  s.b = b;
  s.M0 = M0;
  s.M1 = M1;
  s.mean_field = f;
  s.draw = [f](rng::Stream&, std::uint64_t) { return f; };
  s.draws_per_sample = 0;
  return s;
}

BoundReport mc_sobolev_uniform_check(const RandomFieldSampler& field,
                                     double p, int n, int outer,
                                     std::uint64_t seed) {
  require(p >= 1.0, "mc_sobolev_uniform_check requires p >= 1");
  require(n >= 1, "mc_sobolev_uniform_check requires n >= 1");
  require(outer >= 2, "mc_sobolev_uniform_check requires outer >= 2");
  require(field.dim == 1 || field.dim == 2,
          "mc_sobolev_uniform_check supports d in {1, 2}");
  const double q = std::max(2.0, p);
  // The 8 sqrt(e) constant realizes the Sobolev hypothesis only when q
  // reaches the d^2 embedding exponent; d = 1 holds for every q >= 2.
  require(field.dim == 1 || q >= 4.0,
          "for d = 2 the 8 sqrt(e) constant requires max{2,p} >= 4");

  const int res = field.dim == 1 ? 512 : 48;
  const double h = (field.b - field.a) / res;
  std::vector<Eigen::VectorXd> grid;
  if (field.dim == 1) {
    grid.reserve(static_cast<std::size_t>(res) + 1);
    for (int i = 0; i <= res; ++i)
      grid.push_back(Eigen::VectorXd::Constant(1, field.a + i * h));
  } else {
    grid.reserve((static_cast<std::size_t>(res) + 1) *
                 (static_cast<std::size_t>(res) + 1));
    for (int i = 0; i <= res; ++i)
      for (int j = 0; j <= res; ++j) {
        Eigen::VectorXd x(2);
        x << field.a + i * h, field.a + j * h;
        grid.push_back(x);
      }
  }
  std::vector<double> mean_on_grid(grid.size());
  for (std::size_t g = 0; g < grid.size(); ++g)
    mean_on_grid[g] = field.mean_field(grid[g]);

  rng::Stream stream{seed, rng::kMcSobolev, 0};
  std::vector<double> y(static_cast<std::size_t>(outer));
  std::vector<double> sum(grid.size());
  for (int o = 0; o < outer; ++o) {
    std::fill(sum.begin(), sum.end(), 0.0);
    for (int i = 0; i < n; ++i) {
      const std::uint64_t base =
          (static_cast<std::uint64_t>(o) * n + static_cast<std::uint64_t>(i)) *
          field.draws_per_sample;
      const auto sample = field.draw(stream, base);
      for (std::size_t g = 0; g < grid.size(); ++g) sum[g] += sample(grid[g]);
    }
    double sup = 0.0;
    for (std::size_t g = 0; g < grid.size(); ++g)
      sup = std::max(sup, std::fabs(mean_on_grid[g] - sum[g] / n));
    y[static_cast<std::size_t>(o)] = std::pow(sup, p);
  }
  const PowerMean pm = power_mean(y, p);

  BoundReport rep;
  rep.lhs = pm.root;
  rep.rhs = 4.0 * kahane_bound(q) * kSobolevConst / std::sqrt(double(n)) *
            (field.M0 + (field.b - field.a) * field.M1);
  rep.ok = rep.lhs <= rep.rhs * (1.0 + 3.0 * pm.rel_stderr + 0.02) + 1e-15;
  rep.context =
      format_context("mc sobolev uniform bound", field.name, p, n, outer) +
      "+2%grid";
  return rep;
}

}  // namespace heatnet
