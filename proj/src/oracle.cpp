#include "heatnet/oracle.hpp"

#include <cmath>
#include <map>
#include <vector>

#include "heatnet/activation.hpp"
#include "heatnet/gauss_hermite.hpp"
#include "heatnet/rng.hpp"

namespace heatnet {

const RidgeProfile& ridge_profile(const std::string& name) {
  static const std::map<std::string, RidgeProfile> catalog = {
      {"softplus",
       {[](double t) { return activation_value(Activation::softplus, t); },
        [](double t) { return activation_derivative(Activation::softplus, t); },
        {1.0, 1.0},  // softplus(t) <= ln 2 + |t| <= 1 + |t|
        1.0}},
      {"logistic",
       {[](double t) { return activation_value(Activation::logistic, t); },
        [](double t) { return activation_derivative(Activation::logistic, t); },
        {1.0, 0.0},
        0.25}},
      {"sin",
       {[](double t) { return std::sin(t); },
        [](double t) { return std::cos(t); },
        {1.0, 0.0},
        1.0}},
  };
  auto it = catalog.find(name);
  if (it == catalog.end())
    throw std::invalid_argument("ridge_profile: unknown profile '" + name +
                                "'");
  return it->second;
}

double InitialCondition::operator()(const Eigen::VectorXd& x) const {
  if (x.size() != dim)
    throw std::invalid_argument("InitialCondition: dimension mismatch");
  switch (kind) {
    case Kind::ridge_softplus:
      return activation_value(Activation::softplus, w.dot(x) - shift) + shift;
    case Kind::ridge:
      return ridge_profile(profile).value(w.dot(x) + shift);
    case Kind::linear:
      return w.dot(x) + shift;
    case Kind::squared_norm:
      return x.squaredNorm() + shift;
  }
  throw std::logic_error("InitialCondition: bad kind");
}

GrowthEnvelope InitialCondition::envelope() const {
  switch (kind) {
    case Kind::ridge_softplus:
      // |softplus(w.x - K) + K| <= ln 2 + |w.x - K| + |K|
      return {std::log(2.0) + 2.0 * std::fabs(shift) + w.norm(), 1.0};
    case Kind::ridge: {
      const GrowthEnvelope g = ridge_profile(profile).envelope;
      return {g.c * (1.0 + std::fabs(shift) + w.norm()), g.gamma};
    }
    case Kind::linear:
      return {std::fabs(shift) + w.norm(), 1.0};
    case Kind::squared_norm:
      return {1.0 + std::fabs(shift), 2.0};
  }
  throw std::logic_error("InitialCondition: bad kind");
}

double InitialCondition::lipschitz_on_cube(double a, double b) const {
  switch (kind) {
    case Kind::ridge_softplus:
      return w.norm();  // |softplus'| <= 1
    case Kind::ridge:
      return w.norm() * ridge_profile(profile).derivative_sup;
    case Kind::linear:
      return w.norm();
    case Kind::squared_norm:
      // ||grad|| = 2||x|| <= 2 sqrt(d) max(|a|, |b|) on [a,b]^d
      return 2.0 * std::sqrt(double(dim)) * std::max(std::fabs(a), std::fabs(b));
  }
  throw std::logic_error("InitialCondition: bad kind");
}

bool envelope_holds(const InitialCondition& ic, const Eigen::VectorXd& x) {
  const GrowthEnvelope env = ic.envelope();
  return std::fabs(ic(x)) <=
         env.c * (1.0 + std::pow(x.norm(), env.gamma)) + 1e-12;
}

namespace {

void probe_envelope(const InitialCondition& ic) {
  const Eigen::Index d = ic.dim;
  std::vector<Eigen::VectorXd> probes = {
      Eigen::VectorXd::Zero(d), Eigen::VectorXd::Ones(d),
      Eigen::VectorXd::Constant(d, -3.7), Eigen::VectorXd::Constant(d, 11.0)};
  Eigen::VectorXd alt(d);
  for (Eigen::Index i = 0; i < d; ++i) alt[i] = (i % 2 == 0) ? 2.5 : -2.5;
  probes.push_back(alt);
  for (const auto& x : probes)
    if (!envelope_holds(ic, x))
      throw std::logic_error("InitialCondition: declared envelope violated");
}

}  // namespace

InitialCondition ridge_softplus_ic(Eigen::VectorXd w, double K) {
  if (w.size() == 0)
    throw std::invalid_argument("ridge_softplus_ic: empty weight vector");
  InitialCondition ic;
  ic.kind = InitialCondition::Kind::ridge_softplus;
  ic.dim = w.size();
  ic.w = std::move(w);
  ic.shift = K;
  probe_envelope(ic);
  return ic;
}

InitialCondition ridge_ic(std::string profile, Eigen::VectorXd w, double b) {
  if (w.size() == 0)
    throw std::invalid_argument("ridge_ic: empty weight vector");
  ridge_profile(profile);  // validates the name
  InitialCondition ic;
  ic.kind = InitialCondition::Kind::ridge;
  ic.dim = w.size();
  ic.w = std::move(w);
  ic.shift = b;
  ic.profile = std::move(profile);
  probe_envelope(ic);
  return ic;
}

InitialCondition linear_ic(Eigen::VectorXd w, double b) {
  if (w.size() == 0)
    throw std::invalid_argument("linear_ic: empty weight vector");
  InitialCondition ic;
  ic.kind = InitialCondition::Kind::linear;
  ic.dim = w.size();
  ic.w = std::move(w);
  ic.shift = b;
  probe_envelope(ic);
  return ic;
}

InitialCondition squared_norm_ic(Eigen::Index dim, double c0) {
  if (dim < 1) throw std::invalid_argument("squared_norm_ic: dim must be >= 1");
  InitialCondition ic;
  ic.kind = InitialCondition::Kind::squared_norm;
  ic.dim = dim;
  ic.w = Eigen::VectorXd::Zero(dim);
  ic.shift = c0;
  probe_envelope(ic);
  return ic;
}

bool oracle_supports(const InitialCondition& ic, const FlowSpec& spec) {
  if (ic.dim != spec.dim()) return false;
  if (ic.kind == InitialCondition::Kind::squared_norm) {
    const Eigen::Index d = spec.dim();
    return spec.mu.isZero(0.0) &&
           (spec.A - Eigen::MatrixXd::Identity(d, d)).isZero(0.0);
  }
  return true;
}

OracleValue exact_solution_detailed(const InitialCondition& ic,
                                    const FlowSpec& spec,
                                    const Eigen::VectorXd& x, int nodes,
                                    int max_nodes) {
  if (!oracle_supports(ic, spec))
    throw UnsupportedCombination(
        "exact_solution: no closed form for this initial condition with "
        "this drift/diffusion");
  if (x.size() != ic.dim)
    throw std::invalid_argument("exact_solution: dimension mismatch");
  if (nodes < 1) throw std::invalid_argument("exact_solution: nodes >= 1");

  switch (ic.kind) {
    case InitialCondition::Kind::linear:
      return {ic.w.dot(x + spec.T * spec.mu) + ic.shift, 0.0};
    case InitialCondition::Kind::squared_norm:
      return {x.squaredNorm() + 2.0 * double(ic.dim) * spec.T + ic.shift, 0.0};
    default:
      break;
  }

  // Ridge reduction: w . X_T + b ~ N(m, sigma^2).
  double m = ic.w.dot(x) + spec.T * ic.w.dot(spec.mu);
  const double var = 2.0 * spec.T * ic.w.dot(spec.A * ic.w);
  const double sigma = std::sqrt(std::max(var, 0.0));

  std::function<double(double)> g;
  if (ic.kind == InitialCondition::Kind::ridge_softplus) {
    const double K = ic.shift;
    g = [K](double t) { return activation_value(Activation::softplus, t - K) + K; };
  } else {
    g = ridge_profile(ic.profile).value;
    m += ic.shift;
  }

  // Node doubling until the residual settles; wide ridges (sigma near 10)
  // genuinely need a few thousand nodes.
  int n = nodes;
  double coarse = gaussian_expectation(g, m, sigma, n);
  double fine = gaussian_expectation(g, m, sigma, 2 * n);
  double resid = std::fabs(fine - coarse);
  while (resid > 1e-12 * (1.0 + std::fabs(fine)) && 2 * n < max_nodes) {
    n *= 2;
    coarse = fine;
    fine = gaussian_expectation(g, m, sigma, 2 * n);
    resid = std::fabs(fine - coarse);
  }
  return {fine, resid};
}

double exact_solution(const InitialCondition& ic, const FlowSpec& spec,
                      const Eigen::VectorXd& x, int nodes, int max_nodes) {
  const OracleValue v = exact_solution_detailed(ic, spec, x, nodes, max_nodes);
  if (v.error_estimate > 1e-9)
    throw std::runtime_error(
        "exact_solution: node-doubling residual " +
        std::to_string(v.error_estimate) +
        " exceeds 1e-9; increase the node budget");
  return v.value;
}

double kernel_convolution(
    const std::function<double(const Eigen::VectorXd&)>& phi,
    const GrowthEnvelope& env, double T, const Eigen::VectorXd& x,
    int nodes_per_axis) {
  const Eigen::Index d = x.size();
  if (d < 1 || d > 4)
    throw std::invalid_argument(
        "kernel_convolution: tensor quadrature handles d <= 4 only; use "
        "exact_solution or mc_reference instead");
  if (env.gamma > 8.0)
    throw std::invalid_argument(
        "kernel_convolution: growth envelope gamma must be <= 8");
  if (T <= 0.0) throw std::invalid_argument("kernel_convolution: T > 0");
  if (nodes_per_axis < 1)
    throw std::invalid_argument("kernel_convolution: nodes_per_axis >= 1");

  const GaussHermiteRule& rule = gauss_hermite(nodes_per_axis);
  const double scale = 2.0 * std::sqrt(T);
  std::vector<int> idx(static_cast<std::size_t>(d), 0);
  Eigen::VectorXd y(d);
  double acc = 0.0;
  for (;;) {
    double wprod = 1.0;
    for (Eigen::Index k = 0; k < d; ++k) {
      wprod *= rule.weights[idx[static_cast<std::size_t>(k)]];
      y[k] = x[k] + scale * rule.nodes[idx[static_cast<std::size_t>(k)]];
    }
    acc += wprod * phi(y);
    Eigen::Index k = 0;
    while (k < d && ++idx[static_cast<std::size_t>(k)] == nodes_per_axis) {
      idx[static_cast<std::size_t>(k)] = 0;
      ++k;
    }
    if (k == d) break;
  }
  return acc / std::pow(M_PI, double(d) / 2.0);
}

McEstimate mc_reference(const InitialCondition& ic, const FlowSpec& spec,
                        const Eigen::VectorXd& x, std::int64_t n,
                        std::uint64_t seed) {
  if (n < 2) throw std::invalid_argument("mc_reference: n must be >= 2");
  if (x.size() != ic.dim || ic.dim != spec.dim())
    throw std::invalid_argument("mc_reference: dimension mismatch");
  const Eigen::Index d = spec.dim();
  const rng::Stream stream{seed, rng::kMcReference, 0};
  const Eigen::VectorXd base = x + spec.T * spec.mu;
  const double sqrtT = std::sqrt(spec.T);

  std::vector<double> values(static_cast<std::size_t>(n));
  Eigen::VectorXd g(d);
  for (std::int64_t k = 0; k < n; ++k) {
    for (Eigen::Index j = 0; j < d; ++j)
      g[j] = stream.normal(static_cast<std::uint64_t>(k) * d + j);
    values[static_cast<std::size_t>(k)] = ic(base + sqrtT * (spec.S * g));
  }
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= double(n);
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  const double stderr_est = std::sqrt(ss / (double(n - 1) * double(n)));
  return {mean, stderr_est};
}

}  // namespace heatnet
