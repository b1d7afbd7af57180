#include "heatnet/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <functional>
#include <mutex>
#include <set>
#include <stdexcept>
#include <thread>

#include "heatnet/constants.hpp"

namespace heatnet {

namespace {

struct Cell {
  int d;
  double eps;
  std::uint64_t seed;
};

// eps = 2^-k with k >= 0, required by theoretical mode so eps^-4 is an
// exact integer.
int dyadic_exponent(double eps) {
  int e = 0;
  const double m = std::frexp(eps, &e);  // eps = m * 2^e, m in [0.5, 1)
  const int k = 1 - e;
  if (m != 0.5 || k < 0)
    throw std::invalid_argument(
        "theoretical sweep: eps must be 2^-k (k >= 0), got " +
        format_double(eps));
  return k;
}

void validate(const SweepConfig& cfg) {
  if (cfg.dims.empty() || cfg.eps_values.empty() || cfg.seeds.empty())
    throw std::invalid_argument("sweep: dims, eps, seeds must be non-empty");
  for (int d : cfg.dims)
    if (d < 1) throw std::invalid_argument("sweep: dims must be >= 1");
  for (double e : cfg.eps_values)
    if (!(e > 0.0)) throw std::invalid_argument("sweep: eps must be > 0");
  if (cfg.mode != "empirical" && cfg.mode != "theoretical")
    throw std::invalid_argument("sweep: mode must be empirical|theoretical");
  if (!(cfg.b > cfg.a)) throw std::invalid_argument("sweep: need a < b");
  if (!(cfg.T > 0.0)) throw std::invalid_argument("sweep: need T > 0");
  if (cfg.restarts < 1)
    throw std::invalid_argument("sweep: need restarts >= 1");
  if (cfg.n_start < 1 || cfg.n_max < cfg.n_start)
    throw std::invalid_argument("sweep: need 1 <= n_start <= n_max");
  if (cfg.threads < 0)
    throw std::invalid_argument("sweep: threads must be >= 0");
  if (cfg.mode == "theoretical")
    for (double e : cfg.eps_values) dyadic_exponent(e);
}

SweepRow empirical_cell(const SweepConfig& cfg, const Cell& cell) {
  const auto t0 = std::chrono::steady_clock::now();
  const Eigen::VectorXd w = Eigen::VectorXd::Ones(cell.d);
  const auto ic = ridge_softplus_ic(w, cfg.K);
  const FlowSpec spec(Eigen::VectorXd::Zero(cell.d),
                      Eigen::MatrixXd::Identity(cell.d, cell.d), cfg.T);
  const Network phi = softplus_ridge_network(w, cfg.K);
  const BuiltApproximation built =
      build_doubling(ic, phi, spec, cfg.a, cfg.b, cell.eps, cell.seed,
                     cfg.restarts, cfg.n_start, cfg.n_max);

  SweepRow row;
  row.d = cell.d;
  row.eps = cell.eps;
  row.seed = cell.seed;
  row.mode = cfg.mode;
  row.n_used = std::to_string(built.n_used);
  row.params = built.counts.params.get_str();
  row.nonzero_params = built.counts.nonzero_params.get_str();
  row.neurons = built.counts.neurons.get_str();
  row.depth = built.counts.depth.get_str();
  row.grid_sup = built.grid_sup_error;
  row.has_grid_sup = true;
  row.certified_sup = built.certified_sup;
  row.has_certified_sup = built.has_certified_sup;
  row.certified = built.certified;
  if (!cfg.no_timing)
    row.ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                 std::chrono::steady_clock::now() - t0)
                 .count();
  return row;
}

SweepRow theoretical_cell(const SweepConfig& cfg, const Cell& cell) {
  const auto t0 = std::chrono::steady_clock::now();
  const int k = dyadic_exponent(cell.eps);
  const double c0 = std::fabs(cfg.K);
  const CountBoundCheck cbc =
      softplus_count_bound_check(c0, 0.0, cfg.T, cfg.a, cfg.b, cell.d, k);
  const GrowthConstants gc = softplus_family_growth_constants(c0, 0.0);
  const TheoreticalConstants tc = theoretical_constants(
      gc, cfg.T, cfg.a, cfg.b, std::max(1.0, cell.eps));
  const mpz_class n = theoretical_sample_count(tc, cell.d, cell.eps);
  const std::vector<long> shape = {cell.d, 1, 1};

  SweepRow row;
  row.d = cell.d;
  row.eps = cell.eps;
  row.seed = cell.seed;
  row.mode = cfg.mode;
  row.n_used = n.get_str();
  row.params = cbc.count.get_str();
  // Exact nonzero counts need a materialized network; emit the exact
  // upper bound n * params(phi) instead.
  row.nonzero_params = mpz_class(n * (cell.d + 3)).get_str();
  row.neurons = averaged_neuron_count(shape, n).get_str();
  row.depth = "3";
  row.certified = cbc.ok;
  row.params_bound = cbc.bound.get_str();
  if (!cfg.no_timing)
    row.ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                 std::chrono::steady_clock::now() - t0)
                 .count();
  return row;
}

bool row_key_less(const SweepRow& x, const SweepRow& y) {
  if (x.d != y.d) return x.d < y.d;
  if (x.eps != y.eps) return x.eps < y.eps;
  return x.seed < y.seed;
}

}  // namespace

std::vector<SweepRow> run_sweep(const SweepConfig& cfg) {
  validate(cfg);

  std::vector<Cell> cells;
  for (int d : cfg.dims)
    for (double eps : cfg.eps_values)
      for (std::uint64_t seed : cfg.seeds) cells.push_back({d, eps, seed});

  std::vector<SweepRow> rows(cells.size());
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const std::size_t workers =
      std::min<std::size_t>(cfg.threads > 0 ? cfg.threads : hw, cells.size());

  // Cells are independent and own their RNG streams, so any schedule
  // produces the same rows; results land at fixed indices.
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto work = [&]() {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= cells.size()) return;
      try {
        rows[i] = cfg.mode == "empirical" ? empirical_cell(cfg, cells[i])
                                          : theoretical_cell(cfg, cells[i]);
      } catch (...) {
        const std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        return;
      }
    }
  };
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < workers; ++t) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  }
  if (failure) std::rethrow_exception(failure);

  std::stable_sort(rows.begin(), rows.end(), row_key_less);
  return rows;
}

std::string format_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

std::string sweep_csv_header() {
  return "d,eps,seed,mode,n_used,P,Pnz,N,L,grid_sup,certified_sup,"
         "certified,ms";
}

std::string sweep_csv_line(const SweepRow& row) {
  std::string line;
  line += std::to_string(row.d);
  line += ',';
  line += format_double(row.eps);
  line += ',';
  line += std::to_string(row.seed);
  line += ',';
  line += row.mode;
  line += ',';
  line += row.n_used;
  line += ',';
  line += row.params;
  line += ',';
  line += row.nonzero_params;
  line += ',';
  line += row.neurons;
  line += ',';
  line += row.depth;
  line += ',';
  if (row.has_grid_sup) line += format_double(row.grid_sup);
  line += ',';
  if (row.has_certified_sup) line += format_double(row.certified_sup);
  line += ',';
  line += row.certified ? "true" : "false";
  line += ',';
  line += std::to_string(row.ms);
  return line;
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::string out = sweep_csv_header();
  out += '\n';
  for (const SweepRow& row : rows) {
    out += sweep_csv_line(row);
    out += '\n';
  }
  return out;
}

SlopeFit fit_loglog_slope(const std::vector<double>& x,
                          const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2)
    throw std::invalid_argument("fit: need >= 2 paired points");
  if (std::set<double>(x.begin(), x.end()).size() < 2)
    throw std::invalid_argument("fit: need >= 2 distinct x values");
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  SlopeFit fit;
  fit.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  fit.intercept = (sy - fit.slope * sx) / n;
  fit.points = static_cast<int>(x.size());
  return fit;
}

namespace {

double log_n_used(const SweepRow& row) {
  return std::log(std::stod(row.n_used));
}

double median_of(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size() / 2;
  return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

// Per-seed doubling sizes are heavily skewed (the search stops at the
// first lucky certification), so slopes are fitted through the per-group
// seed medians rather than the pooled points.
template <typename Key>
std::map<Key, SlopeFit> grouped_slopes(
    const std::vector<SweepRow>& rows,
    const std::function<Key(const SweepRow&)>& group,
    const std::function<double(const SweepRow&)>& abscissa) {
  std::map<Key, std::map<double, std::vector<double>>> cells;
  for (const SweepRow& row : rows) {
    if (row.mode != "empirical") continue;
    cells[group(row)][abscissa(row)].push_back(log_n_used(row));
  }
  std::map<Key, SlopeFit> out;
  for (const auto& [key, by_x] : cells) {
    if (by_x.size() < 2) continue;
    std::vector<double> xs, ys;
    for (const auto& [x, logs] : by_x) {
      xs.push_back(x);
      ys.push_back(median_of(logs));
    }
    out[key] = fit_loglog_slope(xs, ys);
  }
  return out;
}

}  // namespace

std::map<int, SlopeFit> slopes_vs_inverse_eps(
    const std::vector<SweepRow>& rows) {
  return grouped_slopes<int>(
      rows, [](const SweepRow& r) { return r.d; },
      [](const SweepRow& r) { return std::log(1.0 / r.eps); });
}

std::map<std::string, SlopeFit> slopes_vs_dim(
    const std::vector<SweepRow>& rows) {
  return grouped_slopes<std::string>(
      rows, [](const SweepRow& r) { return format_double(r.eps); },
      [](const SweepRow& r) { return std::log(static_cast<double>(r.d)); });
}

nlohmann::json sweep_json(const SweepConfig& cfg,
                          const std::vector<SweepRow>& rows) {
  nlohmann::json j;
  j["config"] = {{"dims", cfg.dims},
                 {"eps", cfg.eps_values},
                 {"seeds", cfg.seeds},
                 {"mode", cfg.mode},
                 {"T", cfg.T},
                 {"domain", {cfg.a, cfg.b}},
                 {"K", cfg.K},
                 {"restarts", cfg.restarts},
                 {"n_start", cfg.n_start},
                 {"n_max", cfg.n_max}};
  nlohmann::json out_rows = nlohmann::json::array();
  for (const SweepRow& row : rows) {
    nlohmann::json r;
    r["d"] = row.d;
    r["eps"] = row.eps;
    r["seed"] = row.seed;
    r["mode"] = row.mode;
    r["n_used"] = row.n_used;
    r["P"] = row.params;
    r["Pnz"] = row.nonzero_params;
    r["N"] = row.neurons;
    r["L"] = row.depth;
    r["grid_sup"] =
        row.has_grid_sup ? nlohmann::json(row.grid_sup) : nullptr;
    r["certified_sup"] =
        row.has_certified_sup ? nlohmann::json(row.certified_sup) : nullptr;
    r["certified"] = row.certified;
    r["ms"] = row.ms;
    if (!row.params_bound.empty()) r["P_bound"] = row.params_bound;
    out_rows.push_back(std::move(r));
  }
  j["rows"] = std::move(out_rows);

  nlohmann::json slopes;
  for (const auto& [d, fit] : slopes_vs_inverse_eps(rows))
    slopes["n_vs_inverse_eps"][std::to_string(d)] = {
        {"slope", fit.slope}, {"intercept", fit.intercept},
        {"points", fit.points}};
  for (const auto& [eps, fit] : slopes_vs_dim(rows))
    slopes["n_vs_dim"][eps] = {{"slope", fit.slope},
                               {"intercept", fit.intercept},
                               {"points", fit.points}};
  j["slopes"] = std::move(slopes);
  return j;
}

}  // namespace heatnet
