#include "heatnet/constants.hpp"

#include <mpfr.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace heatnet {

namespace {

void require(bool cond, const char* msg) {
  if (!cond) throw std::invalid_argument(msg);
}

// Exact mpz from a double that must hold an integer; the bound-check
// routines need integral inputs so both sides stay exact.
mpz_class exact_integer(double x, const char* what) {
  if (!(std::isfinite(x)) || x != std::floor(x) || std::fabs(x) > 0x1p53)
    throw std::invalid_argument(std::string(what) +
                                " must be an exactly representable integer");
  return mpz_class(static_cast<long>(x));
}

}  // namespace

void GrowthConstants::validate() const {
  require(c >= 0.5, "growth constant c must be >= 1/2");
  require(v >= 0.0 && vv >= 0.0, "accuracy exponents v, vv must be >= 0");
  require(w >= 0.0 && ww >= 0.0, "gradient exponents w, ww must be >= 0");
  require(z >= 0.0 && zz >= 0.0, "value exponents z, zz must be >= 0");
  require(beta >= 0.0, "trace exponent beta must be >= 0");
  require(std::isfinite(alpha), "drift exponent alpha must be finite");
  require(p_count >= 0.0 && q_count >= 0.0,
          "count exponents p_count, q_count must be >= 0");
}

TheoreticalConstants theoretical_constants(const GrowthConstants& gc,
                                           double T, double a, double b,
                                           double r) {
  gc.validate();
  require(T > 0.0, "time horizon T must be positive");
  require(b > a, "cube endpoints must satisfy a < b");
  require(r > 0.0, "accuracy ceiling r must be positive");

  TheoreticalConstants tc;
  tc.r = r;

  const double ccal_base = 5.0 * gc.c + T + std::sqrt(gc.vv) + std::fabs(a) +
                           std::fabs(b);
  tc.Ccal = 0.5 * std::pow(ccal_base, -4.0 * gc.vv - 1.0);

  const double cbold_base = 7.0 * gc.c + T + std::sqrt(gc.zz) +
                            std::sqrt(gc.ww) + std::fabs(a) + std::fabs(b);
  tc.Cbold = (4.0 * std::pow(cbold_base, 10.0 + 8.0 * (gc.zz + gc.ww)) + 1.0) *
             (1.0 + r * r);

  const double m = std::max(gc.alpha, gc.beta + 1.0);
  tc.pexp = 2.0 + std::max(2.0 * gc.z + 2.0 * gc.zz * m,
                           2.0 * gc.w + 1.0 + 2.0 * gc.ww * m);
  tc.pfrak = gc.v + gc.vv * std::max({gc.alpha, gc.beta, 0.5});

  tc.feasible = std::isfinite(tc.Cbold) && std::isfinite(tc.Ccal) &&
                tc.Ccal > 0.0;
  return tc;
}

mpz_class theoretical_sample_count(const TheoreticalConstants& tc, int d,
                                   double eps) {
  require(tc.feasible, "constants overflowed; infeasible at this scale");
  require(d >= 1, "dimension must be >= 1");
  require(eps > 0.0 && eps <= tc.r, "accuracy must lie in (0, r]");

  // Enough mantissa to hold the integer part of the product exactly, with
  // slack for the two roundings; capped so degenerate inputs stay cheap.
  const double bits = std::log2(tc.Cbold) + tc.pexp * std::log2(double(d)) +
                      2.0 * std::log2(1.0 / eps);
  const mpfr_prec_t prec = static_cast<mpfr_prec_t>(
      std::clamp(std::ceil(bits) + 64.0, 128.0, 16384.0));

  mpfr_t acc, tmp;
  mpfr_init2(acc, prec);
  mpfr_init2(tmp, prec);

  mpfr_set_d(acc, tc.Cbold, MPFR_RNDN);
  mpfr_set_si(tmp, d, MPFR_RNDN);
  {
    mpfr_t e;
    mpfr_init2(e, prec);
    mpfr_set_d(e, tc.pexp, MPFR_RNDN);
    mpfr_pow(tmp, tmp, e, MPFR_RNDN);
    mpfr_clear(e);
  }
  mpfr_mul(acc, acc, tmp, MPFR_RNDN);

  mpfr_set_d(tmp, eps, MPFR_RNDN);
  mpfr_pow_si(tmp, tmp, -2, MPFR_RNDN);
  mpfr_mul(acc, acc, tmp, MPFR_RNDN);

  mpfr_ceil(acc, acc);
  mpz_class n;
  mpfr_get_z(n.get_mpz_t(), acc, MPFR_RNDN);

  mpfr_clear(acc);
  mpfr_clear(tmp);
  return n;
}

double inner_accuracy(const TheoreticalConstants& tc,
                      const GrowthConstants& gc, int d, double eps) {
  require(d >= 1, "dimension must be >= 1");
  require(eps > 0.0, "accuracy must be positive");
  return eps / gc.c * std::pow(double(d), -tc.pfrak) * tc.Ccal;
}

GrowthConstants softplus_family_growth_constants(double c0, double pK) {
  require(c0 >= 0.0, "threshold scale c0 must be >= 0");
  require(pK >= 0.0, "threshold exponent pK must be >= 0");
  GrowthConstants gc;
  gc.c = std::max(4.0, 4.0 * c0);
  gc.v = 0.0;
  gc.vv = 0.0;
  gc.w = 0.5;
  gc.ww = 0.0;
  gc.z = std::max(pK, 0.5);
  gc.zz = 1.0;
  gc.alpha = 0.0;
  gc.beta = 0.5;
  gc.p_count = 1.0;
  gc.q_count = 0.0;
  gc.validate();
  return gc;
}

namespace {

void check_shape(const std::vector<long>& shape, const mpz_class& n) {
  require(shape.size() >= 3, "layer sizes must describe depth >= 2");
  for (long l : shape) require(l >= 1, "layer sizes must be >= 1");
  require(n >= 1, "ensemble size must be >= 1");
}

}  // namespace

mpz_class averaged_neuron_count(const std::vector<long>& shape,
                                const mpz_class& n) {
  check_shape(shape, n);
  const std::size_t L = shape.size() - 1;
  mpz_class total = shape[0];
  for (std::size_t k = 1; k < L; ++k) total += n * shape[k];
  total += shape[L];
  return total;
}

mpz_class averaged_param_count(const std::vector<long>& shape,
                               const mpz_class& n) {
  check_shape(shape, n);
  const std::size_t L = shape.size() - 1;
  mpz_class total = n * shape[1] * (shape[0] + 1);
  for (std::size_t k = 2; k < L; ++k)
    total += n * shape[k] * (n * shape[k - 1] + 1);
  total += n * shape[L] * shape[L - 1] + shape[L];
  return total;
}

CountBoundCheck softplus_count_bound_check(double c0, double pK, double T,
                                           double a, double b, int d, int k) {
  require(d >= 1, "dimension must be >= 1");
  require(k >= 0, "accuracy exponent k must be >= 0");

  const GrowthConstants gc = softplus_family_growth_constants(c0, pK);
  const TheoreticalConstants tc = theoretical_constants(gc, T, a, b, 1.0);
  const double eps = std::ldexp(1.0, -k);
  const mpz_class n = theoretical_sample_count(tc, d, eps);

  CountBoundCheck res;
  res.count = averaged_param_count({long(d), 1, 1}, n);

  // kappa = Cbold^2 c, with Cbold rebuilt in exact integer arithmetic:
  // zz = 1, ww = 0, r = 1 give base = 7c + T + 1 + |a| + |b| and
  // Cbold = (4 base^18 + 1) * 2.
  const mpz_class c_int = exact_integer(gc.c, "merged growth constant c");
  const mpz_class base = 7 * c_int + exact_integer(T, "T") + 1 +
                         exact_integer(std::fabs(a), "|a|") +
                         exact_integer(std::fabs(b), "|b|");
  mpz_class base_pow;
  mpz_pow_ui(base_pow.get_mpz_t(), base.get_mpz_t(), 18);
  const mpz_class cbold = (4 * base_pow + 1) * 2;
  const mpz_class kappa = cbold * cbold * c_int;

  const double dexp = 11.0 + 4.0 * gc.z;
  const mpz_class dexp_int = exact_integer(dexp, "dimension exponent 11+4z");
  mpz_class d_pow;
  mpz_pow_ui(d_pow.get_mpz_t(), mpz_class(d).get_mpz_t(),
             dexp_int.get_ui());
  mpz_class eps_pow;  // eps^{-4} = 2^{4k}
  mpz_ui_pow_ui(eps_pow.get_mpz_t(), 2, 4u * static_cast<unsigned>(k));

  res.bound = kappa * d_pow * eps_pow;
  res.ok = res.count <= res.bound;
  return res;
}

}  // namespace heatnet
