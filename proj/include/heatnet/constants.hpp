#pragma once

#include <gmpxx.h>

#include <vector>

namespace heatnet {

// Growth data of an approximating-network family phi_{eps,d}:
//   |R phi(x)|        <= c d^z  (1 + ||x||^zz)
//   ||grad R phi(x)|| <= c d^w  (1 + ||x||^ww)
//   |phi_0(x) - R phi(x)| <= eps c d^v (1 + ||x||^vv)
//   param_count(phi)  <= c d^p_count eps^{-q_count}
// plus the equation data ||mu|| <= c d^alpha, sqrt(Trace(A)) <= c d^beta.
struct GrowthConstants {
  double c = 0.5;  // must be >= 1/2
  double v = 0.0, vv = 0.0;
  double w = 0.0, ww = 0.0;
  double z = 0.0, zz = 0.0;
  double alpha = 0.0;
  double beta = 0.0;  // >= 0
  double p_count = 0.0, q_count = 0.0;

  void validate() const;  // throws std::invalid_argument on violation
};

// The four closed-form constants of the averaging construction:
//   Ccal  = 1/2 [5c + T + sqrt(vv) + |a| + |b|]^{-4 vv - 1}
//   Cbold = (4 [7c + T + sqrt(zz) + sqrt(ww) + |a| + |b|]^{10 + 8(zz + ww)}
//            + 1)(1 + r^2)
//   pexp  = 2 + max{2z + 2 zz m, 2w + 1 + 2 ww m},  m = max{alpha, beta + 1}
//   pfrak = v + vv max{alpha, beta, 1/2}
// Ccal <= 1 whenever c >= 1/2.  feasible flips to false when the
// double-precision evaluation overflows.
struct TheoreticalConstants {
  double Ccal = 0.0;
  double Cbold = 0.0;
  double pexp = 0.0;
  double pfrak = 0.0;
  double r = 0.0;  // accuracy ceiling the constants were built for
  bool feasible = true;
};

TheoreticalConstants theoretical_constants(const GrowthConstants& gc,
                                           double T, double a, double b,
                                           double r);

// ceil(Cbold d^pexp eps^{-2}) as an exact integer, evaluated in extended
// precision sized to the magnitude of the result so astronomically large
// counts come back exactly.  Requires 0 < eps <= tc.r and a feasible tc.
mpz_class theoretical_sample_count(const TheoreticalConstants& tc, int d,
                                   double eps);

// eps c^{-1} d^{-pfrak} Ccal: the accuracy at which the inner network must
// be selected; always <= eps when c >= 1/2.
double inner_accuracy(const TheoreticalConstants& tc,
                      const GrowthConstants& gc, int d, double eps);

// Growth constants of the softplus ridge family ln(1+e^{1.x-K})+K with
// |K_d| <= c0 d^pK under the plain heat equation: the two-layer ridge nets
// represent the initial condition exactly (v = vv = 0), have d+3 <= 4d
// parameters (p_count = 1, q_count = 0), values bounded by
// (1+2c0) d^{max(pK,1/2)} (1+||x||) (z = max(pK,1/2), zz = 1), gradient
// bounded by sqrt(d) (w = 1/2, ww = 0), and sqrt(Trace(I_d)) = d^{1/2}
// (alpha = 0, beta = 1/2); the single merged c = max{4, 4 c0} dominates
// every prefactor.
GrowthConstants softplus_family_growth_constants(double c0, double pK);

// Exact neuron/parameter counts of the n-fold parallel average of a
// network with the given layer sizes (l_0, ..., l_L), without building it:
//   neurons(psi) = l_0 + n (l_1 + ... + l_{L-1}) + l_L
//   params(psi)  = n l_1 (l_0 + 1)
//                + sum_{k=2}^{L-1} n l_k (n l_{k-1} + 1)
//                + n l_L l_{L-1} + l_L
mpz_class averaged_neuron_count(const std::vector<long>& shape,
                                const mpz_class& n);
mpz_class averaged_param_count(const std::vector<long>& shape,
                               const mpz_class& n);

// Exact-integer verdict on the polynomial-count claim for the softplus
// ridge family: with the theoretical sample count n at accuracy eps = 2^-k,
// the averaged net over shape (d, 1, 1) must satisfy
//   params <= kappa d^{11 + 4 max(pK, 1/2)} eps^{-4},
// where kappa = Cbold^2 c and Cbold is evaluated at zz = 1, ww = 0, r = 1.
// c0, pK, T, a, b must make every base an integer (e.g. the defaults
// c0 = 0, T = 1, a = 0, b = 1) so both sides are exact.
struct CountBoundCheck {
  mpz_class count;
  mpz_class bound;
  bool ok = false;
};
CountBoundCheck softplus_count_bound_check(double c0, double pK, double T,
                                           double a, double b, int d, int k);

}  // namespace heatnet
