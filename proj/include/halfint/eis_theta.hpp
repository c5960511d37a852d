#pragma once

#include <gmpxx.h>

#include <memory>

#include "halfint/qseries.hpp"
#include "halfint/weight.hpp"

namespace halfint {

/** Bernoulli number B_n (B_1 = -1/2), cached; zigzag-triangle backend. */
const mpq_class& bernoulli_number(long n);

/**
 * Kubota-Leopoldt value zeta_p(x^lambda) = (1 - p^(lambda-1)) * (-B_lambda/lambda),
 * defined here for lambda >= 2 divisible by phi(q).
 */
mpq_class zeta_p_rational(long p, long lambda);

/** Same value as an element of Q_p; ZetaValueUnavailable off the classical locus. */
PadicNum zeta_p_value(const Weight& kappa, long M);

/** theta(q) = 1 + 2 sum_{k>=1} q^(k^2). */
QSeries<mpq_class> theta_qexp(long N);

/** F(q) = sum_{n odd} sigma_1(n) q^n, the weight-2 form on Gamma_0(4). */
QSeries<mpq_class> f_weight2_qexp(long N);

/**
 * p-deprived Eisenstein series of weight lambda:
 *   E = 1 + (2/zeta_p(x^lambda)) sum_n ( sum_{d|n, p∤d} d^(lambda-1) ) q^n,
 * normalized to constant term 1.  Needs lambda >= 2, phi(q) | lambda.
 */
QSeries<mpq_class> eisenstein_rational(long p, long lambda, long N);

/** The same series with coefficients in Q_p at precision M (classical locus only). */
QSeries<PadicNum> eisenstein_padic(const Weight& kappa, long N, long M);

/** Eisenstein family over an interpolation frame: node j carries E_{kappa_j}. */
QSeries<FamilyElt> eisenstein_family(const std::shared_ptr<const FamilyFrame>& frame, long N);

/**
 * The quotient expansions attached to the degeneracy maps at ell:
 * E(q)/E(q^ell), E(q^ell)/E(q^{ell^2}), their telescoped product
 * E(q)/E(q^{ell^2}), and the fractional-exponent quotient
 * kappa(<ell>) E(q)/E(q_ell) on the D = ell grid.
 */
struct EisRatios {
  QSeries<mpq_class> over_ell;
  QSeries<mpq_class> middle;
  QSeries<mpq_class> over_ell_sq;
  QSeries<mpq_class> puiseux;
};
EisRatios eis_ratio_expansions(long p, long lambda, long ell, long N);

}  // namespace halfint
