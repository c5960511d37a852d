#pragma once

#include <gmpxx.h>

#include <string>

#include "halfint/eis_theta.hpp"
#include "halfint/qseries.hpp"
#include "halfint/weight.hpp"

namespace halfint {

/**
 * Quadratic tame nebentypus mod `modulus`, given by the Kronecker symbol
 * (disc/n); disc = 1 is the trivial character.  Vanishes off units.
 */
struct TameCharacter {
  long modulus = 4;
  long disc = 1;

  int value(long n) const;
  bool is_trivial() const { return disc == 1; }
  static TameCharacter trivial(long modulus = 4) { return TameCharacter{modulus, 1}; }
};

/**
 * Half-integral-weight form of weight kappa (k = 2*lambda + 1 over 2) and tame
 * level 4N, stored in the classical normalization: qexp is the expansion of
 * F * theta * E_kappa at the distinguished cusp.  r is the growth-radius tag;
 * operators keep r <= r_schedule(tier of kappa).
 */
template <class C>
struct HalfIntForm {
  Weight kappa;
  long tame_level = 4;
  TameCharacter chi;
  QSeries<C> qexp;
  mpq_class r;
};

/** A p-adic family of forms is a form with family coefficients. */
using FormFamily = HalfIntForm<FamilyElt>;

/** Validates the tag invariants (level divisibility, r against the schedule). */
template <class C>
HalfIntForm<C> make_form(const Weight& kappa, long tame_level, TameCharacter chi,
                         QSeries<C> qexp, const mpq_class& r);
template <class C>
HalfIntForm<C> make_form(const Weight& kappa, long tame_level, TameCharacter chi,
                         QSeries<C> qexp);

/** theta as the weight-x^0 form on Gamma_0(4), rational coefficients. */
HalfIntForm<mpq_class> theta_form(long p, long N);

/** U_{ell^2} for ell | 4Np: contraction b_n = a_{ell^2 n}; for ell = p the
 *  radius tag improves to min(p*r, schedule cap). */
template <class C>
HalfIntForm<C> hecke_u(const HalfIntForm<C>& F, long ell);

/**
 * T_{ell^2} for primes ell coprime to 4Np:
 *   b_n = a_{ell^2 n} + kappa(ell) chi(ell) ell^{-1} ((-1)^i n / ell) a_n
 *       + kappa(ell)^2 chi(ell)^2 ell^{-1} a_{n/ell^2},
 * with a_{n/ell^2} = 0 when ell^2 does not divide n (n = 0 uses a_0).  The
 * family version substitutes the analytic function [ell] for kappa(ell).
 */
template <class C>
HalfIntForm<C> hecke_t(const HalfIntForm<C>& F, long ell);

/** Diamond operator: multiplies by chi(d) * (-1/d)^i (odd p; chi(d) alone at p=2). */
template <class C>
HalfIntForm<C> diamond(const HalfIntForm<C>& F, long d);

template <class C>
bool is_cuspidal_at_infinity(const HalfIntForm<C>& F) {
  return coeff_is_zero(F.qexp.a[0]);
}

/**
 * Conversion between the classical normalization and weight-0 sections:
 * to_weight_zero(F) = qexp / (theta * E_kappa), with E := 1 at lambda = 0.
 */
QSeries<mpq_class> to_weight_zero(const HalfIntForm<mpq_class>& F);
QSeries<PadicNum> to_weight_zero(const HalfIntForm<PadicNum>& F, long M);
HalfIntForm<mpq_class> from_weight_zero(const QSeries<mpq_class>& G, const Weight& kappa,
                                        long tame_level, TameCharacter chi);
HalfIntForm<PadicNum> from_weight_zero(const QSeries<PadicNum>& G, const Weight& kappa,
                                       long tame_level, TameCharacter chi);

/** theta * E_kappa in the requested domain (the normalization divisor). */
QSeries<mpq_class> theta_eis_product(const Weight& kappa, long N);
QSeries<PadicNum> theta_eis_product_padic(const Weight& kappa, long N, long M);
QSeries<FamilyElt> theta_eis_product_family(const std::shared_ptr<const FamilyFrame>& frame,
                                            long N);

/** Specialize a family of forms at a weight in its frame's disk. */
HalfIntForm<PadicNum> specialize_form(const FormFamily& F, const Weight& kappa);

}  // namespace halfint
