#pragma once

#include <vector>

#include "halfint/eis_theta.hpp"
#include "halfint/forms.hpp"
#include "halfint/qseries.hpp"
#include "halfint/weight.hpp"

namespace halfint {

enum class OrbitKind { mu, mixed, etale };

/** One cyclic order-ell^2 subgroup of the ell-power torsion of the Tate
 *  curve: the mu-type subgroup (index unused), a mixed subgroup generated by
 *  zeta_{ell^2}^b q_ell with 1 <= index = b <= ell-1, or an etale subgroup
 *  generated by zeta_{ell^2}^a q_{ell^2} with 0 <= index = a <= ell^2-1. */
struct SubgroupOrbit {
  OrbitKind kind;
  long index;
};

/** All ell^2 + ell subgroups, in the fixed summation order: mu, then mixed
 *  b = 1..ell-1, then etale a = 0..ell^2-1.  ell must be an odd prime. */
std::vector<SubgroupOrbit> subgroup_orbits(long ell);

/**
 * Theta-quotient attached to one subgroup, as an exact series over
 * Q(zeta_{ell^2}) on the D = ell^2 grid with q-precision prec:
 *   mu      ell * theta(q^{ell^2}) / theta(q)
 *   mixed   (-1/ell) g_ell(zeta_ell^b) theta(zeta_ell^b q) / theta(q)
 *   etale   theta(zeta_{ell^2}^a q_{ell^2}) / theta(q)
 */
QSeries<CycloElt> theta_twist(const SubgroupOrbit& orb, long ell, long prec);

/**
 * Eisenstein quotient attached to one subgroup, with the bracket specialized
 * to kappa(<ell>); kappa must be arithmetic on component 0 with trivial psi
 * and rational Eisenstein coefficients:
 *   mu      kappa(<ell>)^2 E(q^{ell^2}) / E(q)
 *   mixed   kappa(<ell>)   E(zeta_ell^b q) / E(q)
 *   etale   E(zeta_{ell^2}^a q_{ell^2}) / E(q)
 */
QSeries<CycloElt> eis_twist(const SubgroupOrbit& orb, long ell, const Weight& kappa, long prec);

/** One subgroup's contribution to the T_{ell^2} sum with the theta and
 *  Eisenstein quotients cancelled against the pullback's 1/(theta E) factor:
 *  a scalar times the substituted q-expansion of F, on the D = ell^2 grid. */
QSeries<CycloElt> hecke_t_orbit_term(const HalfIntForm<mpq_class>& F, long ell,
                                     const SubgroupOrbit& orb, long prec);

/**
 * T_{ell^2} recomputed by summing over all cyclic order-ell^2 subgroups in
 * exact rational-cyclotomic arithmetic.  The root-of-unity filters and
 * Gauss-sum identities that make fractional exponents and zeta-components
 * cancel are asserted (NonIntegralExponentResidue / NonRationalResidue on
 * failure), not assumed.  Requires ell an odd prime coprime to 4Np, kappa
 * arithmetic on component 0 with trivial psi and rational kappa(<ell>), and
 * F.qexp with at least prec * ell^2 coefficients.
 */
QSeries<mpq_class> hecke_t_oracle(const HalfIntForm<mpq_class>& F, long ell, long prec);

/** U_{p^2} recomputed from the p^2 etale subgroups alone (p odd); the result
 *  is independent of the weight, so no classical-locus restriction applies. */
QSeries<mpq_class> hecke_u_oracle(const HalfIntForm<mpq_class>& F, long p, long prec);

/** The same subgroup sums with every theta/Eisenstein quotient multiplied out
 *  literally: each orbit contributes pullback(F/(theta E)) * theta_twist *
 *  eis_twist, and the total is multiplied by theta(q) E(q) at the end.  Much
 *  heavier (inverting E grows denominators fast); intended for low-precision
 *  cross-checks of the cancelled path. */
QSeries<mpq_class> hecke_t_oracle_literal(const HalfIntForm<mpq_class>& F, long ell, long prec);
QSeries<mpq_class> hecke_u_oracle_literal(const HalfIntForm<mpq_class>& F, long p, long prec);

}  // namespace halfint
