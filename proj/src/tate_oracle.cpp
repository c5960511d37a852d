#include "halfint/tate_oracle.hpp"

#include <string>

namespace halfint {

namespace {

// Shared guard for the exact-cyclotomic paths that evaluate kappa; returns lambda.
long classical_lambda(const Weight& kappa, const char* who) {
  std::string w(who);
  if (!kappa.is_arithmetic()) throw EvalError(w + ": needs an arithmetic weight");
  if (kappa.component() != 0) throw EvalError(w + ": needs component 0");
  if (!kappa.arith().psi.is_trivial(kappa.prime())) throw EvalError(w + ": needs trivial psi");
  long lambda = kappa.arith().lambda;
  if (lambda != 0 && (lambda < 2 || lambda % kappa.phi_q() != 0))
    throw EvalError(w + ": kappa(<ell>) is irrational off the classical locus");
  return lambda;
}

QSeries<mpq_class> eis_or_one(long p, long lambda, long N) {
  return lambda == 0 ? qseries_one(N, mpq_class(0)) : eisenstein_rational(p, lambda, N);
}

void check_odd_prime(long ell, const char* who) {
  if (ell < 3 || ell % 2 == 0 || !is_prime(ell))
    throw DomainError(std::string(who) + ": need an odd prime");
}

// Place a D = 1 series on the D = ell^2 grid (S slots, conductor ell^2) under
// the subgroup's substitution: q -> q^{ell^2} (mu), q -> zeta_ell^b q (mixed),
// q -> zeta_{ell^2}^a q_{ell^2} (etale).
QSeries<CycloElt> orbit_substitute(const QSeries<mpq_class>& f, long ell,
                                   const SubgroupOrbit& orb, long S) {
  long ell2 = ell * ell;
  QSeries<CycloElt> r = make_qseries<CycloElt>(ell2, S, CycloElt::zero(ell2));
  switch (orb.kind) {
    case OrbitKind::mu: {
      long step = ell2 * ell2;
      for (long m = 0; m < f.N() && m * step < S; ++m)
        if (f.a[(size_t)m] != 0) r.a[(size_t)(m * step)] = CycloElt(ell2, f.a[(size_t)m]);
      break;
    }
    case OrbitKind::mixed: {
      long b = orb.index % ell;
      for (long m = 0; m < f.N() && m * ell2 < S; ++m)
        if (f.a[(size_t)m] != 0)
          r.a[(size_t)(m * ell2)] =
              CycloElt(ell2, f.a[(size_t)m]).times_zeta(ell * ((b * (m % ell)) % ell));
      break;
    }
    case OrbitKind::etale: {
      long a = orb.index % ell2;
      for (long m = 0; m < f.N() && m < S; ++m)
        if (f.a[(size_t)m] != 0)
          r.a[(size_t)m] = CycloElt(ell2, f.a[(size_t)m]).times_zeta((a * (m % ell2)) % ell2);
      break;
    }
  }
  return r;
}

// f(q) itself on the D = ell^2 grid.
QSeries<CycloElt> to_grid(const QSeries<mpq_class>& f, long ell, long S) {
  return orbit_substitute(f, ell, SubgroupOrbit{OrbitKind::mixed, 0}, S);
}

CycloElt orbit_scalar_theta(const SubgroupOrbit& orb, long ell) {
  long ell2 = ell * ell;
  switch (orb.kind) {
    case OrbitKind::mu:
      return CycloElt(ell2, mpq_class(ell));
    case OrbitKind::mixed:
      return gauss_sum(ell, orb.index).embed(ell2) * mpq_class(minus_one_over(ell));
    default:
      return CycloElt::one(ell2);
  }
}

mpq_class orbit_scalar_eis(const SubgroupOrbit& orb, long ell, long lambda) {
  mpq_class kell(pow_z(mpz_class(ell), lambda));
  switch (orb.kind) {
    case OrbitKind::mu:
      return kell * kell;
    case OrbitKind::mixed:
      return kell;
    default:
      return mpq_class(1);
  }
}

mpq_class orbit_scalar_chi(const SubgroupOrbit& orb, const TameCharacter& chi, long ell) {
  long c = chi.value(ell);
  switch (orb.kind) {
    case OrbitKind::mu:
      return mpq_class(c * c);
    case OrbitKind::mixed:
      return mpq_class(c);
    default:
      return mpq_class(1);
  }
}

void check_oracle_form(const HalfIntForm<mpq_class>& F, long ell, long prec, long S,
                       const char* who, bool at_own_prime) {
  std::string w(who);
  if (prec < 1) throw DomainError(w + ": need prec >= 1");
  if (F.qexp.D != 1) throw DomainError(w + ": expected an integral q-expansion");
  if (F.qexp.N() < S)
    throw PrecisionError(w + ": q-expansion too short; need prec * ell^2 coefficients");
  if (!at_own_prime && (ell == F.kappa.prime() || F.tame_level % ell == 0))
    throw DomainError(w + ": ell must be coprime to 4Np");
}

QSeries<mpq_class> collapse(const QSeries<CycloElt>& total, long ell2) {
  QSeries<CycloElt> scaled = total * CycloElt(ell2, mpq_class(1, ell2));
  return to_rational(reduce_denominator(scaled, 1));
}

}  // namespace

std::vector<SubgroupOrbit> subgroup_orbits(long ell) {
  check_odd_prime(ell, "subgroup_orbits");
  std::vector<SubgroupOrbit> v;
  v.reserve((size_t)(ell * ell + ell));
  v.push_back({OrbitKind::mu, 0});
  for (long b = 1; b < ell; ++b) v.push_back({OrbitKind::mixed, b});
  for (long a = 0; a < ell * ell; ++a) v.push_back({OrbitKind::etale, a});
  return v;
}

QSeries<CycloElt> theta_twist(const SubgroupOrbit& orb, long ell, long prec) {
  check_odd_prime(ell, "theta_twist");
  if (prec < 1) throw DomainError("theta_twist: need prec >= 1");
  long S = prec * ell * ell;
  QSeries<mpq_class> th = theta_qexp(S);
  QSeries<CycloElt> num = orbit_substitute(th, ell, orb, S);
  QSeries<CycloElt> den = to_grid(th, ell, S);
  return (num * invert(den)) * orbit_scalar_theta(orb, ell);
}

QSeries<CycloElt> eis_twist(const SubgroupOrbit& orb, long ell, const Weight& kappa, long prec) {
  check_odd_prime(ell, "eis_twist");
  if (prec < 1) throw DomainError("eis_twist: need prec >= 1");
  long lambda = classical_lambda(kappa, "eis_twist");
  long S = prec * ell * ell;
  QSeries<mpq_class> E = eis_or_one(kappa.prime(), lambda, S);
  QSeries<CycloElt> num = orbit_substitute(E, ell, orb, S);
  QSeries<CycloElt> den = to_grid(E, ell, S);
  return (num * invert(den)) * CycloElt(ell * ell, orbit_scalar_eis(orb, ell, lambda));
}

QSeries<CycloElt> hecke_t_orbit_term(const HalfIntForm<mpq_class>& F, long ell,
                                     const SubgroupOrbit& orb, long prec) {
  check_odd_prime(ell, "hecke_t_oracle");
  long lambda = classical_lambda(F.kappa, "hecke_t_oracle");
  long ell2 = ell * ell;
  long S = prec * ell2;
  check_oracle_form(F, ell, prec, S, "hecke_t_oracle", false);
  // Cancelled form: theta_twist * eis_twist * pullback(F/(theta E)) * theta E
  // collapses to a scalar times the substituted q-expansion of F.
  CycloElt scalar = orbit_scalar_theta(orb, ell) *
                    (orbit_scalar_eis(orb, ell, lambda) * orbit_scalar_chi(orb, F.chi, ell));
  return orbit_substitute(F.qexp, ell, orb, S) * scalar;
}

QSeries<mpq_class> hecke_t_oracle(const HalfIntForm<mpq_class>& F, long ell, long prec) {
  long ell2 = ell * ell;
  QSeries<CycloElt> total = make_qseries<CycloElt>(ell2, prec * ell2, CycloElt::zero(ell2));
  for (const SubgroupOrbit& orb : subgroup_orbits(ell))
    total = total + hecke_t_orbit_term(F, ell, orb, prec);
  return collapse(total, ell2);
}

QSeries<mpq_class> hecke_u_oracle(const HalfIntForm<mpq_class>& F, long p, long prec) {
  check_odd_prime(p, "hecke_u_oracle");
  long p2 = p * p;
  long S = prec * p2;
  check_oracle_form(F, p, prec, S, "hecke_u_oracle", true);
  QSeries<CycloElt> total = make_qseries<CycloElt>(p2, S, CycloElt::zero(p2));
  for (long a = 0; a < p2; ++a)
    total = total + orbit_substitute(F.qexp, p, SubgroupOrbit{OrbitKind::etale, a}, S);
  return collapse(total, p2);
}

QSeries<mpq_class> hecke_t_oracle_literal(const HalfIntForm<mpq_class>& F, long ell, long prec) {
  check_odd_prime(ell, "hecke_t_oracle");
  long lambda = classical_lambda(F.kappa, "hecke_t_oracle");
  long ell2 = ell * ell;
  long S = prec * ell2;
  check_oracle_form(F, ell, prec, S, "hecke_t_oracle", false);
  QSeries<mpq_class> thE = theta_qexp(S) * eis_or_one(F.kappa.prime(), lambda, S);
  QSeries<mpq_class> F0 = truncate(F.qexp, S) * invert(thE);
  QSeries<CycloElt> total = make_qseries<CycloElt>(ell2, S, CycloElt::zero(ell2));
  for (const SubgroupOrbit& orb : subgroup_orbits(ell)) {
    QSeries<CycloElt> term = orbit_substitute(F0, ell, orb, S) * theta_twist(orb, ell, prec) *
                             eis_twist(orb, ell, F.kappa, prec);
    total = total + term * CycloElt(ell2, orbit_scalar_chi(orb, F.chi, ell));
  }
  total = total * to_grid(thE, ell, S);
  return collapse(total, ell2);
}

QSeries<mpq_class> hecke_u_oracle_literal(const HalfIntForm<mpq_class>& F, long p, long prec) {
  check_odd_prime(p, "hecke_u_oracle");
  long lambda = classical_lambda(F.kappa, "hecke_u_oracle");
  long p2 = p * p;
  long S = prec * p2;
  check_oracle_form(F, p, prec, S, "hecke_u_oracle", true);
  QSeries<mpq_class> thE = theta_qexp(S) * eis_or_one(F.kappa.prime(), lambda, S);
  QSeries<mpq_class> F0 = truncate(F.qexp, S) * invert(thE);
  QSeries<CycloElt> total = make_qseries<CycloElt>(p2, S, CycloElt::zero(p2));
  for (long a = 0; a < p2; ++a) {
    SubgroupOrbit orb{OrbitKind::etale, a};
    total = total + orbit_substitute(F0, p, orb, S) * theta_twist(orb, p, prec) *
                        eis_twist(orb, p, F.kappa, prec);
  }
  total = total * to_grid(thE, p, S);
  return collapse(total, p2);
}

}  // namespace halfint
