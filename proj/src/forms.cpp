#include "halfint/forms.hpp"

#include <numeric>

namespace halfint {

int TameCharacter::value(long n) const {
  long nn = ((n % modulus) + modulus) % modulus;
  if (std::gcd(nn, modulus) != 1) return 0;
  mpz_class N(nn);
  return mpz_si_kronecker(disc, N.get_mpz_t());
}

namespace {

mpq_class default_radius(const Weight& kappa) { return r_schedule(kappa.prime(), kappa.nbhd_tier()); }

void check_tags(const Weight& kappa, long tame_level, const mpq_class& r) {
  if (tame_level < 4 || tame_level % 4 != 0)
    throw DomainError("form: tame level must be a positive multiple of 4");
  if (kappa.prime() != 2 && tame_level % kappa.prime() == 0)
    throw DomainError("form: tame level must be prime to p");
  if (r <= 0 || r > r_schedule(kappa.prime(), kappa.nbhd_tier()))
    throw DomainError("form: growth radius above the schedule cap for this weight");
}

// kappa(ell) in the coefficient domain.
mpq_class kappa_ell_value(const HalfIntForm<mpq_class>& F, long ell) {
  const Weight& k = F.kappa;
  if (!k.is_arithmetic() || !k.arith().psi.is_trivial(k.prime()))
    throw EvalError("hecke_t: rational domain needs an arithmetic weight with trivial psi");
  long lambda = k.arith().lambda;
  if (k.component() != 0 || (lambda != 0 && lambda % k.phi_q() != 0))
    throw EvalError("hecke_t: kappa(ell) is irrational here; use p-adic coefficients");
  return mpq_class(pow_z(mpz_class(ell), lambda));
}

PadicNum kappa_ell_value(const HalfIntForm<PadicNum>& F, long ell) {
  return F.kappa.eval(mpz_class(ell), F.qexp.proto.precision());
}

FamilyElt kappa_ell_value(const HalfIntForm<FamilyElt>& F, long ell) {
  return FamilyElt::bracket(F.qexp.proto.frame(), ell);
}

mpq_class embed_scalar(const mpq_class&, const mpq_class& x) { return x; }
PadicNum embed_scalar(const PadicNum& proto, const mpq_class& x) {
  return PadicNum::from_rational(x, proto.prime(), proto.precision());
}
FamilyElt embed_scalar(const FamilyElt& proto, const mpq_class& x) {
  const auto& fr = proto.frame();
  return FamilyElt::constant(fr, PadicNum::from_rational(x, fr->p, fr->M));
}

}  // namespace

template <class C>
HalfIntForm<C> make_form(const Weight& kappa, long tame_level, TameCharacter chi,
                         QSeries<C> qexp, const mpq_class& r) {
  check_tags(kappa, tame_level, r);
  if (qexp.D != 1) throw DomainError("form: q-expansions have integral exponents");
  return HalfIntForm<C>{kappa, tame_level, chi, std::move(qexp), r};
}

template <class C>
HalfIntForm<C> make_form(const Weight& kappa, long tame_level, TameCharacter chi,
                         QSeries<C> qexp) {
  return make_form(kappa, tame_level, chi, std::move(qexp), default_radius(kappa));
}

HalfIntForm<mpq_class> theta_form(long p, long N) {
  return make_form(Weight::arithmetic(p, 0), 4, TameCharacter::trivial(), theta_qexp(N));
}

template <class C>
HalfIntForm<C> hecke_u(const HalfIntForm<C>& F, long ell) {
  long p = F.kappa.prime();
  if (ell != p && F.tame_level % ell != 0)
    throw DomainError("hecke_u: ell must divide 4Np (use hecke_t otherwise)");
  HalfIntForm<C> R = F;
  R.qexp = contract(F.qexp, ell * ell);
  if (ell == p) {
    mpq_class cap = r_schedule(p, F.kappa.nbhd_tier());
    R.r = std::min(mpq_class(F.r * p), cap);
  }
  return R;
}

template <class C>
HalfIntForm<C> hecke_t(const HalfIntForm<C>& F, long ell) {
  long p = F.kappa.prime();
  if (ell == p || F.tame_level % ell == 0)
    throw DomainError("hecke_t: ell must be coprime to 4Np (use hecke_u otherwise)");
  if (F.qexp.D != 1) throw DomainError("hecke_t: expected an integral q-expansion");

  C kell = kappa_ell_value(F, ell);
  long chi_ell = F.chi.value(ell);
  // c1 = kappa(ell) chi(ell) / ell, c2 = kappa(ell)^2 chi(ell)^2 / ell.
  C c1 = kell * embed_scalar(F.qexp.proto, mpq_class(chi_ell, ell));
  C c2 = kell * kell * embed_scalar(F.qexp.proto, mpq_class(chi_ell * chi_ell, ell));

  long ell2 = ell * ell;
  long Nout = F.qexp.N() / ell2;
  if (Nout < 1) throw DomainError("hecke_t: q-precision too small for ell^2 contraction");
  bool odd_i = F.kappa.component() % 2 != 0;
  QSeries<C> b = make_qseries<C>(1, Nout, F.qexp.proto);
  for (long n = 0; n < Nout; ++n) {
    C bn = F.qexp.a[(size_t)(n * ell2)];
    long m = odd_i ? (ell - n % ell) % ell : n % ell;
    int eps = legendre_symbol(m, ell);
    if (eps != 0) {
      C t = c1 * F.qexp.a[(size_t)n];
      if (eps > 0)
        bn = bn + t;
      else
        bn = bn - t;
    }
    if (n % ell2 == 0) bn = bn + c2 * F.qexp.a[(size_t)(n / ell2)];
    b.a[(size_t)n] = bn;
  }
  HalfIntForm<C> R = F;
  R.qexp = std::move(b);
  return R;
}

template <class C>
HalfIntForm<C> diamond(const HalfIntForm<C>& F, long d) {
  long L = F.tame_level;
  long dd = ((d % L) + L) % L;
  if (std::gcd(dd, L) != 1) throw DomainError("diamond: d must be a unit mod the tame level");
  long sign = 1;
  if (F.kappa.prime() != 2 && F.kappa.component() % 2 != 0) sign = minus_one_over(dd);
  mpq_class c = mpq_class(TameCharacter(F.chi).value(dd) * sign);
  HalfIntForm<C> R = F;
  R.qexp = F.qexp * embed_scalar(F.qexp.proto, c);
  return R;
}

QSeries<mpq_class> theta_eis_product(const Weight& kappa, long N) {
  QSeries<mpq_class> th = theta_qexp(N);
  if (!kappa.is_arithmetic()) throw EvalError("theta_eis_product: arithmetic weight required");
  long lambda = kappa.arith().lambda;
  if (lambda == 0) return th;
  return th * eisenstein_rational(kappa.prime(), lambda, N);
}

QSeries<PadicNum> theta_eis_product_padic(const Weight& kappa, long N, long M) {
  QSeries<PadicNum> th =
      to_padic(theta_qexp(N), kappa.prime(), M);
  if (kappa.is_arithmetic() && kappa.arith().lambda == 0) return th;
  return th * eisenstein_padic(kappa, N, M);
}

QSeries<FamilyElt> theta_eis_product_family(const std::shared_ptr<const FamilyFrame>& frame,
                                            long N) {
  QSeries<FamilyElt> E = eisenstein_family(frame, N);
  QSeries<mpq_class> th = theta_qexp(N);
  QSeries<FamilyElt> thf = make_qseries<FamilyElt>(1, N, E.proto);
  for (long n = 0; n < N; ++n)
    if (th.a[(size_t)n] != 0) thf.a[(size_t)n] = embed_scalar(E.proto, th.a[(size_t)n]);
  return thf * E;
}

QSeries<mpq_class> to_weight_zero(const HalfIntForm<mpq_class>& F) {
  return F.qexp * invert(theta_eis_product(F.kappa, F.qexp.N()));
}

QSeries<PadicNum> to_weight_zero(const HalfIntForm<PadicNum>& F, long M) {
  return F.qexp * invert(theta_eis_product_padic(F.kappa, F.qexp.N(), M));
}

HalfIntForm<mpq_class> from_weight_zero(const QSeries<mpq_class>& G, const Weight& kappa,
                                        long tame_level, TameCharacter chi) {
  return make_form(kappa, tame_level, chi, G * theta_eis_product(kappa, G.N()));
}

HalfIntForm<PadicNum> from_weight_zero(const QSeries<PadicNum>& G, const Weight& kappa,
                                       long tame_level, TameCharacter chi) {
  return make_form(kappa, tame_level, chi,
                   G * theta_eis_product_padic(kappa, G.N(), G.proto.precision()));
}

HalfIntForm<PadicNum> specialize_form(const FormFamily& F, const Weight& kappa) {
  QSeries<PadicNum> s =
      make_qseries<PadicNum>(F.qexp.D, F.qexp.N(),
                             PadicNum::zero(kappa.prime(), F.qexp.proto.frame()->M));
  for (long n = 0; n < F.qexp.N(); ++n) s.a[(size_t)n] = F.qexp.a[(size_t)n].specialize(kappa);
  return HalfIntForm<PadicNum>{kappa, F.tame_level, F.chi, std::move(s), F.r};
}

template HalfIntForm<mpq_class> make_form(const Weight&, long, TameCharacter,
                                          QSeries<mpq_class>, const mpq_class&);
template HalfIntForm<PadicNum> make_form(const Weight&, long, TameCharacter, QSeries<PadicNum>,
                                         const mpq_class&);
template HalfIntForm<FamilyElt> make_form(const Weight&, long, TameCharacter,
                                          QSeries<FamilyElt>, const mpq_class&);
template HalfIntForm<mpq_class> make_form(const Weight&, long, TameCharacter,
                                          QSeries<mpq_class>);
template HalfIntForm<PadicNum> make_form(const Weight&, long, TameCharacter, QSeries<PadicNum>);
template HalfIntForm<FamilyElt> make_form(const Weight&, long, TameCharacter,
                                          QSeries<FamilyElt>);
template HalfIntForm<mpq_class> hecke_u(const HalfIntForm<mpq_class>&, long);
template HalfIntForm<PadicNum> hecke_u(const HalfIntForm<PadicNum>&, long);
template HalfIntForm<FamilyElt> hecke_u(const HalfIntForm<FamilyElt>&, long);
template HalfIntForm<mpq_class> hecke_t(const HalfIntForm<mpq_class>&, long);
template HalfIntForm<PadicNum> hecke_t(const HalfIntForm<PadicNum>&, long);
template HalfIntForm<FamilyElt> hecke_t(const HalfIntForm<FamilyElt>&, long);
template HalfIntForm<mpq_class> diamond(const HalfIntForm<mpq_class>&, long);
template HalfIntForm<PadicNum> diamond(const HalfIntForm<PadicNum>&, long);
template HalfIntForm<FamilyElt> diamond(const HalfIntForm<FamilyElt>&, long);

}  // namespace halfint
