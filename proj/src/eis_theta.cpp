#include "halfint/eis_theta.hpp"

#include <mutex>
#include <vector>

namespace halfint {

namespace {

// Zigzag (boustrophedon) numbers A000111; Z_{2k-1} are the tangent numbers.
std::vector<mpz_class> g_zigzag;
std::vector<mpz_class> g_zigzag_row;
std::vector<mpq_class> g_bernoulli;
std::mutex g_bernoulli_mutex;

void extend_zigzag(long upto) {
  if (g_zigzag.empty()) {
    g_zigzag = {1};
    g_zigzag_row = {1};
  }
  while ((long)g_zigzag.size() <= upto) {
    long n = (long)g_zigzag.size();
    std::vector<mpz_class> next((size_t)n + 1);
    next[0] = 0;
    for (long k = 1; k <= n; ++k) next[(size_t)k] = next[(size_t)k - 1] + g_zigzag_row[(size_t)(n - k)];
    g_zigzag_row = std::move(next);
    g_zigzag.push_back(g_zigzag_row.back());
  }
}

void extend_bernoulli(long upto) {
  if (g_bernoulli.empty()) g_bernoulli = {mpq_class(1), mpq_class(-1, 2)};
  while ((long)g_bernoulli.size() <= upto) {
    long n = (long)g_bernoulli.size();
    if (n % 2 == 1) {
      g_bernoulli.push_back(mpq_class(0));
      continue;
    }
    long k = n / 2;
    extend_zigzag(2 * k - 1);
    // |B_2k| = T_k * 2k / (2^2k (2^2k - 1)), sign (-1)^(k+1).
    mpz_class four_k = mpz_class(1) << (2 * k);
    mpq_class b(g_zigzag[(size_t)(2 * k - 1)] * (2 * k), four_k * (four_k - 1));
    b.canonicalize();
    if (k % 2 == 0) b = -b;
    g_bernoulli.push_back(b);
  }
}

}  // namespace

const mpq_class& bernoulli_number(long n) {
  if (n < 0) throw DomainError("bernoulli_number: negative index");
  std::lock_guard<std::mutex> lock(g_bernoulli_mutex);
  extend_bernoulli(n);
  return g_bernoulli[(size_t)n];
}

mpq_class zeta_p_rational(long p, long lambda) {
  long phi = weight_phi_q(p);
  if (lambda < 2 || lambda % phi != 0)
    throw ZetaValueUnavailable("zeta_p: defined on the classical locus lambda >= 2, phi(q) | lambda");
  mpq_class euler = 1 - mpq_class(prime_pow(p, lambda - 1));
  mpq_class val = euler * (-bernoulli_number(lambda) / mpq_class(lambda));
  if (val == 0) throw ZetaZero("zeta_p: value vanishes; Eisenstein normalization undefined");
  return val;
}

PadicNum zeta_p_value(const Weight& kappa, long M) {
  if (!kappa.is_arithmetic())
    throw ZetaValueUnavailable("zeta_p: generic weight; interpolate through a family frame");
  const auto& aw = kappa.arith();
  if (!aw.psi.is_trivial(kappa.prime()))
    throw ZetaValueUnavailable("zeta_p: wild psi twist; interpolate through a family frame");
  return PadicNum::from_rational(zeta_p_rational(kappa.prime(), aw.lambda), kappa.prime(), M);
}

QSeries<mpq_class> theta_qexp(long N) {
  if (N < 1) throw DomainError("theta_qexp: need N >= 1");
  QSeries<mpq_class> f = make_qseries<mpq_class>(1, N, mpq_class(0));
  f.a[0] = 1;
  for (long k = 1; k * k < N; ++k) f.a[(size_t)(k * k)] = 2;
  return f;
}

QSeries<mpq_class> f_weight2_qexp(long N) {
  if (N < 1) throw DomainError("f_weight2_qexp: need N >= 1");
  QSeries<mpq_class> f = make_qseries<mpq_class>(1, N, mpq_class(0));
  for (long d = 1; d < N; ++d)
    for (long m = d; m < N; m += d)
      if (m % 2 == 1) f.a[(size_t)m] += d;
  return f;
}

QSeries<mpq_class> eisenstein_rational(long p, long lambda, long N) {
  if (N < 1) throw DomainError("eisenstein_rational: need N >= 1");
  mpq_class c = 2 / zeta_p_rational(p, lambda);
  std::vector<mpz_class> acc((size_t)N, mpz_class(0));
  for (long d = 1; d < N; ++d) {
    if (d % p == 0) continue;
    mpz_class w = pow_z(mpz_class(d), lambda - 1);
    for (long m = d; m < N; m += d) acc[(size_t)m] += w;
  }
  QSeries<mpq_class> f = make_qseries<mpq_class>(1, N, mpq_class(0));
  f.a[0] = 1;
  for (long n = 1; n < N; ++n) f.a[(size_t)n] = c * mpq_class(acc[(size_t)n]);
  return f;
}

QSeries<PadicNum> eisenstein_padic(const Weight& kappa, long N, long M) {
  if (N < 1) throw DomainError("eisenstein_padic: need N >= 1");
  long p = kappa.prime();
  PadicNum c = PadicNum::from_integer(2, p, M) / zeta_p_value(kappa, M);
  long lambda = kappa.arith().lambda;
  const mpz_class& P = prime_pow(p, M);
  std::vector<mpz_class> acc((size_t)N, mpz_class(0));
  for (long d = 1; d < N; ++d) {
    if (d % p == 0) continue;
    mpz_class w = pow_mod(mpz_class(d), mpz_class(lambda - 1), P);
    for (long m = d; m < N; m += d) acc[(size_t)m] += w;
  }
  QSeries<PadicNum> f = make_qseries<PadicNum>(1, N, PadicNum::zero(p, M));
  f.a[0] = PadicNum::one(p, M);
  for (long n = 1; n < N; ++n)
    f.a[(size_t)n] = c * PadicNum::from_integer(acc[(size_t)n] % P, p, M);
  return f;
}

EisRatios eis_ratio_expansions(long p, long lambda, long ell, long N) {
  if (N < 1) throw DomainError("eis_ratio_expansions: need N >= 1");
  if (ell < 2) throw DomainError("eis_ratio_expansions: need ell >= 2");
  const mpq_class zero(0);
  QSeries<mpq_class> E_big = lambda == 0
                                 ? qseries_one(N * ell, zero)
                                 : eisenstein_rational(p, lambda, N * ell);
  QSeries<mpq_class> E = truncate(E_big, N);
  QSeries<mpq_class> E_ell = truncate(dilate(E, ell), N);
  QSeries<mpq_class> E_ell_sq = truncate(dilate(E, ell * ell), N);
  EisRatios r;
  r.over_ell = E * invert(E_ell);
  r.middle = E_ell * invert(E_ell_sq);
  r.over_ell_sq = E * invert(E_ell_sq);
  // On the D = ell grid, E(q_ell) is E_big with slot n read as q^{n/ell},
  // while E(q) sits on the multiples-of-ell slots.
  QSeries<mpq_class> denom = make_qseries<mpq_class>(ell, E_big.a, zero);
  QSeries<mpq_class> numer = make_qseries<mpq_class>(ell, dilate(E, ell).a, zero);
  r.puiseux = (numer * invert(denom)) * mpq_class(pow_z(mpz_class(ell), lambda));
  return r;
}

QSeries<FamilyElt> eisenstein_family(const std::shared_ptr<const FamilyFrame>& frame, long N) {
  std::vector<QSeries<PadicNum>> nodes;
  for (long lam : frame->lambdas) {
    Weight kj = Weight::arithmetic_on_component(frame->p, lam, frame->i);
    nodes.push_back(eisenstein_padic(kj, N, frame->M));
  }
  FamilyElt proto = FamilyElt::constant(frame, PadicNum::zero(frame->p, frame->M));
  QSeries<FamilyElt> f = make_qseries<FamilyElt>(1, N, proto);
  long Dw = frame->degree();
  for (long n = 0; n < N; ++n) {
    std::vector<PadicNum> vals;
    vals.reserve((size_t)Dw + 1);
    for (long j = 0; j <= Dw; ++j) vals.push_back(nodes[(size_t)j].a[(size_t)n]);
    f.a[(size_t)n] = FamilyElt(frame, std::move(vals));
  }
  return f;
}

}  // namespace halfint
