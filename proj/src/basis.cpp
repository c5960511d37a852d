#include "halfint/basis.hpp"

#include <algorithm>
#include <optional>
#include <utility>

namespace halfint {

namespace {

inline uint64_t mulmod_u64(uint64_t a, uint64_t b, uint64_t mod) {
  return (uint64_t)((unsigned __int128)a * b % mod);
}

uint64_t pow_u64(uint64_t b, long e, uint64_t mod) {
  uint64_t r = 1 % mod;
  b %= mod;
  for (; e > 0; e >>= 1) {
    if (e & 1) r = mulmod_u64(r, b, mod);
    b = mulmod_u64(b, b, mod);
  }
  return r;
}

uint64_t inv_u64(uint64_t x, uint64_t mod) {
  return mpz_get_ui(mod_inverse(mpz_class(x), mpz_class(mod)).get_mpz_t());
}

uint64_t mpz_mod_u64(const mpz_class& z, uint64_t mod) {
  return mpz_fdiv_ui(z.get_mpz_t(), mod);
}

uint64_t mpq_mod_u64(const mpq_class& x, long p, uint64_t mod, const char* who) {
  if (mpz_fdiv_ui(x.get_den().get_mpz_t(), (unsigned long)p) == 0)
    throw DomainError(std::string(who) + ": denominator not prime to p");
  uint64_t num = mpz_mod_u64(x.get_num(), mod);
  uint64_t den = mpz_mod_u64(x.get_den(), mod);
  return mulmod_u64(num, inv_u64(den, mod), mod);
}

// Largest safe chunk length between reductions of a 128-bit accumulator.
uint64_t chunk_len(uint64_t mod) {
  unsigned __int128 mm = (unsigned __int128)(mod - 1) * (mod - 1);
  unsigned __int128 k = ~(unsigned __int128)0 / mm;
  if (k > ((unsigned __int128)1 << 62)) return (uint64_t)1 << 62;
  return k > 1 ? (uint64_t)k - 1 : 1;
}

long count_nonzero(const std::vector<uint64_t>& v, long N) {
  long c = 0;
  for (long i = 0; i < N; ++i)
    if (v[(size_t)i]) ++c;
  return c;
}

}  // namespace

FlatSeries flat_make(long p, long e, long N) {
  if (p < 2) throw DomainError("flat: p must be at least 2");
  if (e < 1) throw DomainError("flat: need at least one digit");
  if (N < 1) throw DomainError("flat: need N >= 1");
  unsigned __int128 m = 1;
  for (long i = 0; i < e; ++i) {
    m *= (unsigned)p;
    if (m >> 63) throw DomainError("flat: p^e exceeds the 63-bit kernel");
  }
  FlatSeries f;
  f.p = p;
  f.e = e;
  f.mod = (uint64_t)m;
  f.a.assign((size_t)N, 0);
  return f;
}

FlatSeries flat_from_rational(const QSeries<mpq_class>& f, long p, long e) {
  if (f.D != 1) throw DomainError("flat_from_rational: expected an integral q-expansion");
  FlatSeries r = flat_make(p, e, f.N());
  for (long n = 0; n < f.N(); ++n)
    if (f.a[(size_t)n] != 0)
      r.a[(size_t)n] = mpq_mod_u64(f.a[(size_t)n], p, r.mod, "flat_from_rational");
  return r;
}

FlatSeries flat_theta(long p, long e, long N) {
  FlatSeries f = flat_make(p, e, N);
  f.a[0] = 1 % f.mod;
  for (long k = 1; k * k < N; ++k) f.a[(size_t)(k * k)] = 2 % f.mod;
  return f;
}

FlatSeries flat_fweight2(long p, long e, long N) {
  FlatSeries f = flat_make(p, e, N);
  for (long d = 1; d < N; ++d) {
    uint64_t w = (uint64_t)d % f.mod;
    for (long m = d; m < N; m += d)
      if (m % 2 == 1) f.a[(size_t)m] = (f.a[(size_t)m] + w) % f.mod;
  }
  return f;
}

FlatSeries flat_eisenstein(long p, long lambda, long e, long N) {
  mpq_class c = 2 / zeta_p_rational(p, lambda);
  FlatSeries f = flat_make(p, e, N);
  uint64_t cm = mpq_mod_u64(c, p, f.mod, "flat_eisenstein");
  std::vector<uint64_t> acc((size_t)N, 0);
  for (long d = 1; d < N; ++d) {
    if (d % p == 0) continue;
    uint64_t w = pow_u64((uint64_t)d, lambda - 1, f.mod);
    for (long m = d; m < N; m += d) acc[(size_t)m] = (acc[(size_t)m] + w) % f.mod;
  }
  f.a[0] = 1 % f.mod;
  for (long n = 1; n < N; ++n) f.a[(size_t)n] = mulmod_u64(cm, acc[(size_t)n], f.mod);
  return f;
}

FlatSeries flat_mul(const FlatSeries& f, const FlatSeries& g) {
  if (f.p != g.p) throw DomainError("flat_mul: prime mismatch");
  long e = std::min(f.e, g.e);
  long N = std::min(f.N(), g.N());
  FlatSeries r = flat_make(f.p, e, N);
  const uint64_t mod = r.mod;
  std::vector<uint64_t> fa(f.a.begin(), f.a.begin() + N);
  std::vector<uint64_t> ga(g.a.begin(), g.a.begin() + N);
  if (f.mod != mod)
    for (auto& x : fa) x %= mod;
  if (g.mod != mod)
    for (auto& x : ga) x %= mod;
  long nf = count_nonzero(fa, N), ng = count_nonzero(ga, N);
  if (std::min(nf, ng) * 8 <= N) {
    const std::vector<uint64_t>& s = nf <= ng ? fa : ga;
    const std::vector<uint64_t>& o = nf <= ng ? ga : fa;
    for (long t = 0; t < N; ++t) {
      if (!s[(size_t)t]) continue;
      uint64_t c = s[(size_t)t];
      for (long u = 0; t + u < N; ++u)
        if (o[(size_t)u])
          r.a[(size_t)(t + u)] = (r.a[(size_t)(t + u)] + mulmod_u64(c, o[(size_t)u], mod)) % mod;
    }
  } else {
    const uint64_t K = chunk_len(mod);
    for (long n = 0; n < N; ++n) {
      unsigned __int128 acc = 0;
      uint64_t cnt = 0;
      for (long t = 0; t <= n; ++t) {
        acc += (unsigned __int128)fa[(size_t)t] * ga[(size_t)(n - t)];
        if (++cnt == K) {
          acc %= mod;
          cnt = 0;
        }
      }
      r.a[(size_t)n] = (uint64_t)(acc % mod);
    }
  }
  return r;
}

FlatSeries flat_invert(const FlatSeries& f) {
  long N = f.N();
  if (f.a[0] % (uint64_t)f.p == 0)
    throw NonUnitConstantTerm("flat_invert: constant term is not a unit");
  FlatSeries r = flat_make(f.p, f.e, N);
  const uint64_t mod = r.mod;
  const uint64_t K = chunk_len(mod);
  uint64_t c0 = inv_u64(f.a[0], mod);
  r.a[0] = c0;
  for (long n = 1; n < N; ++n) {
    unsigned __int128 acc = 0;
    uint64_t cnt = 0;
    for (long t = 1; t <= n; ++t) {
      acc += (unsigned __int128)f.a[(size_t)t] * r.a[(size_t)(n - t)];
      if (++cnt == K) {
        acc %= mod;
        cnt = 0;
      }
    }
    uint64_t s = (uint64_t)(acc % mod);
    r.a[(size_t)n] = s ? mulmod_u64(mod - s, c0, mod) : 0;
  }
  return r;
}

FlatSeries flat_dilate(const FlatSeries& f, long m) {
  if (m < 1) throw DomainError("flat_dilate: m must be positive");
  FlatSeries r = flat_make(f.p, f.e, f.N());
  for (long n = 0; n * m < f.N(); ++n) r.a[(size_t)(n * m)] = f.a[(size_t)n];
  return r;
}

FlatSeries flat_contract(const FlatSeries& f, long m) {
  if (m < 1) throw DomainError("flat_contract: m must be positive");
  long N = f.N() / m;
  if (N < 1) throw DomainError("flat_contract: window too small");
  FlatSeries r = flat_make(f.p, f.e, N);
  for (long n = 0; n < N; ++n) r.a[(size_t)n] = f.a[(size_t)(n * m)];
  return r;
}

QSeries<PadicNum> flat_lift(const FlatSeries& f, long N, long shift) {
  if (N < 1 || N > f.N()) throw PrecisionError("flat_lift: bad window");
  long M = f.e - shift;
  if (M < 1) throw PrecisionError("flat_lift: no digits left after shift");
  QSeries<PadicNum> r = make_qseries<PadicNum>(1, N, PadicNum::zero(f.p, M));
  for (long n = 0; n < N; ++n)
    if (f.a[(size_t)n])
      r.a[(size_t)n] = PadicNum::from_parts(mpz_class(f.a[(size_t)n]), -shift, f.p, M);
  return r;
}

// --- echelonization ----------------------------------------------------------

namespace {

std::optional<long> pivot_val(const mpq_class& c) {
  if (c == 0) return std::nullopt;
  return 0;
}

std::optional<long> pivot_val(const PadicNum& c) {
  if (c.is_zero()) return std::nullopt;
  return c.valuation();
}

std::optional<long> pivot_val(const FamilyElt& c) {
  long worst = 0;
  for (const PadicNum& x : c.values()) {
    if (x.is_zero()) return std::nullopt;
    worst = std::max(worst, x.valuation());
  }
  return worst;
}

long residual_val(const mpq_class& c) { return c == 0 ? kTailExact : std::numeric_limits<long>::min(); }

long residual_val(const PadicNum& c) { return c.valuation(); }

long residual_val(const FamilyElt& c) {
  long v = kTailExact;
  for (const PadicNum& x : c.values()) v = std::min(v, x.valuation());
  return v;
}

// y -= c * x over the shared window.
template <class C>
void row_axpy(QSeries<C>& y, const C& c, const QSeries<C>& x) {
  long N = std::min(y.N(), x.N());
  for (long n = 0; n < N; ++n)
    if (!coeff_is_zero(x.a[(size_t)n])) y.a[(size_t)n] = y.a[(size_t)n] - c * x.a[(size_t)n];
}

template <class C>
struct EchelonCore {
  std::vector<HalfIntForm<C>> rows;  // full-length rows, pivot order
  std::vector<long> pivots;
};

template <class C>
EchelonCore<C> echelon_core(std::vector<HalfIntForm<C>> rows, long window, long margin,
                            const std::vector<std::string>& labels) {
  // Pivots may sit at positive valuation; elimination tracks the resulting
  // precision loss itself, so the ambient division floor does not apply here.
  PrecisionFloorGuard floor_guard(1);
  long d = (long)rows.size();
  if (d == 0) throw DomainError("echelonize: no rows");
  if (margin < 0) margin = 2 * d;
  for (const auto& r : rows) {
    if (r.qexp.D != 1) throw DomainError("echelonize: expected integral q-expansions");
    window = std::min(window, r.qexp.N());
  }
  if (window < 1) throw DomainError("echelonize: empty q-window");
  auto name = [&](long i) {
    return i < (long)labels.size() ? labels[(size_t)i] : "row " + std::to_string(i);
  };

  std::vector<long> order;
  std::vector<long> pivots;
  std::vector<char> placed((size_t)d, 0);
  for (long col = 0; col < window && (long)pivots.size() < d; ++col) {
    long best = -1, bestv = std::numeric_limits<long>::max();
    for (long i = 0; i < d; ++i) {
      if (placed[(size_t)i]) continue;
      auto v = pivot_val(rows[(size_t)i].qexp.a[(size_t)col]);
      if (v && *v < bestv) {
        bestv = *v;
        best = i;
      }
    }
    if (best < 0) continue;
    C inv = coeff_inv(rows[(size_t)best].qexp.a[(size_t)col]);
    rows[(size_t)best].qexp = rows[(size_t)best].qexp * inv;
    for (long i = 0; i < d; ++i) {
      if (i == best) continue;
      C c = rows[(size_t)i].qexp.a[(size_t)col];
      if (coeff_is_zero(c)) continue;
      row_axpy(rows[(size_t)i].qexp, c, rows[(size_t)best].qexp);
    }
    placed[(size_t)best] = 1;
    order.push_back(best);
    pivots.push_back(col);
  }
  if ((long)pivots.size() < d) {
    long loser = -1;
    for (long i = 0; i < d; ++i)
      if (!placed[(size_t)i]) {
        loser = i;
        break;
      }
    std::string partner = order.empty() ? "nothing" : name(order.back());
    throw EchelonDegenerate("echelonize: " + name(loser) +
                            " reduces to zero at precision within the q-window (last pivot from " +
                            partner + ")");
  }
  if (pivots.back() + margin >= window)
    throw DomainError("echelonize: q-precision too small; need > " +
                      std::to_string(pivots.back() + margin) + " coefficients");

  EchelonCore<C> out;
  out.pivots = pivots;
  out.rows.reserve((size_t)d);
  for (long i = 0; i < d; ++i) out.rows.push_back(std::move(rows[(size_t)order[(size_t)i]]));
  return out;
}

template <class C>
HalfIntForm<C> truncate_form(const HalfIntForm<C>& F, long N) {
  HalfIntForm<C> r = F;
  r.qexp = truncate(F.qexp, N);
  return r;
}

template <class C>
EchelonBasis<C> echelonize_impl(std::vector<HalfIntForm<C>> rows, std::string provenance,
                                long margin) {
  long window = std::numeric_limits<long>::max();
  for (const auto& r : rows) window = std::min(window, r.qexp.N());
  EchelonCore<C> core = echelon_core(std::move(rows), window, margin, {});
  EchelonBasis<C> B;
  B.forms = std::move(core.rows);
  B.pivots = std::move(core.pivots);
  B.q_prec = window;
  B.provenance = std::move(provenance);
  return B;
}

}  // namespace

EchelonBasis<mpq_class> echelonize_forms(std::vector<HalfIntForm<mpq_class>> rows,
                                         std::string provenance, long margin) {
  return echelonize_impl(std::move(rows), std::move(provenance), margin);
}

EchelonBasis<PadicNum> echelonize_forms(std::vector<HalfIntForm<PadicNum>> rows,
                                        std::string provenance, long margin) {
  return echelonize_impl(std::move(rows), std::move(provenance), margin);
}

EchelonBasis<mpq_class> gamma0_4_graded_basis(long p, long k, long prec) {
  if (k < 1 || k % 2 == 0) throw DomainError("graded basis: k must be odd and positive");
  if (prec < 2) throw DomainError("graded basis: need prec >= 2");
  Weight kappa = Weight::arithmetic(p, (k - 1) / 2);
  QSeries<mpq_class> th = theta_qexp(prec);
  QSeries<mpq_class> F = f_weight2_qexp(prec);
  QSeries<mpq_class> th_pow = qseries_one(prec, mpq_class(0));
  std::vector<QSeries<mpq_class>> Fb;
  Fb.push_back(qseries_one(prec, mpq_class(0)));
  for (long b = 1; 4 * b <= k; ++b) Fb.push_back(Fb.back() * F);
  std::vector<QSeries<mpq_class>> monos((size_t)(k / 4 + 1), th);
  for (long a = 1; a <= k; ++a) {
    th_pow = th_pow * th;
    long rem = k - a;
    if (rem % 4 == 0 && rem / 4 <= k / 4) monos[(size_t)(rem / 4)] = th_pow * Fb[(size_t)(rem / 4)];
  }
  std::vector<HalfIntForm<mpq_class>> rows;
  for (long b = 0; b <= k / 4; ++b)
    rows.push_back(make_form(kappa, 4, TameCharacter::trivial(), monos[(size_t)b]));
  return echelonize_forms(std::move(rows), "graded Gamma0(4) k=" + std::to_string(k), -1);
}

// --- Katz-style approximation ladders ----------------------------------------

namespace {

struct LadderMember {
  FlatSeries s;
  std::string label;
};

// theta^a F^b / E_{phi(q)}^j for a + 4b = k + 2 j phi(q), j = 0..J.
std::vector<LadderMember> ladder_members(long p, long phi, long k, long J, long M, long S) {
  FlatSeries th = flat_theta(p, M, S);
  FlatSeries F = flat_fweight2(p, M, S);
  FlatSeries invE = flat_invert(flat_eisenstein(p, phi, M, S));
  long a_max = k + 2 * J * phi;
  std::vector<FlatSeries> th_pow;
  th_pow.reserve((size_t)a_max + 1);
  FlatSeries one = flat_make(p, M, S);
  one.a[0] = 1 % one.mod;
  th_pow.push_back(one);
  for (long a = 1; a <= a_max; ++a) th_pow.push_back(flat_mul(th_pow.back(), th));

  std::vector<LadderMember> members;
  FlatSeries invEj = one;
  for (long j = 0; j <= J; ++j) {
    if (j > 0) invEj = flat_mul(invEj, invE);
    long kj = k + 2 * j * phi;
    FlatSeries core = invEj;
    for (long b = 0; b <= kj / 4; ++b) {
      if (b > 0) core = flat_mul(core, F);
      long a = kj - 4 * b;
      std::string label = "theta^" + std::to_string(a) + " F^" + std::to_string(b) + " E^-" +
                          std::to_string(j);
      members.push_back({flat_mul(th_pow[(size_t)a], core), std::move(label)});
    }
  }
  return members;
}

long check_ladder_weight(const Weight& kappa, const char* who) {
  if (!kappa.is_arithmetic()) throw DomainError(std::string(who) + ": arithmetic weight required");
  if (kappa.component() != 0) throw DomainError(std::string(who) + ": component 0 required");
  if (!kappa.arith().psi.is_trivial(kappa.prime()))
    throw DomainError(std::string(who) + ": trivial psi required");
  long lambda = kappa.arith().lambda;
  if (lambda < 0) throw DomainError(std::string(who) + ": lambda must be nonnegative");
  return lambda;
}

}  // namespace

KatzBasis katz_approx_basis(const Weight& kappa, long J, long prec, long M, long slot_mult) {
  long lambda = check_ladder_weight(kappa, "katz_approx_basis");
  if (J < 0) throw DomainError("katz_approx_basis: J must be nonnegative");
  if (prec < 2) throw DomainError("katz_approx_basis: need prec >= 2");
  if (M < 1) throw DomainError("katz_approx_basis: need M >= 1");
  long p = kappa.prime();
  if (slot_mult <= 0) slot_mult = p * p;
  long S = prec * slot_mult;
  long k = 2 * lambda + 1;

  std::vector<LadderMember> members = ladder_members(p, kappa.phi_q(), k, J, M, S);

  std::vector<HalfIntForm<PadicNum>> rows;
  std::vector<std::string> labels;
  rows.reserve(members.size());
  for (auto& m : members) {
    rows.push_back(make_form(kappa, 4, TameCharacter::trivial(), flat_lift(m.s, S)));
    labels.push_back(std::move(m.label));
  }
  EchelonCore<PadicNum> core = echelon_core(std::move(rows), prec, -1, labels);

  KatzBasis B;
  B.slot_mult = slot_mult;
  B.wide = std::move(core.rows);
  B.basis.pivots = std::move(core.pivots);
  B.basis.q_prec = prec;
  B.basis.provenance = "katz p=" + std::to_string(p) + " lambda=" + std::to_string(lambda) +
                       " J=" + std::to_string(J) + " N=" + std::to_string(prec) +
                       " M=" + std::to_string(M);
  B.basis.forms.reserve(B.wide.size());
  for (const auto& w : B.wide) B.basis.forms.push_back(truncate_form(w, prec));
  return B;
}

KatzFamilyBasis katz_family_basis(const std::shared_ptr<const FamilyFrame>& frame, long J,
                                  long prec, long slot_mult) {
  if (!frame) throw DomainError("katz_family_basis: null frame");
  if (frame->i != 0) throw DomainError("katz_family_basis: component 0 required");
  if (J < 0) throw DomainError("katz_family_basis: J must be nonnegative");
  if (prec < 2) throw DomainError("katz_family_basis: need prec >= 2");
  long p = frame->p, M = frame->M;
  if (slot_mult <= 0) slot_mult = p * p;
  long S = prec * slot_mult;
  long lambda0 = frame->lambdas[0];
  long phi = weight_phi_q(p);
  long k = 2 * lambda0 + 1;
  Weight kappa0 = Weight::arithmetic(p, lambda0);

  std::vector<LadderMember> members = ladder_members(p, phi, k, J, M, S);

  // Transport across the frame: member * E_{lambda_j} / E_{lambda_0} at node j.
  long nodes = frame->degree() + 1;
  FlatSeries invE0 = flat_invert(flat_eisenstein(p, lambda0, M, S));
  std::vector<QSeries<PadicNum>> lifted((size_t)nodes);
  std::vector<HalfIntForm<FamilyElt>> rows;
  std::vector<std::string> labels;
  FamilyElt fproto = FamilyElt::constant(frame, PadicNum::zero(p, M));
  for (auto& m : members) {
    for (long nj = 0; nj < nodes; ++nj) {
      long lj = frame->lambdas[(size_t)nj];
      FlatSeries t =
          lj == lambda0 ? m.s : flat_mul(m.s, flat_mul(flat_eisenstein(p, lj, M, S), invE0));
      lifted[(size_t)nj] = flat_lift(t, S);
    }
    QSeries<FamilyElt> q = make_qseries<FamilyElt>(1, S, fproto);
    for (long n = 0; n < S; ++n) {
      std::vector<PadicNum> vals;
      vals.reserve((size_t)nodes);
      for (long nj = 0; nj < nodes; ++nj) vals.push_back(lifted[(size_t)nj].a[(size_t)n]);
      q.a[(size_t)n] = FamilyElt(frame, std::move(vals));
    }
    rows.push_back(make_form(kappa0, 4, TameCharacter::trivial(), std::move(q)));
    labels.push_back(std::move(m.label));
  }
  EchelonCore<FamilyElt> core = echelon_core(std::move(rows), prec, -1, labels);

  KatzFamilyBasis B;
  B.slot_mult = slot_mult;
  B.wide = std::move(core.rows);
  B.basis.pivots = std::move(core.pivots);
  B.basis.q_prec = prec;
  B.basis.provenance = "katz family p=" + std::to_string(p) + " lambda0=" +
                       std::to_string(lambda0) + " Dw=" + std::to_string(frame->degree()) +
                       " J=" + std::to_string(J) + " N=" + std::to_string(prec) +
                       " M=" + std::to_string(M);
  B.basis.forms.reserve(B.wide.size());
  for (const auto& w : B.wide) B.basis.forms.push_back(truncate_form(w, prec));
  return B;
}

KatzBasis specialize_basis(const KatzFamilyBasis& B, const Weight& kappa) {
  KatzBasis S;
  S.slot_mult = B.slot_mult;
  S.basis.pivots = B.basis.pivots;
  S.basis.q_prec = B.basis.q_prec;
  S.basis.provenance = B.basis.provenance + " @ " + kappa.str();
  S.wide.reserve(B.wide.size());
  for (const auto& w : B.wide) S.wide.push_back(specialize_form(w, kappa));
  S.basis.forms.reserve(S.wide.size());
  for (const auto& w : S.wide) S.basis.forms.push_back(truncate_form(w, S.basis.q_prec));
  return S;
}

// --- operator matrices --------------------------------------------------------

template <class C>
CompactMatrix<C> matrix_of_images(const EchelonBasis<C>& B, const std::vector<QSeries<C>>& images,
                                  long tolerance) {
  long d = B.dim();
  if (d == 0) throw DomainError("matrix: empty basis");
  if ((long)images.size() != d) throw DomainError("matrix: need one image per basis member");
  const C& proto = B.forms[0].qexp.proto;
  long maxpiv = B.pivots.back();
  CompactMatrix<C> out;
  out.mat = Mat<C>(d, coeff_zero(proto));
  out.tail_valuation.assign((size_t)d, 0);
  out.tolerance = tolerance;
  for (long col = 0; col < d; ++col) {
    const QSeries<C>& img = images[(size_t)col];
    if (img.D != 1) throw DomainError("matrix: image off the integral grid");
    long W = std::min(B.q_prec, img.N());
    if (W <= maxpiv)
      throw InsufficientPrecision("matrix: image " + std::to_string(col) +
                                  " is too short to read the last pivot");
    QSeries<C> resid = truncate(img, W);
    for (long i = 0; i < d; ++i) {
      C x = resid.a[(size_t)B.pivots[(size_t)i]];
      out.mat.at(i, col) = x;
      if (!coeff_is_zero(x)) row_axpy(resid, x, B.forms[(size_t)i].qexp);
    }
    long achieved = kTailExact;
    long bad_v = -1, first_nonzero = -1;
    for (long n = 0; n < W; ++n) {
      const C& c = resid.a[(size_t)n];
      long v = residual_val(c);
      if (v < achieved) {
        achieved = v;
        bad_v = n;
      }
      if (first_nonzero < 0 && !coeff_is_zero(c)) first_nonzero = n;
    }
    bool strict = tolerance == kTailStrict;
    bool ok = strict ? first_nonzero < 0 : achieved >= tolerance;
    if (!ok) {
      long where = strict ? first_nonzero : bad_v;
      std::string floor = achieved == std::numeric_limits<long>::min()
                              ? std::string("exact nonzero")
                              : "valuation floor " + std::to_string(achieved);
      throw NotInSpan("matrix: image " + std::to_string(col) + " has unexplained tail at q^" +
                      std::to_string(where) + " (" + floor + ")");
    }
    out.tail_valuation[(size_t)col] = achieved;
  }
  return out;
}

template <class C>
CompactMatrix<C> matrix_of_operator(const ApproxBasis<C>& B,
                                    const std::function<HalfIntForm<C>(const HalfIntForm<C>&)>& op,
                                    long tolerance) {
  std::vector<QSeries<C>> images;
  images.reserve(B.wide.size());
  for (const auto& w : B.wide) images.push_back(op(w).qexp);
  return matrix_of_images(B.basis, images, tolerance);
}

template CompactMatrix<mpq_class> matrix_of_images(const EchelonBasis<mpq_class>&,
                                                   const std::vector<QSeries<mpq_class>>&, long);
template CompactMatrix<PadicNum> matrix_of_images(const EchelonBasis<PadicNum>&,
                                                  const std::vector<QSeries<PadicNum>>&, long);
template CompactMatrix<FamilyElt> matrix_of_images(const EchelonBasis<FamilyElt>&,
                                                   const std::vector<QSeries<FamilyElt>>&, long);
template CompactMatrix<mpq_class> matrix_of_operator(
    const ApproxBasis<mpq_class>&,
    const std::function<HalfIntForm<mpq_class>(const HalfIntForm<mpq_class>&)>&, long);
template CompactMatrix<PadicNum> matrix_of_operator(
    const ApproxBasis<PadicNum>&,
    const std::function<HalfIntForm<PadicNum>(const HalfIntForm<PadicNum>&)>&, long);
template CompactMatrix<FamilyElt> matrix_of_operator(
    const ApproxBasis<FamilyElt>&,
    const std::function<HalfIntForm<FamilyElt>(const HalfIntForm<FamilyElt>&)>&, long);

}  // namespace halfint
