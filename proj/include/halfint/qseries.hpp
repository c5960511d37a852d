#pragma once

#include <gmpxx.h>

#include <optional>
#include <vector>

#include "halfint/cyclotomic.hpp"
#include "halfint/errors.hpp"
#include "halfint/padic.hpp"

namespace halfint {

// Coefficient-domain glue.  Each domain supplies zero/one relative to a
// prototype element (which carries context: prime and cap, conductor, frame),
// plus inversion.  No cross-domain coercion happens anywhere.
inline mpq_class coeff_zero(const mpq_class&) { return mpq_class(0); }
inline mpq_class coeff_one(const mpq_class&) { return mpq_class(1); }
inline bool coeff_is_zero(const mpq_class& x) { return x == 0; }
inline mpq_class coeff_inv(const mpq_class& x) {
  if (x == 0) throw DomainError("rational inverse of zero");
  return 1 / x;
}

inline PadicNum coeff_zero(const PadicNum& proto) {
  return PadicNum::zero(proto.prime(), proto.precision());
}
inline PadicNum coeff_one(const PadicNum& proto) {
  return PadicNum::one(proto.prime(), proto.precision());
}
inline bool coeff_is_zero(const PadicNum& x) { return x.is_zero(); }
inline PadicNum coeff_inv(const PadicNum& x) { return x.inverse(); }

inline CycloElt coeff_zero(const CycloElt& proto) { return CycloElt::zero(proto.conductor()); }
inline CycloElt coeff_one(const CycloElt& proto) { return CycloElt::one(proto.conductor()); }
inline bool coeff_is_zero(const CycloElt& x) { return x.is_zero(); }
CycloElt coeff_inv(const CycloElt& x);  // rational elements only (all we need)

/**
 * Truncated Puiseux-style q-expansion: slot n holds the coefficient of
 * q^(n/D), n = 0..N-1, and the series is known modulo q^(N/D).  N is the
 * q-precision in 1/D-units; precision only ever shrinks (min rule).
 */
template <class C>
struct QSeries {
  long D = 1;
  std::vector<C> a;
  C proto;  // domain context (a zero element)

  long N() const { return (long)a.size(); }
  const C& at(long n) const {
    if (n < 0 || n >= N()) throw PrecisionError("QSeries: slot beyond q-precision");
    return a[n];
  }
};

template <class C>
QSeries<C> make_qseries(long D, std::vector<C> coeffs, const C& proto) {
  if (D < 1) throw DomainError("QSeries: denominator must be positive");
  return QSeries<C>{D, std::move(coeffs), coeff_zero(proto)};
}

/** Zero series with N slots. */
template <class C>
QSeries<C> make_qseries(long D, long N, const C& proto) {
  if (D < 1) throw DomainError("QSeries: denominator must be positive");
  if (N < 1) throw DomainError("QSeries: need at least one slot");
  C z = coeff_zero(proto);
  return QSeries<C>{D, std::vector<C>((size_t)N, z), z};
}

/** Constant-1 series at the given precision. */
template <class C>
QSeries<C> qseries_one(long N, const C& proto, long D = 1) {
  QSeries<C> r{D, std::vector<C>((size_t)N, coeff_zero(proto)), coeff_zero(proto)};
  if (N > 0) r.a[0] = coeff_one(proto);
  return r;
}

/** Re-express with denominator L (a multiple of D): slot n -> n*(L/D).
 *  q-precision N/D is preserved exactly. */
template <class C>
QSeries<C> unify_denominator(const QSeries<C>& f, long L) {
  if (L % f.D != 0) throw DomainError("unify_denominator: not a multiple");
  long s = L / f.D;
  if (s == 1) return f;
  QSeries<C> r{L, std::vector<C>((size_t)(f.N() * s), f.proto), f.proto};
  for (long n = 0; n < f.N(); ++n) r.a[(size_t)(n * s)] = f.a[n];
  return r;
}

template <class C>
QSeries<C> truncate(const QSeries<C>& f, long slots) {
  QSeries<C> r = f;
  if (slots < r.N()) r.a.resize((size_t)slots, f.proto);
  return r;
}

template <class C>
QSeries<C> operator+(const QSeries<C>& f, const QSeries<C>& g) {
  long L = lcm_l(f.D, g.D);
  QSeries<C> a = unify_denominator(f, L), b = unify_denominator(g, L);
  long N = std::min(a.N(), b.N());
  QSeries<C> r{L, std::vector<C>(), f.proto};
  r.a.reserve((size_t)N);
  for (long n = 0; n < N; ++n) r.a.push_back(a.a[n] + b.a[n]);
  return r;
}

template <class C>
QSeries<C> operator-(const QSeries<C>& f) {
  QSeries<C> r = f;
  for (auto& c : r.a) c = -c;
  return r;
}

template <class C>
QSeries<C> operator-(const QSeries<C>& f, const QSeries<C>& g) {
  return f + (-g);
}

template <class C>
QSeries<C> operator*(const QSeries<C>& f, const C& s) {
  QSeries<C> r = f;
  for (auto& c : r.a) c = c * s;
  return r;
}

template <class C>
QSeries<C> operator*(const C& s, const QSeries<C>& f) {
  return f * s;
}

/** Naive convolution; the precision of the product is min(Nf/Df, Ng/Dg)
 *  in q-units, per the min rule. */
template <class C>
QSeries<C> operator*(const QSeries<C>& f, const QSeries<C>& g) {
  long L = lcm_l(f.D, g.D);
  QSeries<C> x = unify_denominator(f, L), y = unify_denominator(g, L);
  long N = std::min(x.N(), y.N());
  QSeries<C> r{L, std::vector<C>((size_t)N, f.proto), f.proto};
  for (long i = 0; i < std::min(x.N(), N); ++i) {
    if (coeff_is_zero(x.a[i])) continue;
    long jmax = std::min(y.N(), N - i);
    for (long j = 0; j < jmax; ++j) {
      if (coeff_is_zero(y.a[j])) continue;
      r.a[(size_t)(i + j)] = r.a[(size_t)(i + j)] + x.a[i] * y.a[j];
    }
  }
  return r;
}

/** q -> q^m; slot n moves to n*m, q-precision multiplies by m. */
template <class C>
QSeries<C> dilate(const QSeries<C>& f, long m) {
  if (m < 1) throw DomainError("dilate: m must be positive");
  QSeries<C> r{f.D, std::vector<C>((size_t)(f.N() * m), f.proto), f.proto};
  for (long n = 0; n < f.N(); ++n) r.a[(size_t)(n * m)] = f.a[n];
  return r;
}

/** b_n = a_{mn}; q-precision floor(N/m). */
template <class C>
QSeries<C> contract(const QSeries<C>& f, long m) {
  if (m < 1) throw DomainError("contract: m must be positive");
  long N = f.N() / m;
  QSeries<C> r{f.D, std::vector<C>((size_t)N, f.proto), f.proto};
  for (long n = 0; n < N; ++n) r.a[(size_t)n] = f.a[(size_t)(n * m)];
  return r;
}

/** Multiplicative inverse; requires an invertible constant term. */
template <class C>
QSeries<C> invert(const QSeries<C>& f) {
  if (f.N() == 0) throw PrecisionError("invert: empty series");
  if (coeff_is_zero(f.a[0]))
    throw NonUnitConstantTerm("invert: constant term is zero (at precision)");
  C b0 = coeff_inv(f.a[0]);
  QSeries<C> r{f.D, std::vector<C>((size_t)f.N(), f.proto), f.proto};
  r.a[0] = b0;
  for (long n = 1; n < f.N(); ++n) {
    C s = f.proto;  // zero
    for (long k = 1; k <= n; ++k) {
      if (coeff_is_zero(f.a[k])) continue;
      s = s + f.a[k] * r.a[(size_t)(n - k)];
    }
    r.a[(size_t)n] = -(b0 * s);
  }
  return r;
}

/** q^(1/D) -> zeta_D^a q^(1/D): slot n picks up zeta_D^(an).  The domain
 *  must contain a D-th root of unity. */
QSeries<CycloElt> substitute_root_of_unity(const QSeries<CycloElt>& f, long a);
QSeries<mpq_class> substitute_root_of_unity(const QSeries<mpq_class>& f, long a);

/** Slot n picks up zeta_m^(an) (independent of the exponent denominator);
 *  m must divide the coefficient conductor. */
QSeries<CycloElt> twist_by_zeta(const QSeries<CycloElt>& f, long m, long a);

/** Lower the denominator to newD | D; every nonzero slot must sit on the
 *  coarser grid, else NonIntegralExponentResidue. */
template <class C>
QSeries<C> reduce_denominator(const QSeries<C>& f, long newD) {
  if (f.D % newD != 0) throw DomainError("reduce_denominator: target does not divide D");
  long s = f.D / newD;
  long N = f.N() / s;
  QSeries<C> r{newD, std::vector<C>((size_t)N, f.proto), f.proto};
  for (long n = 0; n < f.N(); ++n) {
    if (coeff_is_zero(f.a[n])) continue;
    if (n % s != 0)
      throw NonIntegralExponentResidue("reduce_denominator: mass at exponent " +
                                       std::to_string(n) + "/" + std::to_string(f.D));
    if (n / s < N) r.a[(size_t)(n / s)] = f.a[n];
  }
  return r;
}

/** First slot (after unifying denominators) where the two series differ;
 *  compares over the shared precision. */
template <class C>
std::optional<long> first_mismatch(const QSeries<C>& f, const QSeries<C>& g) {
  long L = lcm_l(f.D, g.D);
  QSeries<C> x = unify_denominator(f, L), y = unify_denominator(g, L);
  long N = std::min(x.N(), y.N());
  for (long n = 0; n < N; ++n)
    if (!coeff_is_zero(x.a[n] - y.a[n])) return n;
  return std::nullopt;
}

template <class C>
bool series_equal(const QSeries<C>& f, const QSeries<C>& g) {
  return !first_mismatch(f, g).has_value();
}

/** Map a cyclotomic series with rational coefficients back to mpq. */
QSeries<mpq_class> to_rational(const QSeries<CycloElt>& f);
QSeries<CycloElt> to_cyclotomic(const QSeries<mpq_class>& f, long conductor);
QSeries<PadicNum> to_padic(const QSeries<mpq_class>& f, long p, long M);

}  // namespace halfint
