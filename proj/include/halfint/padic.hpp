#pragma once

#include <gmpxx.h>

#include <string>

#include "halfint/errors.hpp"
#include "halfint/numutil.hpp"

namespace halfint {

/**
 * Element of Q_p tracked to a capped absolute precision: the value is known
 * modulo p^M and nothing more.  Nonzero elements are stored as p^v * u with
 * p-free unit part u kept modulo p^(M-v), so the relative precision is M - v.
 * "Zero at precision M" (u = 0, v = M) only asserts v(x) >= M.
 *
 * Arithmetic propagates precision by the min rule (adds) and the
 * valuation-shifted min rule (products); it never claims digits it does not
 * have.  Division by elements of positive valuation is allowed and lowers
 * the cap; dividing by something with fewer known digits than the precision
 * floor (default 8) raises PrecisionError instead of returning noise.
 */
class PadicNum {
 public:
  PadicNum() : p_(0), v_(0), M_(0), u_(0) {}

  static PadicNum zero(long p, long M);
  static PadicNum one(long p, long M);
  static PadicNum from_integer(const mpz_class& n, long p, long M);
  static PadicNum from_rational(const mpq_class& x, long p, long M);
  /** p^v * u mod p^M, no assumptions on u (it is normalized here). */
  static PadicNum from_parts(const mpz_class& u, long v, long p, long M);

  long prime() const { return p_; }
  /** Absolute precision cap M: the value is known mod p^M. */
  long precision() const { return M_; }
  bool is_zero() const { return u_ == 0; }
  /** Valuation; for zero-at-precision this is the lower bound M. */
  long valuation() const { return v_; }
  long rel_precision() const { return M_ - v_; }
  /** Unit part u (0 < u < p^(M-v), p-free); 0 for zero. */
  const mpz_class& unit_part() const { return u_; }

  bool is_unit() const { return !is_zero() && v_ == 0; }

  PadicNum operator-() const;
  PadicNum operator+(const PadicNum& o) const;
  PadicNum operator-(const PadicNum& o) const;
  PadicNum operator*(const PadicNum& o) const;
  PadicNum operator/(const PadicNum& o) const;
  PadicNum& operator+=(const PadicNum& o) { return *this = *this + o; }
  PadicNum& operator-=(const PadicNum& o) { return *this = *this - o; }
  PadicNum& operator*=(const PadicNum& o) { return *this = *this * o; }
  PadicNum& operator/=(const PadicNum& o) { return *this = *this / o; }

  PadicNum inverse() const;
  PadicNum pow(long e) const;

  /** Equality at the shared precision: v(x - y) >= min(Mx, My). */
  bool operator==(const PadicNum& o) const;
  bool operator!=(const PadicNum& o) const { return !(*this == o); }

  /** Truncate the cap to M2 <= M. */
  PadicNum with_precision(long M2) const;

  /** The stored value as an exact rational p^v * u. */
  mpq_class lift() const;
  /** Least nonnegative residue mod p^k (requires v >= 0 and k <= M). */
  mpz_class residue(long k) const;

  std::string str() const;

 private:
  long p_;
  long v_;
  long M_;
  mpz_class u_;

  static PadicNum make(long p, long M, long v, mpz_class t);
  void check_compat(const PadicNum& o) const;
};

/** Relative-precision floor consulted by division; default 8 digits. */
long precision_floor();
void set_precision_floor(long f);

/** Scoped override of the precision floor (tests / diagnostics). */
struct PrecisionFloorGuard {
  explicit PrecisionFloorGuard(long f) : saved_(precision_floor()) { set_precision_floor(f); }
  ~PrecisionFloorGuard() { set_precision_floor(saved_); }

 private:
  long saved_;
};

/** Teichmueller lift of the residue of a unit x: the (q-free) root of unity
 *  congruent to x, computed as the p-power fixed point (sign of x mod 4 when
 *  p = 2).  Raises NotAUnit on v(x) != 0. */
PadicNum teichmuller(const PadicNum& x);
PadicNum teichmuller(const mpz_class& x, long p, long M);

/** One-unit part <x> = x / teichmuller(x). */
PadicNum angle_part(const PadicNum& x);

struct UnitDecomposition {
  PadicNum tau_part;
  PadicNum angle;
};
UnitDecomposition decompose_unit(const PadicNum& x);

/** log(1 + x) for v(x) >= 1 (v(x) >= 2 when p = 2). */
PadicNum log_one_plus(const PadicNum& x);
/** exp(x) for v(x) >= 1 (v(x) >= 2 when p = 2), i.e. v(x) > 1/(p-1). */
PadicNum exp_small(const PadicNum& x);

}  // namespace halfint
