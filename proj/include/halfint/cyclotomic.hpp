#pragma once

#include <gmpxx.h>

#include <memory>
#include <string>
#include <vector>

#include "halfint/errors.hpp"
#include "halfint/numutil.hpp"

namespace halfint {

/**
 * Shared immutable context for Q(zeta_m) in the power basis of
 * Z[x]/Phi_m(x): the cyclotomic polynomial, and reduction tables
 * x^k mod Phi_m for every k < m.  Instances are interned per conductor.
 */
class CycloField {
 public:
  static const CycloField& get(long m);

  long conductor() const { return m_; }
  long degree() const { return deg_; }
  /** Coefficients of Phi_m, constant term first (monic, length degree+1). */
  const std::vector<mpz_class>& phi() const { return phi_; }
  /** Coordinates of zeta_m^k in the power basis, any integer k. */
  const std::vector<mpz_class>& zeta_pow(long k) const;

 private:
  explicit CycloField(long m);
  long m_, deg_;
  std::vector<mpz_class> phi_;
  std::vector<std::vector<mpz_class>> pow_table_;  // x^k mod Phi_m, k in [0, m)
};

/** Element of Q(zeta_m) with rational coordinates in the power basis.
 *  Representation is canonical, so equality is coordinatewise. */
class CycloElt {
 public:
  CycloElt() : f_(nullptr) {}
  explicit CycloElt(long m) : f_(&CycloField::get(m)), c_(f_->degree(), mpq_class(0)) {}
  CycloElt(long m, const mpq_class& rational) : CycloElt(m) {
    if (f_->degree() > 0) c_[0] = rational;
  }

  static CycloElt zero(long m) { return CycloElt(m); }
  static CycloElt one(long m) { return CycloElt(m, 1); }
  /** zeta_m^k, any integer k. */
  static CycloElt zeta(long m, long k);

  long conductor() const { return f_->conductor(); }
  const std::vector<mpq_class>& coords() const { return c_; }

  bool is_zero() const;
  bool is_rational() const;
  /** Constant coordinate; throws NonRationalResidue unless is_rational(). */
  mpq_class rational_part() const;

  CycloElt operator-() const;
  CycloElt operator+(const CycloElt& o) const;
  CycloElt operator-(const CycloElt& o) const;
  CycloElt operator*(const CycloElt& o) const;
  CycloElt& operator+=(const CycloElt& o) { return *this = *this + o; }
  CycloElt& operator-=(const CycloElt& o) { return *this = *this - o; }
  CycloElt& operator*=(const CycloElt& o) { return *this = *this * o; }
  CycloElt operator*(const mpq_class& s) const;

  bool operator==(const CycloElt& o) const;
  bool operator!=(const CycloElt& o) const { return !(*this == o); }

  /** Image under zeta_m -> zeta_m^a (a coprime to m): Galois twist; also the
   *  workhorse for evaluating elements written in other roots of unity. */
  CycloElt galois(long a) const;

  /** Same element viewed in Q(zeta_m2) for m | m2. */
  CycloElt embed(long m2) const;

  /** Multiply by zeta_m^k (fast monomial path). */
  CycloElt times_zeta(long k) const;

  std::string str() const;

 private:
  const CycloField* f_;
  std::vector<mpq_class> c_;
  void check(const CycloElt& o) const;
};

inline CycloElt operator*(const mpq_class& s, const CycloElt& x) { return x * s; }

/** Quadratic Gauss sum g_ell(zeta_ell^a) = sum_m (m/ell) zeta_ell^(am),
 *  as an element of Q(zeta_ell); ell an odd prime. */
CycloElt gauss_sum(long ell, long a);

}  // namespace halfint
