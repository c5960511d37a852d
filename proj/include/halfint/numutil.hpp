#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

#include "halfint/errors.hpp"

namespace halfint {

inline mpz_class pow_z(const mpz_class& base, unsigned long e) {
  mpz_class r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

/** p^k for k >= 0 (cached per (p, k); hot path in the p-adic layer). */
const mpz_class& prime_pow(long p, long k);

/** v_p(n) for n != 0. */
long val_p(const mpz_class& n, long p);

/** v_p of a nonzero rational. */
long val_p(const mpq_class& x, long p);

/** Inverse of a mod m (gcd(a, m) = 1), m > 1.  Throws NotAUnit otherwise. */
mpz_class mod_inverse(const mpz_class& a, const mpz_class& m);

/** Legendre symbol (a/ell) for an odd prime ell, by Euler's criterion; (0/ell) = 0. */
int legendre_symbol(const mpz_class& a, long ell);

/** Jacobi symbol (-1/d) = (-1)^((d-1)/2) for odd d (canonicalized mod 4). */
int minus_one_over(long d);

/** a^e mod m. */
inline mpz_class pow_mod(const mpz_class& a, const mpz_class& e, const mpz_class& m) {
  mpz_class r;
  mpz_powm(r.get_mpz_t(), a.get_mpz_t(), e.get_mpz_t(), m.get_mpz_t());
  return r;
}

inline long lcm_l(long a, long b) {
  mpz_class r;
  mpz_lcm_ui(r.get_mpz_t(), mpz_class(a).get_mpz_t(), (unsigned long)b);
  return r.get_si();
}

/** Euler phi for small arguments. */
long euler_phi(long m);

/** Primality test for long-sized arguments. */
bool is_prime(long n);

std::string mpq_to_string(const mpq_class& x);
mpq_class mpq_from_string(const std::string& s);

}  // namespace halfint
