#include "halfint/padic.hpp"

#include <atomic>
#include <unordered_map>

namespace halfint {

const mpz_class& prime_pow(long p, long k) {
  struct Key {
    long p, k;
    bool operator==(const Key& o) const { return p == o.p && k == o.k; }
  };
  struct KeyHash {
    size_t operator()(const Key& x) const {
      return std::hash<long>()(x.p) * 1000003u ^ std::hash<long>()(x.k);
    }
  };
  thread_local std::unordered_map<Key, mpz_class, KeyHash> cache;
  if (k < 0) throw DomainError("prime_pow: negative exponent");
  auto it = cache.find(Key{p, k});
  if (it != cache.end()) return it->second;
  mpz_class v;
  mpz_ui_pow_ui(v.get_mpz_t(), (unsigned long)p, (unsigned long)k);
  return cache.emplace(Key{p, k}, std::move(v)).first->second;
}

long val_p(const mpz_class& n, long p) {
  if (n == 0) throw DomainError("val_p of zero");
  mpz_class q, r = n;
  long v = 0;
  mpz_class pz(p);
  while (true) {
    mpz_class rem;
    mpz_fdiv_qr(q.get_mpz_t(), rem.get_mpz_t(), r.get_mpz_t(), pz.get_mpz_t());
    if (rem != 0) break;
    r = q;
    ++v;
  }
  return v;
}

long val_p(const mpq_class& x, long p) {
  if (x == 0) throw DomainError("val_p of zero");
  long v = 0;
  if (x.get_num() != 0) v = val_p(x.get_num(), p);
  return v - val_p(x.get_den(), p);
}

mpz_class mod_inverse(const mpz_class& a, const mpz_class& m) {
  mpz_class r;
  if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0)
    throw NotAUnit("mod_inverse: not invertible");
  return r;
}

int legendre_symbol(const mpz_class& a, long ell) {
  // Euler's criterion: a^((ell-1)/2) mod ell, with (0/ell) = 0.
  mpz_class m(ell);
  mpz_class r = a % m;
  if (r < 0) r += m;
  if (r == 0) return 0;
  mpz_class e((ell - 1) / 2);
  mpz_class s = pow_mod(r, e, m);
  return s == 1 ? 1 : -1;
}

int minus_one_over(long d) {
  long r = d % 4;
  if (r < 0) r += 4;
  if (r % 2 == 0) throw DomainError("minus_one_over: even argument");
  return r == 1 ? 1 : -1;
}

long euler_phi(long m) {
  if (m <= 0) throw DomainError("euler_phi: nonpositive argument");
  long result = m, n = m;
  for (long d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      while (n % d == 0) n /= d;
      result -= result / d;
    }
  }
  if (n > 1) result -= result / n;
  return result;
}

bool is_prime(long n) {
  if (n < 2) return false;
  return mpz_probab_prime_p(mpz_class(n).get_mpz_t(), 40) != 0;
}

std::string mpq_to_string(const mpq_class& x) {
  if (x.get_den() == 1) return x.get_num().get_str();
  return x.get_num().get_str() + "/" + x.get_den().get_str();
}

mpq_class mpq_from_string(const std::string& s) {
  mpq_class x;
  if (x.set_str(s, 10) != 0) throw DomainError("bad rational literal: " + s);
  x.canonicalize();
  return x;
}

// --- PadicNum ---------------------------------------------------------------

namespace {
std::atomic<long> g_floor{8};
}

long precision_floor() { return g_floor.load(); }
void set_precision_floor(long f) { g_floor.store(f); }

PadicNum PadicNum::make(long p, long M, long v, mpz_class t) {
  // t is the integer such that the value is p^v * t, known mod p^(M - v).
  PadicNum x;
  x.p_ = p;
  x.M_ = M;
  if (t == 0 || v >= M) {
    x.v_ = M;
    x.u_ = 0;
    return x;
  }
  long rel = M - v;
  mpz_class r = t % prime_pow(p, rel);
  if (r < 0) r += prime_pow(p, rel);
  if (r == 0) {
    x.v_ = M;
    x.u_ = 0;
    return x;
  }
  long e = val_p(r, p);
  if (v + e >= M) {
    x.v_ = M;
    x.u_ = 0;
    return x;
  }
  x.v_ = v + e;
  mpz_divexact(r.get_mpz_t(), r.get_mpz_t(), prime_pow(p, e).get_mpz_t());
  x.u_ = r % prime_pow(p, M - x.v_);
  return x;
}

PadicNum PadicNum::zero(long p, long M) {
  if (p < 2) throw DomainError("PadicNum: bad prime");
  return make(p, M, M, 0);
}

PadicNum PadicNum::one(long p, long M) { return from_integer(1, p, M); }

PadicNum PadicNum::from_integer(const mpz_class& n, long p, long M) {
  if (p < 2) throw DomainError("PadicNum: bad prime");
  return make(p, M, 0, n);
}

PadicNum PadicNum::from_parts(const mpz_class& u, long v, long p, long M) {
  if (p < 2) throw DomainError("PadicNum: bad prime");
  return make(p, M, v, u);
}

PadicNum PadicNum::from_rational(const mpq_class& x, long p, long M) {
  if (p < 2) throw DomainError("PadicNum: bad prime");
  if (x == 0) return zero(p, M);
  long vn = x.get_num() != 0 ? val_p(x.get_num(), p) : 0;
  long vd = val_p(x.get_den(), p);
  long v = vn - vd;
  if (v >= M) return zero(p, M);
  mpz_class num = x.get_num() / prime_pow(p, vn);
  mpz_class den = x.get_den() / prime_pow(p, vd);
  const mpz_class& mod = prime_pow(p, M - v);
  mpz_class u = (num % mod) * mod_inverse(den, mod);
  return make(p, M, v, u);
}

void PadicNum::check_compat(const PadicNum& o) const {
  if (p_ != o.p_) throw DomainError("PadicNum: mixed primes");
}

PadicNum PadicNum::operator-() const {
  if (is_zero()) return *this;
  return make(p_, M_, v_, prime_pow(p_, M_ - v_) - u_);
}

PadicNum PadicNum::operator+(const PadicNum& o) const {
  check_compat(o);
  long Mr = std::min(M_, o.M_);
  if (is_zero() && o.is_zero()) return zero(p_, Mr);
  long v0 = std::min(v_, o.v_);
  // Both terms as p^v0 * integer; precision M -> integer known mod p^(Mr - v0).
  mpz_class t = 0;
  if (!is_zero()) t += u_ * prime_pow(p_, v_ - v0);
  if (!o.is_zero()) t += o.u_ * prime_pow(p_, o.v_ - v0);
  return make(p_, Mr, v0, t);
}

PadicNum PadicNum::operator-(const PadicNum& o) const { return *this + (-o); }

PadicNum PadicNum::operator*(const PadicNum& o) const {
  check_compat(o);
  // v as lower bound for zero operands (v = M there).
  long Mr = std::min(M_ + o.v_, o.M_ + v_);
  if (is_zero() || o.is_zero()) return zero(p_, Mr);
  return make(p_, Mr, v_ + o.v_, u_ * o.u_);
}

PadicNum PadicNum::inverse() const {
  if (is_zero()) throw DomainError("PadicNum: inverse of zero at precision");
  if (rel_precision() < precision_floor())
    throw PrecisionError("PadicNum: divisor known to fewer digits than the precision floor");
  const mpz_class& mod = prime_pow(p_, rel_precision());
  return make(p_, rel_precision() - v_, -v_, mod_inverse(u_, mod));
}

PadicNum PadicNum::operator/(const PadicNum& o) const { return *this * o.inverse(); }

PadicNum PadicNum::pow(long e) const {
  if (e < 0) return inverse().pow(-e);
  PadicNum r = one(p_, e == 0 ? M_ : M_ + (is_zero() ? 0 : (e - 1) * v_));
  // Simple square-and-multiply; precision propagation is handled by operator*.
  PadicNum b = *this;
  unsigned long ee = (unsigned long)e;
  while (ee) {
    if (ee & 1) r = r * b;
    ee >>= 1;
    if (ee) b = b * b;
  }
  return r;
}

bool PadicNum::operator==(const PadicNum& o) const {
  check_compat(o);
  return (*this - o).is_zero();
}

PadicNum PadicNum::with_precision(long M2) const {
  if (M2 > M_) throw PrecisionError("with_precision: cannot raise the cap");
  if (is_zero()) return zero(p_, M2);
  return make(p_, M2, v_, u_);
}

mpq_class PadicNum::lift() const {
  if (is_zero()) return mpq_class(0);
  mpq_class r(u_);
  if (v_ >= 0) r *= prime_pow(p_, v_);
  else r /= prime_pow(p_, -v_);
  return r;
}

mpz_class PadicNum::residue(long k) const {
  if (k > M_) throw PrecisionError("residue: beyond precision cap");
  if (is_zero()) return 0;
  if (v_ < 0) throw DomainError("residue: negative valuation");
  return (u_ * prime_pow(p_, v_)) % prime_pow(p_, k);
}

std::string PadicNum::str() const {
  if (is_zero()) return "O(" + std::to_string(p_) + "^" + std::to_string(M_) + ")";
  return u_.get_str() + "*" + std::to_string(p_) + "^" + std::to_string(v_) +
         " + O(" + std::to_string(p_) + "^" + std::to_string(M_) + ")";
}

// --- unit decomposition ------------------------------------------------------

PadicNum teichmuller(const mpz_class& x, long p, long M) {
  return teichmuller(PadicNum::from_integer(x, p, M));
}

PadicNum teichmuller(const PadicNum& x) {
  if (!x.is_unit()) throw NotAUnit("teichmuller: argument is not a unit");
  long p = x.prime(), M = x.precision();
  if (M <= 0) throw PrecisionError("teichmuller: no digits");
  if (p == 2) {
    // Torsion in Z_2^x is {+-1}, decided by the residue mod 4.
    if (M == 1) return PadicNum::one(2, 1);  // mod 2 both signs coincide
    long r = mpz_class(x.unit_part() % 4).get_si();
    PadicNum one = PadicNum::one(2, M);
    return r == 1 ? one : -one;
  }
  // Iterate y <- y^p mod p^M; y_{k+1} = y_k mod p^(k+1), so M rounds suffice.
  const mpz_class& mod = prime_pow(p, M);
  mpz_class y = x.unit_part() % mod;
  mpz_class pz(p);
  for (long k = 0; k < M; ++k) {
    mpz_class y2 = pow_mod(y, pz, mod);
    if (y2 == y) break;
    y = y2;
  }
  return PadicNum::from_parts(y, 0, p, M);
}

PadicNum angle_part(const PadicNum& x) { return x / teichmuller(x); }

UnitDecomposition decompose_unit(const PadicNum& x) {
  PadicNum t = teichmuller(x);
  return UnitDecomposition{t, x / t};
}

// --- log / exp ---------------------------------------------------------------

PadicNum log_one_plus(const PadicNum& x) {
  long p = x.prime(), M = x.precision();
  long tmin = p == 2 ? 2 : 1;
  if (!x.is_zero() && x.valuation() < tmin)
    throw DomainError("log_one_plus: argument valuation too small");
  if (x.is_zero()) {
    if (x.precision() < tmin) throw DomainError("log_one_plus: argument valuation unknown");
    return PadicNum::zero(p, M);
  }
  long t = x.valuation();
  // Terms (-1)^(n+1) x^n / n; v(term) >= n*t - v_p(n), stop once that
  // clears the cap.
  PadicNum sum = PadicNum::zero(p, M);
  PadicNum xn = x;
  long n = 1;
  while (true) {
    long vn = val_p(mpz_class(n), p);
    PadicNum term = xn / PadicNum::from_integer(n, p, M + vn + 1);
    if (n % 2 == 0) term = -term;
    sum += term;
    ++n;
    vn = val_p(mpz_class(n), p);
    if (n * t - vn >= M) break;
    xn *= x;
  }
  return sum;
}

PadicNum exp_small(const PadicNum& x) {
  long p = x.prime(), M = x.precision();
  long tmin = p == 2 ? 2 : 1;
  if (!x.is_zero() && x.valuation() < tmin)
    throw DomainError("exp_small: argument valuation too small (needs v > 1/(p-1))");
  if (x.is_zero()) {
    if (x.precision() < tmin) throw DomainError("exp_small: argument valuation unknown");
    return PadicNum::one(p, M);
  }
  long t = x.valuation();
  PadicNum sum = PadicNum::one(p, M);
  PadicNum xn = x;
  mpz_class fact(1);
  long n = 1;
  while (true) {
    long vf = val_p(fact, p);
    PadicNum term = xn / PadicNum::from_integer(fact, p, M + vf + 1);
    sum += term;
    ++n;
    fact *= n;
    // v(x^n / n!) >= n*t - (n - s_p(n))/(p-1) > n*(t - 1/(p-1)), increasing.
    if (n * t - val_p(fact, p) >= M) break;
    xn *= x;
  }
  return sum;
}

}  // namespace halfint
