#include "halfint/cyclotomic.hpp"

#include <map>
#include <mutex>

namespace halfint {

namespace {

// Exact division of integer polynomials (constant-first), remainder must be 0.
std::vector<mpz_class> poly_divexact(const std::vector<mpz_class>& num,
                                     const std::vector<mpz_class>& den) {
  std::vector<mpz_class> r = num;
  long dn = (long)num.size() - 1, dd = (long)den.size() - 1;
  std::vector<mpz_class> q(dn - dd + 1, mpz_class(0));
  for (long k = dn - dd; k >= 0; --k) {
    mpz_class c = r[k + dd] / den[dd];
    q[k] = c;
    for (long j = 0; j <= dd; ++j) r[k + j] -= c * den[j];
  }
  for (const auto& c : r)
    if (c != 0) throw DomainError("poly_divexact: nonzero remainder");
  return q;
}

std::vector<mpz_class> cyclotomic_poly(long m) {
  // Phi_m = (x^m - 1) / prod_{d | m, d < m} Phi_d.
  static std::map<long, std::vector<mpz_class>> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto compute = [](auto&& self, long mm) -> const std::vector<mpz_class>& {
    auto it = cache.find(mm);
    if (it != cache.end()) return it->second;
    std::vector<mpz_class> num(mm + 1, mpz_class(0));
    num[0] = -1;
    num[mm] = 1;
    std::vector<mpz_class> acc{mpz_class(1)};
    for (long d = 1; d < mm; ++d) {
      if (mm % d != 0) continue;
      const auto& phid = self(self, d);
      std::vector<mpz_class> next(acc.size() + phid.size() - 1, mpz_class(0));
      for (size_t i = 0; i < acc.size(); ++i)
        for (size_t j = 0; j < phid.size(); ++j) next[i + j] += acc[i] * phid[j];
      acc = std::move(next);
    }
    auto phi = poly_divexact(num, acc);
    return cache.emplace(mm, std::move(phi)).first->second;
  };
  return compute(compute, m);
}

}  // namespace

CycloField::CycloField(long m) : m_(m) {
  if (m < 1) throw DomainError("CycloField: conductor must be positive");
  phi_ = cyclotomic_poly(m);
  deg_ = (long)phi_.size() - 1;
  // x^k mod Phi_m for all k in [0, m): below degree it is a basis monomial,
  // from degree upward reduce incrementally by the monic Phi_m.
  pow_table_.resize(m);
  for (long k = 0; k < std::min(m, deg_); ++k) {
    pow_table_[k].assign(deg_, mpz_class(0));
    pow_table_[k][k] = 1;
  }
  std::vector<mpz_class> cur(deg_, mpz_class(0));
  if (deg_ > 0 && m > deg_) {
    // cur = x^(deg-1)
    cur[deg_ - 1] = 1;
    for (long k = deg_; k < m; ++k) {
      // multiply by x, fold the overflow with x^deg = -phi_[0..deg-1]
      mpz_class top = cur[deg_ - 1];
      for (long j = deg_ - 1; j >= 1; --j) cur[j] = cur[j - 1];
      cur[0] = 0;
      if (top != 0)
        for (long j = 0; j < deg_; ++j) cur[j] -= top * phi_[j];
      pow_table_[k] = cur;
    }
  }
}

const CycloField& CycloField::get(long m) {
  static std::map<long, std::unique_ptr<CycloField>> registry;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto it = registry.find(m);
  if (it == registry.end())
    it = registry.emplace(m, std::unique_ptr<CycloField>(new CycloField(m))).first;
  return *it->second;
}

const std::vector<mpz_class>& CycloField::zeta_pow(long k) const {
  long r = k % m_;
  if (r < 0) r += m_;
  return pow_table_[r];
}

// --- CycloElt ----------------------------------------------------------------

void CycloElt::check(const CycloElt& o) const {
  if (!f_ || !o.f_) throw DomainError("CycloElt: uninitialized");
  if (f_->conductor() != o.f_->conductor())
    throw DomainError("CycloElt: mixed conductors (embed first)");
}

CycloElt CycloElt::zeta(long m, long k) {
  CycloElt x(m);
  const auto& pw = CycloField::get(m).zeta_pow(k);
  for (size_t i = 0; i < pw.size(); ++i) x.c_[i] = pw[i];
  return x;
}

bool CycloElt::is_zero() const {
  for (const auto& a : c_)
    if (a != 0) return false;
  return true;
}

bool CycloElt::is_rational() const {
  for (size_t i = 1; i < c_.size(); ++i)
    if (c_[i] != 0) return false;
  return true;
}

mpq_class CycloElt::rational_part() const {
  if (!is_rational())
    throw NonRationalResidue("CycloElt: nonzero zeta coordinates remain: " + str());
  return c_.empty() ? mpq_class(0) : c_[0];
}

CycloElt CycloElt::operator-() const {
  CycloElt r = *this;
  for (auto& a : r.c_) a = -a;
  return r;
}

CycloElt CycloElt::operator+(const CycloElt& o) const {
  check(o);
  CycloElt r = *this;
  for (size_t i = 0; i < c_.size(); ++i) r.c_[i] += o.c_[i];
  return r;
}

CycloElt CycloElt::operator-(const CycloElt& o) const {
  check(o);
  CycloElt r = *this;
  for (size_t i = 0; i < c_.size(); ++i) r.c_[i] -= o.c_[i];
  return r;
}

CycloElt CycloElt::operator*(const mpq_class& s) const {
  CycloElt r = *this;
  for (auto& a : r.c_) a *= s;
  return r;
}

CycloElt CycloElt::operator*(const CycloElt& o) const {
  check(o);
  long d = f_->degree();
  std::vector<mpq_class> buf(2 * d - 1 > 0 ? 2 * d - 1 : 1, mpq_class(0));
  for (long i = 0; i < d; ++i) {
    if (c_[i] == 0) continue;
    for (long j = 0; j < d; ++j) {
      if (o.c_[j] == 0) continue;
      buf[i + j] += c_[i] * o.c_[j];
    }
  }
  CycloElt r(f_->conductor());
  for (long k = 0; k < (long)buf.size(); ++k) {
    if (buf[k] == 0) continue;
    if (k < d) {
      r.c_[k] += buf[k];
    } else {
      const auto& red = f_->zeta_pow(k);
      for (long j = 0; j < d; ++j)
        if (red[j] != 0) r.c_[j] += buf[k] * red[j];
    }
  }
  return r;
}

bool CycloElt::operator==(const CycloElt& o) const {
  check(o);
  for (size_t i = 0; i < c_.size(); ++i)
    if (c_[i] != o.c_[i]) return false;
  return true;
}

CycloElt CycloElt::galois(long a) const {
  long m = f_->conductor();
  mpz_class g;
  mpz_gcd(g.get_mpz_t(), mpz_class(a).get_mpz_t(), mpz_class(m).get_mpz_t());
  if (g != 1) throw DomainError("CycloElt::galois: exponent not coprime to conductor");
  CycloElt r(m);
  for (long i = 0; i < f_->degree(); ++i) {
    if (c_[i] == 0) continue;
    const auto& pw = f_->zeta_pow(a * i);
    for (long j = 0; j < f_->degree(); ++j)
      if (pw[j] != 0) r.c_[j] += c_[i] * pw[j];
  }
  return r;
}

CycloElt CycloElt::embed(long m2) const {
  long m = f_->conductor();
  if (m2 % m != 0) throw DomainError("CycloElt::embed: target conductor not a multiple");
  long step = m2 / m;
  CycloElt r(m2);
  const CycloField& f2 = CycloField::get(m2);
  for (long i = 0; i < f_->degree(); ++i) {
    if (c_[i] == 0) continue;
    const auto& pw = f2.zeta_pow(step * i);
    for (long j = 0; j < f2.degree(); ++j)
      if (pw[j] != 0) r.c_[j] += c_[i] * pw[j];
  }
  return r;
}

CycloElt CycloElt::times_zeta(long k) const {
  long m = f_->conductor();
  long kk = k % m;
  if (kk < 0) kk += m;
  if (kk == 0) return *this;
  long d = f_->degree();
  CycloElt r(m);
  for (long i = 0; i < d; ++i) {
    if (c_[i] == 0) continue;
    const auto& pw = f_->zeta_pow(kk + i);
    for (long j = 0; j < d; ++j)
      if (pw[j] != 0) r.c_[j] += c_[i] * pw[j];
  }
  return r;
}

std::string CycloElt::str() const {
  std::string s = "[";
  for (size_t i = 0; i < c_.size(); ++i) {
    if (i) s += ", ";
    s += mpq_to_string(c_[i]);
  }
  return s + "] (conductor " + std::to_string(conductor()) + ")";
}

CycloElt gauss_sum(long ell, long a) {
  if (ell < 3 || ell % 2 == 0) throw DomainError("gauss_sum: ell must be an odd prime");
  CycloElt s(ell);
  for (long m = 1; m < ell; ++m) {
    int chi = legendre_symbol(m, ell);
    CycloElt z = CycloElt::zeta(ell, a * m);
    s += chi == 1 ? z : -z;
  }
  return s;
}

}  // namespace halfint
