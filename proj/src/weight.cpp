#include "halfint/weight.hpp"

#include <algorithm>

namespace halfint {

namespace {
long val_p_long(long n, long p) {
  long v = 0;
  while (n != 0 && n % p == 0) {
    n /= p;
    ++v;
  }
  return v;
}

long pow_long(long b, long e) {
  long r = 1;
  for (long k = 0; k < e; ++k) r *= b;
  return r;
}
}  // namespace

static PadicNum eval_angle_core(const Weight& kappa, const PadicNum& angle, long M);

bool WildPsi::is_trivial(long p) const {
  if (m <= 1) return true;
  return t % pow_long(p, m - 1) == 0;
}

long WildPsi::effective_tier(long p) const {
  if (m <= 1) return 1;
  long mod = pow_long(p, m - 1);
  long tt = ((t % mod) + mod) % mod;
  if (tt == 0) return 1;
  return m - val_p_long(tt, p);
}

Weight Weight::arithmetic(long p, long lambda, WildPsi psi) {
  long phi = weight_phi_q(p);
  long i = ((lambda % phi) + phi) % phi;
  return arithmetic_on_component(p, lambda, i, psi);
}

Weight Weight::arithmetic_on_component(long p, long lambda, long i, WildPsi psi) {
  if (p < 2) throw DomainError("Weight: bad prime");
  long phi = weight_phi_q(p);
  if (i < 0 || i >= phi) throw DomainError("Weight: component out of range");
  if (psi.m < 1) throw DomainError("Weight: bad psi tier");
  return Weight(p, i, ArithmeticWeight{lambda, psi});
}

Weight Weight::generic(long p, const PadicNum& w, long i) {
  if (p < 2 || w.prime() != p) throw DomainError("Weight: bad prime for generic weight");
  long phi = weight_phi_q(p);
  if (i < 0 || i >= phi) throw DomainError("Weight: component out of range");
  long need = p == 2 ? 2 : 1;
  PadicNum d = w - PadicNum::one(p, w.precision());
  if (d.is_zero()) {
    if (d.precision() < need)
      throw PrecisionTooLow("Weight: cannot certify disc coordinate at this precision");
  } else if (d.valuation() < need) {
    throw WeightNotInNbhd("Weight: disc coordinate outside the Q_p weight disk (v(w-1) = " +
                          std::to_string(d.valuation()) + ")");
  }
  return Weight(p, i, GenericWeight{w});
}

PadicNum Weight::eval(const PadicNum& x) const {
  if (!x.is_unit()) throw NotAUnit("Weight::eval: argument is not a unit");
  long M = x.precision();
  UnitDecomposition d = decompose_unit(x);
  PadicNum tau_i = d.tau_part.pow(i_);
  return tau_i * eval_angle_core(*this, d.angle, M);
}

// kappa(<x>) for a one-unit <x>; shared by eval and the component-0 recipe.
static PadicNum eval_angle_core(const Weight& kappa, const PadicNum& angle, long M) {
  long p = kappa.prime();
  if (kappa.is_arithmetic()) {
    const auto& aw = kappa.arith();
    PadicNum r = angle.pow(aw.lambda);
    if (!aw.psi.is_trivial(p)) {
      long tier = aw.psi.effective_tier(p);
      if (p == 2 && tier == 2) {
        // Quadratic psi: value (-1)^s with <x> = (1+q)^s.
        PadicNum lq = log_one_plus(PadicNum::from_integer(weight_q(p), p, M));
        PadicNum la = log_one_plus(angle - PadicNum::one(p, angle.precision()));
        PadicNum s = la / lq;
        if (s.precision() < 1)
          throw PrecisionTooLow("Weight::eval: psi parity needs one digit of s");
        bool odd = !s.is_zero() && s.valuation() == 0 && s.residue(1) == 1;
        if (odd) r = -r;
      } else {
        throw EvalError("Weight::eval: psi of order p^" + std::to_string(tier - 1) +
                        " has no Q_p values; refused");
      }
    }
    return r;
  }
  // Generic: <x>^kappa = exp(s * log w), s = log<x> / log(1+q).
  const PadicNum& w = kappa.generic_part().w;
  PadicNum one = PadicNum::one(p, angle.precision());
  PadicNum la = log_one_plus(angle - one);
  PadicNum lq = log_one_plus(PadicNum::from_integer(weight_q(p), p, M));
  PadicNum s = la / lq;
  PadicNum lw = log_one_plus(w - PadicNum::one(p, w.precision()));
  PadicNum arg = s * lw;
  if (arg.is_zero()) return PadicNum::one(p, arg.precision());
  return exp_small(arg);
}

PadicNum Weight::eval(const mpz_class& x, long M) const {
  if (x % p_ == 0) throw NotAUnit("Weight::eval: argument divisible by p");
  return eval(PadicNum::from_integer(x, p_, M));
}

PadicNum Weight::eval_angle_only(const mpz_class& x, long M) const {
  if (x % p_ == 0) throw NotAUnit("Weight::eval: argument divisible by p");
  PadicNum X = PadicNum::from_integer(x, p_, M);
  return eval_angle_core(*this, angle_part(X), M);
}

PadicNum Weight::disc_coord(long M) const {
  if (!is_arithmetic()) {
    const PadicNum& w = generic_part().w;
    return M < w.precision() ? w.with_precision(M) : w;
  }
  const auto& aw = arith();
  PadicNum base = PadicNum::from_integer(1 + q(), p_, M);
  PadicNum r = base.pow(aw.lambda);
  if (!aw.psi.is_trivial(p_)) {
    long tier = aw.psi.effective_tier(p_);
    if (p_ == 2 && tier == 2) r = -r;
    else
      throw EvalError("Weight::disc_coord: psi value zeta_p^" + std::to_string(aw.psi.t) +
                      " lies outside Q_p; refused");
  }
  return r;
}

bool Weight::in_Wn(long n) const {
  if (n < 1) throw DomainError("in_Wn: n must be >= 1");
  if (is_arithmetic()) return n >= arith().psi.effective_tier(p_);
  // |w^(p^(n-1)) - 1| <= |q|, decided at the available precision.
  const PadicNum& w = generic_part().w;
  long vq = p_ == 2 ? 2 : 1;
  PadicNum z = w.pow(pow_long(p_, n - 1)) - PadicNum::one(p_, w.precision());
  if (z.is_zero()) {
    if (z.precision() < vq)
      throw PrecisionTooLow("in_Wn: not enough digits to certify membership");
    return true;
  }
  return z.valuation() >= vq;
}

long Weight::nbhd_tier() const {
  if (is_arithmetic()) return arith().psi.effective_tier(p_);
  for (long n = 1; n <= 64; ++n)
    if (in_Wn(n)) return n;
  throw WeightNotInNbhd("nbhd_tier: weight not in any W_n up to n = 64");
}

std::string Weight::str() const {
  if (is_arithmetic()) {
    const auto& aw = arith();
    std::string s = "x^" + std::to_string(aw.lambda);
    if (!aw.psi.is_trivial(p_))
      s += "*psi[m=" + std::to_string(aw.psi.m) + ",t=" + std::to_string(aw.psi.t) + "]";
    s += " (p=" + std::to_string(p_) + ", i=" + std::to_string(i_) + ")";
    return s;
  }
  return "generic w=" + generic_part().w.str() + " (p=" + std::to_string(p_) +
         ", i=" + std::to_string(i_) + ")";
}

mpq_class r_schedule(long p, long n) {
  if (n < 1) throw DomainError("r_schedule: n must be >= 1");
  mpq_class r(1);
  if (n <= 2) r = mpq_class(prime_pow(p, 2 - n));
  else r = mpq_class(1) / mpq_class(prime_pow(p, n - 2));
  r /= mpq_class(2 * weight_q(p) * (1 + p));
  return r;
}

// --- families ----------------------------------------------------------------

std::shared_ptr<const FamilyFrame> make_family_frame(long p, long M, long lambda0,
                                                     long Dw, long cluster_c) {
  if (Dw < 1) throw InterpolationInsufficient("family frame needs degree >= 1");
  if (cluster_c < 0) throw DomainError("family frame: negative clustering exponent");
  long phi = weight_phi_q(p);
  if (lambda0 < 2 || lambda0 % phi != 0)
    throw DomainError("family frame: lambda0 must be >= 2 and divisible by phi(q)");
  auto f = std::make_shared<FamilyFrame>();
  f->p = p;
  f->M = M;
  f->i = 0;
  f->cluster_c = cluster_c;
  long spacing = phi;
  for (long k = 0; k < cluster_c; ++k) spacing *= p;
  PadicNum base = PadicNum::from_integer(1 + weight_q(p), p, M);
  for (long j = 0; j <= Dw; ++j) {
    long lam = lambda0 + j * spacing;
    f->lambdas.push_back(lam);
    f->w_nodes.push_back(base.pow(lam));
  }
  return f;
}

std::optional<long> FamilyFrame::node_index(const Weight& kappa) const {
  if (!kappa.is_arithmetic() || kappa.prime() != p) return std::nullopt;
  if (kappa.component() != i) return std::nullopt;
  if (!kappa.arith().psi.is_trivial(p)) return std::nullopt;
  for (size_t j = 0; j < lambdas.size(); ++j)
    if (lambdas[j] == kappa.arith().lambda) return (long)j;
  return std::nullopt;
}

FamilyElt::FamilyElt(std::shared_ptr<const FamilyFrame> frame, std::vector<PadicNum> vals)
    : frame_(std::move(frame)), vals_(std::move(vals)) {
  if (!frame_) throw DomainError("FamilyElt: null frame");
  if ((long)vals_.size() != frame_->degree() + 1)
    throw InterpolationInsufficient("FamilyElt: need one value per node (Dw+1 samples)");
}

FamilyElt FamilyElt::constant(std::shared_ptr<const FamilyFrame> frame, const PadicNum& c) {
  std::vector<PadicNum> v((size_t)(frame->degree() + 1), c);
  return FamilyElt(std::move(frame), std::move(v));
}

FamilyElt FamilyElt::coordinate(std::shared_ptr<const FamilyFrame> frame) {
  std::vector<PadicNum> v = frame->w_nodes;
  return FamilyElt(std::move(frame), std::move(v));
}

FamilyElt FamilyElt::bracket(std::shared_ptr<const FamilyFrame> frame, long ell) {
  std::vector<PadicNum> v;
  for (long lam : frame->lambdas) {
    Weight k = Weight::arithmetic_on_component(frame->p, lam, frame->i);
    v.push_back(k.eval(mpz_class(ell), frame->M));
  }
  return FamilyElt(std::move(frame), std::move(v));
}

void FamilyElt::check(const FamilyElt& o) const {
  if (!frame_ || !o.frame_) throw DomainError("FamilyElt: uninitialized");
  if (frame_ == o.frame_) return;
  if (frame_->p != o.frame_->p || frame_->M != o.frame_->M || frame_->i != o.frame_->i ||
      frame_->lambdas != o.frame_->lambdas)
    throw DomainError("FamilyElt: mixed frames");
}

FamilyElt FamilyElt::operator-() const {
  FamilyElt r = *this;
  for (auto& v : r.vals_) v = -v;
  return r;
}

FamilyElt FamilyElt::operator+(const FamilyElt& o) const {
  check(o);
  FamilyElt r = *this;
  for (size_t j = 0; j < vals_.size(); ++j) r.vals_[j] += o.vals_[j];
  return r;
}

FamilyElt FamilyElt::operator-(const FamilyElt& o) const {
  check(o);
  FamilyElt r = *this;
  for (size_t j = 0; j < vals_.size(); ++j) r.vals_[j] -= o.vals_[j];
  return r;
}

FamilyElt FamilyElt::operator*(const FamilyElt& o) const {
  check(o);
  FamilyElt r = *this;
  for (size_t j = 0; j < vals_.size(); ++j) r.vals_[j] *= o.vals_[j];
  return r;
}

FamilyElt FamilyElt::operator*(const PadicNum& s) const {
  FamilyElt r = *this;
  for (auto& v : r.vals_) v *= s;
  return r;
}

FamilyElt FamilyElt::inverse() const {
  FamilyElt r = *this;
  for (auto& v : r.vals_) v = v.inverse();
  return r;
}

bool FamilyElt::is_zero() const {
  for (const auto& v : vals_)
    if (!v.is_zero()) return false;
  return true;
}

bool FamilyElt::operator==(const FamilyElt& o) const {
  check(o);
  for (size_t j = 0; j < vals_.size(); ++j)
    if (vals_[j] != o.vals_[j]) return false;
  return true;
}

std::vector<PadicNum> FamilyElt::newton_coeffs() const {
  std::vector<PadicNum> d = vals_;
  long n = (long)d.size();
  for (long k = 1; k < n; ++k)
    for (long j = n - 1; j >= k; --j)
      d[(size_t)j] = (d[(size_t)j] - d[(size_t)(j - 1)]) /
                     (frame_->w_nodes[(size_t)j] - frame_->w_nodes[(size_t)(j - k)]);
  return d;
}

long FamilyElt::degree() const {
  auto c = newton_coeffs();
  for (long k = (long)c.size() - 1; k >= 0; --k)
    if (!c[(size_t)k].is_zero()) return k;
  return 0;
}

PadicNum FamilyElt::specialize_at(const PadicNum& w_target) const {
  auto c = newton_coeffs();
  long n = (long)c.size();
  PadicNum r = c[(size_t)(n - 1)];
  for (long k = n - 2; k >= 0; --k)
    r = r * (w_target - frame_->w_nodes[(size_t)k]) + c[(size_t)k];
  return r;
}

PadicNum FamilyElt::specialize(const Weight& kappa) const {
  if (auto j = frame_->node_index(kappa)) return vals_[(size_t)*j];
  if (kappa.prime() != frame_->p)
    throw DomainError("FamilyElt::specialize: wrong prime");
  if (kappa.component() != frame_->i)
    throw WeightNotInNbhd("FamilyElt::specialize: weight is on a different component");
  PadicNum w = kappa.disc_coord(frame_->M);
  // Interpolation is certified only inside the node disk.
  PadicNum d = w - frame_->w_nodes[0];
  long radius = (frame_->p == 2 ? 2 : 1) + frame_->cluster_c;
  if (!d.is_zero() && d.valuation() < radius)
    throw WeightNotInNbhd("FamilyElt::specialize: weight outside the interpolation disk");
  return specialize_at(w);
}

}  // namespace halfint
