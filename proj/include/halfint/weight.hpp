#pragma once

#include <gmpxx.h>

#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "halfint/cyclotomic.hpp"
#include "halfint/padic.hpp"

namespace halfint {

/** q = 4 when p = 2, else p; phi(q) counts the torsion characters. */
inline long weight_q(long p) { return p == 2 ? 4 : p; }
inline long weight_phi_q(long p) { return p == 2 ? 2 : p - 1; }

/**
 * Wild character psi on the one-units: a character of
 * (1 + q Z_p)/(1 + q p^(m-1) Z_p), cyclic of order p^(m-1), pinned by its
 * value zeta^t on the generator 1 + q.  m = 1 (or t = 0) is trivial.
 * Values lie in mu_{p^infinity}; inside Q_p only the trivial one exists for
 * odd p (for p = 2 also the quadratic one, m = 2), so p-adic evaluation of
 * the others is refused rather than approximated.
 */
struct WildPsi {
  long m = 1;  // conductor tier: conductor of psi is q * p^(m-1)
  long t = 0;  // psi(1+q) = zeta_{p^(m-1)}^t

  bool is_trivial(long p) const;
  /** Tier of the primitive core: 1 + log_p(order). */
  long effective_tier(long p) const;
  static WildPsi trivial() { return WildPsi{1, 0}; }
};

/** Arithmetic weight x^lambda * psi(<x>) on component i. */
struct ArithmeticWeight {
  long lambda = 0;
  WildPsi psi;
};

/** Generic weight on component i with disc coordinate w = kappa(1+q). */
struct GenericWeight {
  PadicNum w;
};

/**
 * Continuous character kappa of Z_p^x, decomposed as
 * kappa(x) = tau(x)^i * kappa(<x>) with 0 <= i < phi(q).
 */
class Weight {
 public:
  static Weight arithmetic(long p, long lambda, WildPsi psi = WildPsi::trivial());
  /** Arithmetic with an explicit component override (pullbacks). */
  static Weight arithmetic_on_component(long p, long lambda, long i,
                                        WildPsi psi = WildPsi::trivial());
  static Weight generic(long p, const PadicNum& w, long i);

  long prime() const { return p_; }
  long component() const { return i_; }
  long q() const { return weight_q(p_); }
  long phi_q() const { return weight_phi_q(p_); }
  bool is_arithmetic() const { return std::holds_alternative<ArithmeticWeight>(kind_); }
  const ArithmeticWeight& arith() const { return std::get<ArithmeticWeight>(kind_); }
  const GenericWeight& generic_part() const { return std::get<GenericWeight>(kind_); }

  /** kappa(x) in Q_p at precision M (arithmetic x given as an integer). */
  PadicNum eval(const mpz_class& x, long M) const;
  PadicNum eval(const PadicNum& x) const;

  /** kappa(<x>): the component-0 retargeting used by the Eisenstein recipe. */
  PadicNum eval_angle_only(const mpz_class& x, long M) const;

  /** Disc coordinate w = kappa(1+q). */
  PadicNum disc_coord(long M) const;

  /** Membership in the nested neighborhood W_n. */
  bool in_Wn(long n) const;

  /** Smallest n with kappa in W_n (arithmetic: the psi tier). */
  long nbhd_tier() const;

  std::string str() const;

 private:
  long p_;
  long i_;
  std::variant<ArithmeticWeight, GenericWeight> kind_;
  Weight(long p, long i, std::variant<ArithmeticWeight, GenericWeight> k)
      : p_(p), i_(i), kind_(std::move(k)) {}
};

/** Overconvergence radius schedule: r(n) = p^(2-n) / (2 q (1+p)), strictly
 *  inside the admissible range for W_n. */
mpq_class r_schedule(long p, long n);

/**
 * Interpolation frame for a p-adic family on component i: Dw+1 arithmetic
 * node weights lambda_j = lambda_0 + j * phi(q) * p^c, clustered so that a
 * degree-Dw polynomial in w determines analytic coefficients to M-2 digits
 * on the node disk.
 */
struct FamilyFrame {
  long p;
  long M;
  long i;
  long cluster_c;
  std::vector<long> lambdas;
  std::vector<PadicNum> w_nodes;

  long degree() const { return (long)lambdas.size() - 1; }
  std::optional<long> node_index(const Weight& kappa) const;
};

std::shared_ptr<const FamilyFrame> make_family_frame(long p, long M, long lambda0,
                                                     long Dw, long cluster_c = 2);

/**
 * Element of the family coefficient ring O(X)/(deg <= Dw): a polynomial in
 * the disc coordinate w stored by its values at the frame nodes (the quotient
 * Q_p[w]/prod_j(w - w_j), where specialization at sample weights is a ring
 * homomorphism on the nose).  Off-node specialization evaluates the Newton
 * form; it is meaningful for weights inside the node disk.
 */
class FamilyElt {
 public:
  FamilyElt() = default;
  FamilyElt(std::shared_ptr<const FamilyFrame> frame, std::vector<PadicNum> vals);

  /** Constant polynomial. */
  static FamilyElt constant(std::shared_ptr<const FamilyFrame> frame, const PadicNum& c);
  /** The coordinate w itself. */
  static FamilyElt coordinate(std::shared_ptr<const FamilyFrame> frame);
  /** [ell]: the analytic function kappa -> kappa(ell) on the frame. */
  static FamilyElt bracket(std::shared_ptr<const FamilyFrame> frame, long ell);

  const std::shared_ptr<const FamilyFrame>& frame() const { return frame_; }
  const std::vector<PadicNum>& values() const { return vals_; }

  FamilyElt operator-() const;
  FamilyElt operator+(const FamilyElt& o) const;
  FamilyElt operator-(const FamilyElt& o) const;
  FamilyElt operator*(const FamilyElt& o) const;
  FamilyElt operator*(const PadicNum& s) const;
  FamilyElt inverse() const;

  bool is_zero() const;
  bool operator==(const FamilyElt& o) const;
  bool operator!=(const FamilyElt& o) const { return !(*this == o); }

  /** Divided-difference (Newton) coefficients against nodes w_0, w_1, ... */
  std::vector<PadicNum> newton_coeffs() const;
  /** Degree in w (largest nonvanishing Newton coefficient). */
  long degree() const;

  /** Specialization at a weight: exact at frame nodes, Newton evaluation
   *  inside the node disk otherwise (WeightNotInNbhd if outside). */
  PadicNum specialize(const Weight& kappa) const;
  PadicNum specialize_at(const PadicNum& w_target) const;

 private:
  std::shared_ptr<const FamilyFrame> frame_;
  std::vector<PadicNum> vals_;
  void check(const FamilyElt& o) const;
};

inline FamilyElt operator*(const PadicNum& s, const FamilyElt& x) { return x * s; }

// QSeries domain glue for FamilyElt.
inline FamilyElt coeff_zero(const FamilyElt& proto) {
  return FamilyElt::constant(proto.frame(), PadicNum::zero(proto.frame()->p, proto.frame()->M));
}
inline FamilyElt coeff_one(const FamilyElt& proto) {
  return FamilyElt::constant(proto.frame(), PadicNum::one(proto.frame()->p, proto.frame()->M));
}
inline bool coeff_is_zero(const FamilyElt& x) { return x.is_zero(); }
inline FamilyElt coeff_inv(const FamilyElt& x) { return x.inverse(); }

}  // namespace halfint
