#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <memory>
#include <string>
#include <vector>

#include "halfint/eis_theta.hpp"
#include "halfint/forms.hpp"
#include "halfint/mat.hpp"

namespace halfint {

/**
 * Dense q-expansion with coefficients in Z/p^e (p^e < 2^63): the synthesis
 * kernel behind basis construction.  Slot n holds the coefficient of q^n;
 * e is the number of p-adic digits actually known.
 */
struct FlatSeries {
  long p = 0;
  long e = 0;
  uint64_t mod = 0;
  std::vector<uint64_t> a;

  long N() const { return (long)a.size(); }
};

FlatSeries flat_make(long p, long e, long N);
/** Reduce a rational series mod p^e; denominators must be prime to p. */
FlatSeries flat_from_rational(const QSeries<mpq_class>& f, long p, long e);
FlatSeries flat_theta(long p, long e, long N);
FlatSeries flat_fweight2(long p, long e, long N);
/** The p-deprived Eisenstein series of weight lambda (phi(q) | lambda). */
FlatSeries flat_eisenstein(long p, long lambda, long e, long N);
FlatSeries flat_mul(const FlatSeries& f, const FlatSeries& g);
FlatSeries flat_invert(const FlatSeries& f);
/** f(q^m), truncated to the same slot window. */
FlatSeries flat_dilate(const FlatSeries& f, long m);
FlatSeries flat_contract(const FlatSeries& f, long m);
/** First N slots as capped-precision p-adics, divided by p^shift. */
QSeries<PadicNum> flat_lift(const FlatSeries& f, long N, long shift = 0);

/**
 * q-echelonized list of forms: row j has its first nonzero coefficient at
 * pivot exponent n_j, normalized to 1, and every other row vanishes at n_j;
 * rows are ordered by pivot.  q_prec must exceed the last pivot by the
 * safety margin used at construction.
 */
template <class C>
struct EchelonBasis {
  std::vector<HalfIntForm<C>> forms;
  std::vector<long> pivots;
  long q_prec = 0;
  std::string provenance;

  long dim() const { return (long)forms.size(); }
};

/** Echelonize rows in place (margin < 0 selects the default 2*dim); throws
 *  EchelonDegenerate, naming the offending rows, when a row reduces to zero
 *  at precision within the pivot window. */
EchelonBasis<mpq_class> echelonize_forms(std::vector<HalfIntForm<mpq_class>> rows,
                                         std::string provenance, long margin = -1);
EchelonBasis<PadicNum> echelonize_forms(std::vector<HalfIntForm<PadicNum>> rows,
                                        std::string provenance, long margin = -1);

/** Monomials theta^a F^b with a + 4b = k (k odd), echelonized over Q;
 *  dimension 1 + floor(k/4), pivots 0..floor(k/4); tagged at the prime p. */
EchelonBasis<mpq_class> gamma0_4_graded_basis(long p, long k, long prec);

/** An echelon basis bundled with the same members at synthesis resolution
 *  (slot_mult * q_prec slots), from which operator images are computed. */
template <class C>
struct ApproxBasis {
  EchelonBasis<C> basis;
  std::vector<HalfIntForm<C>> wide;
  long slot_mult = 1;

  long dim() const { return basis.dim(); }
};
using KatzBasis = ApproxBasis<PadicNum>;
using KatzFamilyBasis = ApproxBasis<FamilyElt>;

/**
 * Depth-J approximation ladder at an arithmetic weight (trivial psi,
 * component 0): monomials theta^a F^b / E_{phi(q)}^j with
 * a + 4b = 2*lambda + 1 + 2*j*phi(q), j = 0..J, synthesized mod p^M and
 * echelonized.  U_{p^2} keeps the span of the full ladder and re-expands
 * truncations with p-adically small error, so no dilated members belong
 * here.  slot_mult <= 0 selects the default p^2, enough to feed U_{p^2}
 * and T_{ell^2} (ell <= p) images at full basis precision.
 */
KatzBasis katz_approx_basis(const Weight& kappa, long J, long prec, long M, long slot_mult = 0);

/** Family version over an interpolation frame (component 0): the
 *  weight-lambda_0 ladder transported across the frame by E_w / E_{lambda_0},
 *  assembled node-wise and echelonized over the family ring. */
KatzFamilyBasis katz_family_basis(const std::shared_ptr<const FamilyFrame>& frame, long J,
                                  long prec, long slot_mult = 0);

/** Specialize every member at a weight in the frame's disk. */
KatzBasis specialize_basis(const KatzFamilyBasis& B, const Weight& kappa);

inline constexpr long kTailExact = std::numeric_limits<long>::max();

/** Sentinel tolerance: the unexplained tail must vanish at working precision.
 *  Any other tolerance (negative values included, for bases whose normalized
 *  rows carry denominators) is a valuation floor the tail must respect. */
inline constexpr long kTailStrict = std::numeric_limits<long>::min();

/** Matrix of an operator in an echelon basis, with the per-column valuation
 *  floor actually achieved by the unexplained tail (kTailExact = none). */
template <class C>
struct CompactMatrix {
  Mat<C> mat;
  std::vector<long> tail_valuation;
  long tolerance = kTailStrict;
};

/** Solve image_j = sum_i M_ij g_i + tail against the pivots.  kTailStrict
 *  demands the tail vanish at working precision; otherwise every tail
 *  coefficient needs valuation >= tolerance.  Throws InsufficientPrecision
 *  when an image is too short to read every pivot, NotInSpan when the tail
 *  obstruction is genuine (message carries the first offending exponent). */
template <class C>
CompactMatrix<C> matrix_of_images(const EchelonBasis<C>& B, const std::vector<QSeries<C>>& images,
                                  long tolerance = kTailStrict);

/** Apply op to the synthesis-resolution members and solve column by column. */
template <class C>
CompactMatrix<C> matrix_of_operator(const ApproxBasis<C>& B,
                                    const std::function<HalfIntForm<C>(const HalfIntForm<C>&)>& op,
                                    long tolerance = kTailStrict);

}  // namespace halfint
