#pragma once

#include "halfint/basis.hpp"

namespace halfint {

/** Fredholm series P(T) = det(1 - T M); c[0] = 1 exactly, degree <= dim. */
template <class C>
struct FredholmSeries {
  std::vector<C> c;

  long degree() const { return (long)c.size() - 1; }
};

/** Division-free characteristic coefficients (Berkowitz vector recurrences),
 *  so no p-adic digit is lost to integer division. */
template <class C>
FredholmSeries<C> fredholm_coeffs(const Mat<C>& M);

/**
 * Lower convex hull of {(k, v(c_k))}.  Segment slopes strictly increase and
 * are reported directly as eigenvalue slopes: a segment of slope s and
 * horizontal length m certifies m reciprocal roots alpha with v(alpha) = s.
 * Coefficients that vanish at working precision only bound their valuation
 * from below; when such a bound dips under the hull (or would absorb the
 * last certified vertex), the polygon is flagged indeterminate with a note
 * and returned as the partial hull over the certified points.
 */
struct NewtonSegment {
  mpq_class slope;
  long mult = 0;
};
struct NewtonPolygon {
  std::vector<std::pair<long, long>> vertices;  // (k, v(c_k)) on the hull
  std::vector<NewtonSegment> segments;
  bool indeterminate = false;
  std::string note;
};
NewtonPolygon newton_polygon(const FredholmSeries<PadicNum>& P);

/** Segment slopes expanded with multiplicity, ascending. */
std::vector<mpq_class> slope_list(const NewtonPolygon& np);

/**
 * Split P = Q*R with Q(0) = R(0) = 1, Q collecting exactly the eigenvalues
 * of slope <= h.  Initial approximants come from the hull truncation; they
 * are refined by solving the linearization Q dR + R dQ = P - Q R to
 * quadratic convergence.  Throws NoSlopeGap when the linearization is
 * singular at working precision (h does not separate the spectrum),
 * IndeterminateVertex when the separating vertex itself is uncertified, and
 * NonConvergence (reporting the achieved residual valuation) when the
 * iteration stalls short of precision.
 */
struct SlopeFactorization {
  std::vector<PadicNum> Q, R;
  long residual_valuation = 0;  // valuation floor of P - Q R (kTailExact-like cap)
};
SlopeFactorization slope_factor(const FredholmSeries<PadicNum>& P, const mpq_class& h);

/** One rational eigen-system on the finite-slope piece. */
struct EigenPacket {
  mpq_class slope;
  PadicNum alpha;                           // eigenvalue of the compact operator
  std::vector<PadicNum> hecke_eigenvalues;  // one per supplied generator
};

/**
 * Riesz decomposition data for the factor Q: projector e = b(M) R*(M) from a
 * Bezout identity a Q* + b R* = 1, the spanned finite-slope sub-basis, and
 * the restriction of the operator to it.  Contract (asserted at working
 * precision on every run): e^2 = e, e M = M e, trace e = deg Q, and the
 * restricted characteristic series is stored for comparison against Q.
 */
struct LocalPiece {
  std::vector<PadicNum> Q, R;
  Mat<PadicNum> projector;
  std::vector<long> basis_cols;               // columns of e spanning the image
  std::vector<std::vector<PadicNum>> n_basis;  // rank columns, each dim entries
  Mat<PadicNum> restricted;                   // rank x rank
  std::vector<PadicNum> restricted_charpoly;
  long rank = 0;

  // populated by local_hecke_algebra
  std::vector<Mat<PadicNum>> gen_restricted;
  std::vector<std::vector<PadicNum>> gen_charpoly;
  std::vector<long> commutator_valuations;
  std::vector<EigenPacket> packets;
};

LocalPiece riesz_decompose(const Mat<PadicNum>& M, const std::vector<PadicNum>& Q);

/**
 * Restrict each generator to the finite-slope piece, recording per-generator
 * characteristic polynomials and pairwise commutator valuation floors
 * (operator included); NonCommuting below the tolerance.  Eigen-packets are
 * emitted for integer slopes of multiplicity one whose eigenvalue Hensel-lifts
 * in Q_p and whose eigenvector certifies every generator at the tolerance.
 */
LocalPiece local_hecke_algebra(LocalPiece piece, const Mat<PadicNum>& M,
                               const std::vector<Mat<PadicNum>>& gens, long tolerance);

/** Entrywise specialization of a family matrix at a weight in the frame disk. */
Mat<PadicNum> specialize_matrix(const Mat<FamilyElt>& Mw, const Weight& kappa);

/** Coefficientwise specialization of a family Fredholm series. */
FredholmSeries<PadicNum> specialize_series(const FredholmSeries<FamilyElt>& P,
                                           const Weight& kappa);

/** Both routes from a family matrix to a per-weight Fredholm series:
 *  specialize-the-series vs recompute-from-specialized-matrix, with the
 *  valuation floor of their difference. */
struct FamilySpectralCheck {
  std::vector<PadicNum> specialized;
  std::vector<PadicNum> recomputed;
  long agreement_valuation = 0;
};
FamilySpectralCheck family_fredholm_check(const Mat<FamilyElt>& Mw, const Weight& kappa);

/** Slope criterion: slope < 2*lambda - 1 guarantees classicality; the bound
 *  is one-directional, so everything else is indeterminate. */
enum class ClassicalityTag { CLASSICAL_GUARANTEED, INDETERMINATE };
struct ClassicalityEntry {
  mpq_class slope;
  ClassicalityTag tag;
};
struct ClassicalityReport {
  long lambda = 0;
  mpq_class bound;
  std::vector<ClassicalityEntry> entries;
};
ClassicalityReport classicality_report(const std::vector<mpq_class>& slopes, long lambda);

/** Growth diagnostic for v(c_k): a compact operator's coefficients must be
 *  eventually strictly increasing.  last_violation is the largest k with
 *  v(c_k) >= v(c_{k+1}) (-1 if none); strict growth is certified from
 *  tail_start on.  At-precision valuations are taken at face value. */
struct CompactnessDiagnostic {
  long last_violation = -1;
  long tail_start = 0;
};
CompactnessDiagnostic compactness_diagnostic(const FredholmSeries<PadicNum>& P);

/** Largest slope bound below which two ascending slope multisets agree
 *  (stability across basis depths); lists are sorted internally. */
mpq_class slope_agreement_cutoff(std::vector<mpq_class> a, std::vector<mpq_class> b);

}  // namespace halfint
