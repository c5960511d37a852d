#include "halfint/spectral.hpp"

#include <algorithm>
#include <optional>
#include <utility>

namespace halfint {

// --- Fredholm series ----------------------------------------------------------

template <class C>
FredholmSeries<C> fredholm_coeffs(const Mat<C>& M) {
  long d = M.n;
  if (d < 1) throw DomainError("fredholm: empty matrix");
  const C& proto = M.a[0];
  const C one = coeff_one(proto), zero = coeff_zero(proto);

  std::vector<C> cur = {one, zero - M.at(0, 0)};
  for (long r = 1; r < d; ++r) {
    std::vector<C> q((size_t)r + 2, zero);
    q[0] = one;
    q[1] = zero - M.at(r, r);
    std::vector<C> w((size_t)r, zero);
    for (long i = 0; i < r; ++i) w[(size_t)i] = M.at(i, r);
    for (long k = 2; k <= r + 1; ++k) {
      C dot = zero;
      for (long i = 0; i < r; ++i) dot = dot + M.at(r, i) * w[(size_t)i];
      q[(size_t)k] = zero - dot;
      if (k < r + 1) {
        std::vector<C> nw((size_t)r, zero);
        for (long i = 0; i < r; ++i) {
          C s = zero;
          for (long j = 0; j < r; ++j) s = s + M.at(i, j) * w[(size_t)j];
          nw[(size_t)i] = s;
        }
        w = std::move(nw);
      }
    }
    std::vector<C> nxt((size_t)r + 2, zero);
    for (long i = 0; i <= r + 1; ++i) {
      C s = zero;
      for (long j = std::max(0L, i - r - 1); j <= std::min(i, r); ++j)
        s = s + q[(size_t)(i - j)] * cur[(size_t)j];
      nxt[(size_t)i] = s;
    }
    cur = std::move(nxt);
  }
  return FredholmSeries<C>{std::move(cur)};
}

template FredholmSeries<mpq_class> fredholm_coeffs(const Mat<mpq_class>&);
template FredholmSeries<PadicNum> fredholm_coeffs(const Mat<PadicNum>&);
template FredholmSeries<FamilyElt> fredholm_coeffs(const Mat<FamilyElt>&);

// --- Newton polygon -----------------------------------------------------------

namespace {

// slope(a->b) >= slope(b->c), exact in integers
bool pops_hull(const std::pair<long, long>& a, const std::pair<long, long>& b,
               const std::pair<long, long>& c) {
  return (__int128)(b.second - a.second) * (c.first - b.first) >=
         (__int128)(c.second - b.second) * (b.first - a.first);
}

// strictly below the hull polyline at abscissa k (k within hull range)
bool below_hull(const std::vector<std::pair<long, long>>& hull, long k, long v) {
  for (size_t i = 0; i + 1 < hull.size(); ++i) {
    if (k < hull[i].first || k > hull[i + 1].first) continue;
    long x1 = hull[i].first, y1 = hull[i].second;
    long x2 = hull[i + 1].first, y2 = hull[i + 1].second;
    return (__int128)(v - y1) * (x2 - x1) < (__int128)(y2 - y1) * (k - x1);
  }
  return false;
}

}  // namespace

NewtonPolygon newton_polygon(const FredholmSeries<PadicNum>& P) {
  if (P.c.empty()) throw DomainError("newton_polygon: empty series");
  long deg = P.degree();
  NewtonPolygon np;
  std::vector<std::pair<long, long>> hull;
  for (long k = 0; k <= deg; ++k) {
    const PadicNum& c = P.c[(size_t)k];
    if (c.is_zero()) continue;
    std::pair<long, long> pt{k, c.valuation()};
    while (hull.size() >= 2 && pops_hull(hull[hull.size() - 2], hull.back(), pt)) hull.pop_back();
    hull.push_back(pt);
  }
  if (hull.empty() || hull[0].first != 0)
    throw DomainError("newton_polygon: constant term vanishes");
  np.vertices = hull;
  for (size_t i = 0; i + 1 < hull.size(); ++i) {
    mpq_class s(hull[i + 1].second - hull[i].second, hull[i + 1].first - hull[i].first);
    s.canonicalize();
    np.segments.push_back({s, hull[i + 1].first - hull[i].first});
  }
  long k_max = hull.back().first;
  for (long k = 0; k <= deg; ++k) {
    const PadicNum& c = P.c[(size_t)k];
    if (!c.is_zero()) continue;
    long bound = c.valuation();  // only a lower bound for the true valuation
    bool dips = false;
    if (k < k_max) {
      dips = below_hull(hull, k, bound);
    } else if (k > k_max && hull.size() >= 2) {
      // would the point absorb the last certified vertex?
      long x1 = hull[hull.size() - 2].first, y1 = hull[hull.size() - 2].second;
      long x2 = hull.back().first, y2 = hull.back().second;
      dips = (__int128)(bound - y2) * (x2 - x1) < (__int128)(y2 - y1) * (k - x2);
    }
    if (dips) {
      np.indeterminate = true;
      if (np.note.empty())
        np.note = "coefficient " + std::to_string(k) +
                  " vanishes at precision and could lower the hull";
    }
  }
  return np;
}

std::vector<mpq_class> slope_list(const NewtonPolygon& np) {
  std::vector<mpq_class> out;
  for (const auto& s : np.segments)
    for (long i = 0; i < s.mult; ++i) out.push_back(s.slope);
  return out;
}

// --- polynomial and matrix helpers --------------------------------------------

namespace {

using Poly = std::vector<PadicNum>;
using Col = std::vector<PadicNum>;

long val_of(const PadicNum& x) { return x.valuation(); }

Poly poly_mul(const Poly& a, const Poly& b) {
  const PadicNum z = coeff_zero(a[0]);
  Poly r(a.size() + b.size() - 1, z);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) r[i + j] = r[i + j] + a[i] * b[j];
  return r;
}

PadicNum poly_eval(const Poly& a, const PadicNum& x) {
  PadicNum r = a.back();
  for (size_t k = a.size() - 1; k-- > 0;) r = r * x + a[k];
  return r;
}

// a * b^{-1} mod T^len (b[0] must be a unit)
Poly series_div(const Poly& a, const Poly& b, long len) {
  const PadicNum z = coeff_zero(a[0]);
  PadicNum b0inv = b[0].inverse();
  Poly r((size_t)len, z);
  for (long n = 0; n < len; ++n) {
    PadicNum s = n < (long)a.size() ? a[(size_t)n] : z;
    for (long t = 1; t <= n && t < (long)b.size(); ++t) s = s - b[(size_t)t] * r[(size_t)(n - t)];
    r[(size_t)n] = s * b0inv;
  }
  return r;
}

/** Gaussian solve with full min-valuation pivoting; nullopt when singular at
 *  working precision. */
std::optional<Col> solve_square(Mat<PadicNum> A, Col b) {
  long n = A.n;
  std::vector<long> colperm((size_t)n);
  for (long i = 0; i < n; ++i) colperm[(size_t)i] = i;
  for (long step = 0; step < n; ++step) {
    long bi = -1, bj = -1, bv = std::numeric_limits<long>::max();
    for (long i = step; i < n; ++i)
      for (long j = step; j < n; ++j) {
        const PadicNum& x = A.at(i, j);
        if (!x.is_zero() && x.valuation() < bv) {
          bv = x.valuation();
          bi = i;
          bj = j;
        }
      }
    if (bi < 0) return std::nullopt;
    if (bi != step) {
      for (long j = 0; j < n; ++j) std::swap(A.at(step, j), A.at(bi, j));
      std::swap(b[(size_t)step], b[(size_t)bi]);
    }
    if (bj != step) {
      for (long i = 0; i < n; ++i) std::swap(A.at(i, step), A.at(i, bj));
      std::swap(colperm[(size_t)step], colperm[(size_t)bj]);
    }
    PadicNum pinv = A.at(step, step).inverse();
    for (long i = step + 1; i < n; ++i) {
      if (A.at(i, step).is_zero()) continue;
      PadicNum f = A.at(i, step) * pinv;
      for (long j = step; j < n; ++j) A.at(i, j) = A.at(i, j) - f * A.at(step, j);
      b[(size_t)i] = b[(size_t)i] - f * b[(size_t)step];
    }
  }
  Col y((size_t)n, coeff_zero(A.a[0]));
  for (long i = n - 1; i >= 0; --i) {
    PadicNum s = b[(size_t)i];
    for (long j = i + 1; j < n; ++j) s = s - A.at(i, j) * y[(size_t)j];
    y[(size_t)i] = s * A.at(i, i).inverse();
  }
  Col x((size_t)n, coeff_zero(A.a[0]));
  for (long i = 0; i < n; ++i) x[(size_t)colperm[(size_t)i]] = y[(size_t)i];
  return x;
}

Mat<PadicNum> mat_mul(const Mat<PadicNum>& a, const Mat<PadicNum>& b) {
  const PadicNum z = coeff_zero(a.a[0]);
  Mat<PadicNum> r(a.n, z);
  for (long i = 0; i < a.n; ++i)
    for (long k = 0; k < a.n; ++k) {
      const PadicNum& f = a.at(i, k);
      if (f.is_zero() && f.valuation() >= z.precision()) continue;
      for (long j = 0; j < a.n; ++j) r.at(i, j) = r.at(i, j) + f * b.at(k, j);
    }
  return r;
}

// poly(M) by Horner (poly ascending)
Mat<PadicNum> mat_poly(const Poly& c, const Mat<PadicNum>& M) {
  const PadicNum z = coeff_zero(M.a[0]);
  Mat<PadicNum> X(M.n, z);
  for (long i = 0; i < M.n; ++i) X.at(i, i) = c.back();
  for (size_t k = c.size() - 1; k-- > 0;) {
    X = mat_mul(X, M);
    for (long i = 0; i < M.n; ++i) X.at(i, i) = X.at(i, i) + c[k];
  }
  return X;
}

long mat_min_val(const Mat<PadicNum>& a) {
  long v = kTailExact;
  for (const PadicNum& x : a.a) v = std::min(v, val_of(x));
  return v;
}

bool mat_vanishes(const Mat<PadicNum>& a) {
  for (const PadicNum& x : a.a)
    if (!x.is_zero()) return false;
  return true;
}

Col mat_apply_cols(const Mat<PadicNum>& M, const Col& v) {
  const PadicNum z = coeff_zero(M.a[0]);
  Col r((size_t)M.n, z);
  for (long i = 0; i < M.n; ++i) {
    PadicNum s = z;
    for (long j = 0; j < M.n; ++j) s = s + M.at(i, j) * v[(size_t)j];
    r[(size_t)i] = s;
  }
  return r;
}

/** Solve basis * X = rhs for a full-column-rank d x r basis (each entry of
 *  `basis`/`rhs` is a d-long column); nullopt when the basis drops rank or
 *  the system is inconsistent at working precision. */
std::optional<Mat<PadicNum>> solve_in_span(const std::vector<Col>& basis,
                                           const std::vector<Col>& rhs) {
  long d = (long)basis[0].size();
  long r = (long)basis.size();
  long m = (long)rhs.size();
  const PadicNum z = coeff_zero(basis[0][0]);
  // augmented rows: [basis | rhs]
  std::vector<Col> rows((size_t)d, Col((size_t)(r + m), z));
  for (long i = 0; i < d; ++i) {
    for (long j = 0; j < r; ++j) rows[(size_t)i][(size_t)j] = basis[(size_t)j][(size_t)i];
    for (long j = 0; j < m; ++j) rows[(size_t)i][(size_t)(r + j)] = rhs[(size_t)j][(size_t)i];
  }
  std::vector<long> pivrow;
  for (long col = 0; col < r; ++col) {
    long bi = -1, bv = std::numeric_limits<long>::max();
    for (long i = 0; i < d; ++i) {
      if (std::find(pivrow.begin(), pivrow.end(), i) != pivrow.end()) continue;
      const PadicNum& x = rows[(size_t)i][(size_t)col];
      if (!x.is_zero() && x.valuation() < bv) {
        bv = x.valuation();
        bi = i;
      }
    }
    if (bi < 0) return std::nullopt;
    PadicNum pinv = rows[(size_t)bi][(size_t)col].inverse();
    for (long j = 0; j < r + m; ++j)
      rows[(size_t)bi][(size_t)j] = rows[(size_t)bi][(size_t)j] * pinv;
    for (long i = 0; i < d; ++i) {
      if (i == bi) continue;
      const PadicNum& f = rows[(size_t)i][(size_t)col];
      if (f.is_zero()) continue;
      PadicNum fc = f;
      for (long j = 0; j < r + m; ++j)
        rows[(size_t)i][(size_t)j] = rows[(size_t)i][(size_t)j] - fc * rows[(size_t)bi][(size_t)j];
    }
    pivrow.push_back(bi);
  }
  // consistency: non-pivot rows must carry no rhs mass at precision
  for (long i = 0; i < d; ++i) {
    if (std::find(pivrow.begin(), pivrow.end(), i) != pivrow.end()) continue;
    for (long j = 0; j < m; ++j)
      if (!rows[(size_t)i][(size_t)(r + j)].is_zero()) return std::nullopt;
  }
  Mat<PadicNum> X(r, z);
  for (long col = 0; col < r; ++col)
    for (long j = 0; j < m; ++j) X.at(col, j) = rows[(size_t)pivrow[(size_t)col]][(size_t)(r + j)];
  return X;
}

/** One kernel vector of A at working precision (free column set to 1);
 *  nullopt when A is invertible at precision. */
std::optional<Col> kernel_vector(Mat<PadicNum> A) {
  long n = A.n;
  const PadicNum z = coeff_zero(A.a[0]);
  std::vector<long> colperm((size_t)n);
  for (long i = 0; i < n; ++i) colperm[(size_t)i] = i;
  long rank = 0;
  for (long step = 0; step < n; ++step) {
    long bi = -1, bj = -1, bv = std::numeric_limits<long>::max();
    for (long i = step; i < n; ++i)
      for (long j = step; j < n; ++j) {
        const PadicNum& x = A.at(i, j);
        if (!x.is_zero() && x.valuation() < bv) {
          bv = x.valuation();
          bi = i;
          bj = j;
        }
      }
    if (bi < 0) break;
    if (bi != step)
      for (long j = 0; j < n; ++j) std::swap(A.at(step, j), A.at(bi, j));
    if (bj != step) {
      for (long i = 0; i < n; ++i) std::swap(A.at(i, step), A.at(i, bj));
      std::swap(colperm[(size_t)step], colperm[(size_t)bj]);
    }
    PadicNum pinv = A.at(step, step).inverse();
    for (long i = step + 1; i < n; ++i) {
      if (A.at(i, step).is_zero()) continue;
      PadicNum f = A.at(i, step) * pinv;
      for (long j = step; j < n; ++j) A.at(i, j) = A.at(i, j) - f * A.at(step, j);
    }
    rank = step + 1;
  }
  if (rank == n) return std::nullopt;
  Col y((size_t)n, z);
  y[(size_t)rank] = coeff_one(z);
  for (long i = rank - 1; i >= 0; --i) {
    PadicNum s = z;
    for (long j = i + 1; j <= rank; ++j) s = s - A.at(i, j) * y[(size_t)j];
    y[(size_t)i] = s * A.at(i, i).inverse();
  }
  Col x((size_t)n, z);
  for (long i = 0; i < n; ++i) x[(size_t)colperm[(size_t)i]] = y[(size_t)i];
  return x;
}

}  // namespace

// --- slope factorization -------------------------------------------------------

SlopeFactorization slope_factor(const FredholmSeries<PadicNum>& P, const mpq_class& h) {
  long deg = P.degree();
  if (P.c.empty() || P.c[0].is_zero()) throw DomainError("slope_factor: bad constant term");

  // The slope-<=h mass ends where the supporting line of slope h touches the
  // polygon: dQ = largest k minimizing v(c_k) - h k over certified points.
  mpq_class mstar;
  long dQ = -1;
  for (long k = 0; k <= deg; ++k) {
    const PadicNum& c = P.c[(size_t)k];
    if (c.is_zero()) continue;
    mpq_class val = mpq_class(c.valuation()) - h * k;
    if (dQ < 0 || val < mstar) {
      mstar = val;
      dQ = k;
    } else if (val == mstar) {
      dQ = k;
    }
  }

  // an at-precision coefficient whose bound reaches the support could move the cut
  for (long k = 0; k <= deg; ++k) {
    const PadicNum& c = P.c[(size_t)k];
    if (!c.is_zero()) continue;
    mpq_class bound = mpq_class(c.valuation()) - h * k;
    if (bound < mstar || (bound == mstar && k > dQ))
      throw IndeterminateVertex("slope_factor: coefficient " + std::to_string(k) +
                                " vanishes at precision and could move the separating vertex");
  }

  const PadicNum one = coeff_one(P.c[0]);
  if (dQ == 0) return {{one}, P.c, kTailExact};
  if (dQ >= deg) return {P.c, {one}, kTailExact};

  Poly Q(P.c.begin(), P.c.begin() + dQ + 1);
  long dR = deg - dQ;
  Poly R = series_div(P.c, Q, dR + 1);

  long best = std::numeric_limits<long>::min();
  for (long iter = 0; iter < 64; ++iter) {
    Poly QR = poly_mul(Q, R);
    Poly E((size_t)deg + 1, coeff_zero(one));
    bool done = true;
    long resval = kTailExact;
    for (long k = 0; k <= deg; ++k) {
      E[(size_t)k] = P.c[(size_t)k] - QR[(size_t)k];
      if (!E[(size_t)k].is_zero()) done = false;
      resval = std::min(resval, val_of(E[(size_t)k]));
    }
    if (done) return {Q, R, resval};
    if (iter > 0 && resval <= best)
      throw NonConvergence("slope_factor: stalled at residual valuation " +
                           std::to_string(resval));
    best = resval;

    long n = deg;
    Mat<PadicNum> A(n, coeff_zero(one));
    Col rhs((size_t)n, coeff_zero(one));
    for (long m = 1; m <= deg; ++m) {
      for (long j = 1; j <= dQ; ++j)
        if (m - j >= 0 && m - j <= dR) A.at(m - 1, j - 1) = R[(size_t)(m - j)];
      for (long j = 1; j <= dR; ++j)
        if (m - j >= 0 && m - j <= dQ) A.at(m - 1, dQ + j - 1) = Q[(size_t)(m - j)];
      rhs[(size_t)(m - 1)] = E[(size_t)m];
    }
    auto x = solve_square(std::move(A), std::move(rhs));
    if (!x) {
      if (iter == 0)
        throw NoSlopeGap("slope_factor: bound " + h.get_str() +
                         " does not separate the spectrum at working precision");
      throw NonConvergence("slope_factor: linearization went singular at residual valuation " +
                           std::to_string(resval));
    }
    for (long j = 1; j <= dQ; ++j) Q[(size_t)j] = Q[(size_t)j] + (*x)[(size_t)(j - 1)];
    for (long j = 1; j <= dR; ++j) R[(size_t)j] = R[(size_t)j] + (*x)[(size_t)(dQ + j - 1)];
  }
  throw NonConvergence("slope_factor: iteration cap reached");
}

// --- Riesz decomposition --------------------------------------------------------

LocalPiece riesz_decompose(const Mat<PadicNum>& M, const std::vector<PadicNum>& Qin) {
  long d = M.n;
  if (d < 1) throw DomainError("riesz: empty matrix");
  const PadicNum z = coeff_zero(M.a[0]);
  const PadicNum one = coeff_one(M.a[0]);

  Poly Q = Qin;
  if (Q.empty()) throw DomainError("riesz: empty factor");
  if (Q.size() > 1 && Q.back().is_zero())
    throw PrecisionExhausted("riesz: top coefficient of Q vanishes at precision");
  long dQ = (long)Q.size() - 1;

  FredholmSeries<PadicNum> P = fredholm_coeffs(M);
  long dR = P.degree() - dQ;
  if (dR < 0) throw DomainError("riesz: deg Q exceeds the matrix dimension");
  Poly R = series_div(P.c, Q, dR + 1);
  {
    Poly QR = poly_mul(Q, R);
    for (long k = 0; k <= P.degree(); ++k)
      if (!(P.c[(size_t)k] - QR[(size_t)k]).is_zero())
        throw BezoutFailure("riesz: Q does not divide the Fredholm series at precision");
  }

  LocalPiece piece;
  piece.Q = Q;
  piece.R = R;
  piece.rank = dQ;

  // reversed polynomials
  Poly qs((size_t)dQ + 1, z), rs((size_t)dR + 1, z);
  for (long k = 0; k <= dQ; ++k) qs[(size_t)k] = Q[(size_t)(dQ - k)];
  for (long k = 0; k <= dR; ++k) rs[(size_t)k] = R[(size_t)(dR - k)];

  if (dR == 0) {
    piece.projector = Mat<PadicNum>(d, z);
    for (long i = 0; i < d; ++i) piece.projector.at(i, i) = one;
  } else {
    // Bezout a Q* + b R* = 1, deg a < dR, deg b < dQ
    long n = dQ + dR;
    Mat<PadicNum> A(n, z);
    Col rhs((size_t)n, z);
    rhs[0] = one;
    for (long m = 0; m < n; ++m) {
      for (long j = 0; j < dR; ++j)
        if (m - j >= 0 && m - j <= dQ) A.at(m, j) = qs[(size_t)(m - j)];
      for (long j = 0; j < dQ; ++j)
        if (m - j >= 0 && m - j <= dR) A.at(m, dR + j) = rs[(size_t)(m - j)];
    }
    auto ab = solve_square(std::move(A), std::move(rhs));
    if (!ab) throw BezoutFailure("riesz: gcd(Q*, R*) is not a unit at working precision");
    Poly b(ab->begin() + dR, ab->end());
    piece.projector = mat_mul(mat_poly(b, M), mat_poly(rs, M));
  }
  const Mat<PadicNum>& e = piece.projector;

  // contract: e^2 = e, eM = Me, trace e = deg Q (all at working precision)
  {
    Mat<PadicNum> e2 = mat_mul(e, e);
    for (long i = 0; i < d * d; ++i) e2.a[(size_t)i] = e2.a[(size_t)i] - e.a[(size_t)i];
    if (!mat_vanishes(e2))
      throw PrecisionExhausted("riesz: projector contract e^2 = e fails at precision");
    Mat<PadicNum> em = mat_mul(e, M), me = mat_mul(M, e);
    for (long i = 0; i < d * d; ++i) em.a[(size_t)i] = em.a[(size_t)i] - me.a[(size_t)i];
    if (!mat_vanishes(em))
      throw PrecisionExhausted("riesz: projector does not commute with the operator");
    PadicNum tr = z;
    for (long i = 0; i < d; ++i) tr = tr + e.at(i, i);
    PadicNum drift = tr - PadicNum::from_integer(mpz_class(dQ), z.prime(), z.precision());
    if (!drift.is_zero())
      throw PrecisionExhausted("riesz: trace of the projector drifts from deg Q");
  }

  // independent columns of e by row echelon
  {
    Mat<PadicNum> W = e;
    long r = 0;
    for (long col = 0; col < d && r < dQ; ++col) {
      long bi = -1, bv = std::numeric_limits<long>::max();
      for (long i = r; i < d; ++i) {
        const PadicNum& x = W.at(i, col);
        if (!x.is_zero() && x.valuation() < bv) {
          bv = x.valuation();
          bi = i;
        }
      }
      if (bi < 0) continue;
      if (bi != r)
        for (long j = 0; j < d; ++j) std::swap(W.at(r, j), W.at(bi, j));
      PadicNum pinv = W.at(r, col).inverse();
      for (long i = r + 1; i < d; ++i) {
        if (W.at(i, col).is_zero()) continue;
        PadicNum f = W.at(i, col) * pinv;
        for (long j = col; j < d; ++j) W.at(i, j) = W.at(i, j) - f * W.at(r, j);
      }
      piece.basis_cols.push_back(col);
      ++r;
    }
    if (r < dQ) throw PrecisionExhausted("riesz: projector rank below deg Q at precision");
  }
  for (long col : piece.basis_cols) {
    Col v((size_t)d, z);
    for (long i = 0; i < d; ++i) v[(size_t)i] = e.at(i, col);
    piece.n_basis.push_back(std::move(v));
  }

  // restriction of M to the image
  std::vector<Col> mcols;
  for (const Col& v : piece.n_basis) mcols.push_back(mat_apply_cols(M, v));
  auto X = solve_in_span(piece.n_basis, mcols);
  if (!X) throw PrecisionExhausted("riesz: operator does not stabilize the image at precision");
  piece.restricted = std::move(*X);
  piece.restricted_charpoly = fredholm_coeffs(piece.restricted).c;
  return piece;
}

// --- local Hecke algebra ---------------------------------------------------------

namespace {

/** Unit reciprocal root of Q at an integer slope s of multiplicity one:
 *  substitute T-root x = p^s y into Q*(x), normalize to unit content, find
 *  the simple unit root mod p and Hensel-lift it. */
std::optional<PadicNum> reciprocal_root_at_slope(const Poly& Q, long s) {
  long dQ = (long)Q.size() - 1;
  long p = Q[0].prime();
  long pad = Q[0].precision() + std::abs(s) * dQ + 4;
  Poly g((size_t)dQ + 1, PadicNum::zero(p, pad));
  long mu = std::numeric_limits<long>::max();
  for (long k = 0; k <= dQ; ++k) {
    g[(size_t)k] = Q[(size_t)(dQ - k)] * PadicNum::from_parts(mpz_class(1), s * k, p, pad);
    if (!g[(size_t)k].is_zero()) mu = std::min(mu, g[(size_t)k].valuation());
  }
  if (mu == std::numeric_limits<long>::max()) return std::nullopt;
  PadicNum shift = PadicNum::from_parts(mpz_class(1), -mu, p, pad);
  for (auto& c : g) c = c * shift;

  // simple unit root mod p
  long y0 = -1;
  for (long y = 1; y < p; ++y) {
    long f = 0, fd = 0;
    for (long k = dQ; k >= 0; --k) {
      long ck = g[(size_t)k].valuation() > 0 ? 0 : g[(size_t)k].residue(1).get_si();
      f = (f * y + ck) % p;
      if (k > 0) fd = (fd * y + ck * k) % p;
    }
    if (f % p == 0) {
      if (fd % p == 0 || y0 >= 0) return std::nullopt;  // not simple, or ambiguous
      y0 = y;
    }
  }
  if (y0 < 0) return std::nullopt;

  Poly gd((size_t)dQ, PadicNum::zero(p, pad));
  for (long k = 1; k <= dQ; ++k)
    gd[(size_t)(k - 1)] = g[(size_t)k] * PadicNum::from_integer(mpz_class(k), p, pad);
  PadicNum y = PadicNum::from_integer(mpz_class(y0), p, Q[0].precision());
  for (long it = 0; it < 64; ++it) {
    PadicNum fy = poly_eval(g, y);
    if (fy.is_zero()) break;
    y = y - fy * poly_eval(gd, y).inverse();
  }
  if (!poly_eval(g, y).is_zero()) return std::nullopt;
  return y * PadicNum::from_parts(mpz_class(1), s, p, pad);
}

}  // namespace

LocalPiece local_hecke_algebra(LocalPiece piece, const Mat<PadicNum>& M,
                               const std::vector<Mat<PadicNum>>& gens, long tolerance) {
  piece.gen_restricted.clear();
  piece.gen_charpoly.clear();
  piece.commutator_valuations.clear();
  piece.packets.clear();

  for (size_t gi = 0; gi < gens.size(); ++gi) {
    const Mat<PadicNum>& g = gens[gi];
    Mat<PadicNum> comm = mat_mul(g, M);
    Mat<PadicNum> mg = mat_mul(M, g);
    for (size_t i = 0; i < comm.a.size(); ++i) comm.a[i] = comm.a[i] - mg.a[i];
    long cv = mat_min_val(comm);
    if (cv < tolerance)
      throw NonCommuting("generator " + std::to_string(gi) +
                         " commutes with the operator only to valuation " + std::to_string(cv));
    std::vector<Col> gcols;
    for (const Col& v : piece.n_basis) gcols.push_back(mat_apply_cols(g, v));
    auto X = solve_in_span(piece.n_basis, gcols);
    if (!X)
      throw NonCommuting("generator " + std::to_string(gi) +
                         " does not stabilize the finite-slope piece at precision");
    piece.gen_charpoly.push_back(fredholm_coeffs(*X).c);
    piece.gen_restricted.push_back(std::move(*X));
  }

  std::vector<const Mat<PadicNum>*> all = {&piece.restricted};
  for (const auto& a : piece.gen_restricted) all.push_back(&a);
  for (size_t i = 0; i < all.size(); ++i)
    for (size_t j = i + 1; j < all.size(); ++j) {
      Mat<PadicNum> ab = mat_mul(*all[i], *all[j]);
      Mat<PadicNum> ba = mat_mul(*all[j], *all[i]);
      for (size_t t = 0; t < ab.a.size(); ++t) ab.a[t] = ab.a[t] - ba.a[t];
      long cv = mat_min_val(ab);
      piece.commutator_valuations.push_back(cv);
      if (cv < tolerance)
        throw NonCommuting("restricted generators " + std::to_string(i) + "," +
                           std::to_string(j) + " commute only to valuation " +
                           std::to_string(cv));
    }

  NewtonPolygon qnp = newton_polygon(FredholmSeries<PadicNum>{piece.Q});
  const PadicNum z = coeff_zero(piece.Q[0]);
  for (const auto& seg : qnp.segments) {
    if (seg.mult != 1 || seg.slope.get_den() != 1) continue;
    long s = seg.slope.get_num().get_si();
    auto alpha = reciprocal_root_at_slope(piece.Q, s);
    if (!alpha) continue;
    Mat<PadicNum> shifted = piece.restricted;
    for (long i = 0; i < shifted.n; ++i) shifted.at(i, i) = shifted.at(i, i) - *alpha;
    auto v = kernel_vector(std::move(shifted));
    if (!v) continue;
    long bk = -1, bv = std::numeric_limits<long>::max();
    for (size_t i = 0; i < v->size(); ++i)
      if (!(*v)[i].is_zero() && (*v)[i].valuation() < bv) {
        bv = (*v)[i].valuation();
        bk = (long)i;
      }
    if (bk < 0) continue;
    PadicNum vk_inv = (*v)[(size_t)bk].inverse();

    auto eigen_of = [&](const Mat<PadicNum>& A, PadicNum& out) {
      Col w = mat_apply_cols(A, *v);
      out = w[(size_t)bk] * vk_inv;
      for (size_t i = 0; i < w.size(); ++i)
        if (val_of(w[i] - out * (*v)[i]) < tolerance) return false;
      return true;
    };
    PadicNum check = z;
    if (!eigen_of(piece.restricted, check)) continue;
    if (val_of(check - *alpha) < tolerance) continue;
    EigenPacket pk;
    pk.slope = seg.slope;
    pk.alpha = *alpha;
    bool ok = true;
    for (const auto& A : piece.gen_restricted) {
      PadicNum mu = z;
      if (!eigen_of(A, mu)) {
        ok = false;
        break;
      }
      pk.hecke_eigenvalues.push_back(mu);
    }
    if (ok) piece.packets.push_back(std::move(pk));
  }
  return piece;
}

// --- families --------------------------------------------------------------------

Mat<PadicNum> specialize_matrix(const Mat<FamilyElt>& Mw, const Weight& kappa) {
  if (Mw.n < 1) throw DomainError("specialize_matrix: empty matrix");
  Mat<PadicNum> r(Mw.n, Mw.a[0].values()[0]);
  for (size_t i = 0; i < Mw.a.size(); ++i) r.a[i] = Mw.a[i].specialize(kappa);
  return r;
}

FredholmSeries<PadicNum> specialize_series(const FredholmSeries<FamilyElt>& P,
                                           const Weight& kappa) {
  FredholmSeries<PadicNum> r;
  r.c.reserve(P.c.size());
  for (const auto& c : P.c) r.c.push_back(c.specialize(kappa));
  return r;
}

FamilySpectralCheck family_fredholm_check(const Mat<FamilyElt>& Mw, const Weight& kappa) {
  FamilySpectralCheck out;
  out.specialized = specialize_series(fredholm_coeffs(Mw), kappa).c;
  out.recomputed = fredholm_coeffs(specialize_matrix(Mw, kappa)).c;
  long v = kTailExact;
  for (size_t k = 0; k < out.specialized.size(); ++k)
    v = std::min(v, val_of(out.specialized[k] - out.recomputed[k]));
  out.agreement_valuation = v;
  return out;
}

// --- reports ----------------------------------------------------------------------

ClassicalityReport classicality_report(const std::vector<mpq_class>& slopes, long lambda) {
  ClassicalityReport r;
  r.lambda = lambda;
  r.bound = mpq_class(2 * lambda - 1);
  for (const auto& s : slopes)
    r.entries.push_back({s, s < r.bound ? ClassicalityTag::CLASSICAL_GUARANTEED
                                        : ClassicalityTag::INDETERMINATE});
  return r;
}

CompactnessDiagnostic compactness_diagnostic(const FredholmSeries<PadicNum>& P) {
  CompactnessDiagnostic d;
  for (long k = 0; k + 1 <= P.degree(); ++k)
    if (val_of(P.c[(size_t)k]) >= val_of(P.c[(size_t)(k + 1)])) d.last_violation = k;
  d.tail_start = d.last_violation + 1;
  return d;
}

mpq_class slope_agreement_cutoff(std::vector<mpq_class> a, std::vector<mpq_class> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  size_t i = 0;
  while (i < a.size() && i < b.size() && a[i] == b[i]) ++i;
  if (i < a.size() && i < b.size()) return std::min(a[i], b[i]);
  if (i < a.size()) return a[i];
  if (i < b.size()) return b[i];
  if (a.empty()) return mpq_class(0);
  return a.back() + 1;
}

}  // namespace halfint
