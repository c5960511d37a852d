// End-to-end acceptance checks for the half-integral overconvergent stack.
// Each criterion prints exactly one PASS/FAIL line; the exit code is the
// number of failures.  Tolerances and budgets are pinned in the code below.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <halfint/basis.hpp>
#include <halfint/cyclotomic.hpp>
#include <halfint/eis_theta.hpp>
#include <halfint/errors.hpp>
#include <halfint/forms.hpp>
#include <halfint/spectral.hpp>
#include <halfint/tate_oracle.hpp>

using namespace halfint;

namespace {

struct Criterion {
  int id;
  std::string title;
  double budget_sec;
  std::function<void(std::ostringstream&)> run;  // throws or appends "detail" on failure
};

struct Failure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void require(bool ok, const std::string& what) {
  if (!ok) throw Failure(what);
}

long legendre(long n, long ell) {
  mpz_class nz(n), lz(ell);
  return mpz_legendre(nz.get_mpz_t(), lz.get_mpz_t());
}

// ---- criterion 1: theta is a Hecke eigenform ---------------------------------

void crit_theta_eigensystem(std::ostringstream&) {
  const long prec = 200;
  for (long ell : {3L, 5L, 7L, 11L, 13L}) {
    long p = ell == 5 ? 3 : 5;
    auto F = theta_form(p, prec * ell * ell);
    auto TF = hecke_t(F, ell);
    mpq_class eigen = mpq_class(1) + mpq_class(1, ell);
    auto expect = theta_qexp(prec) * eigen;
    require(TF.qexp.N() >= prec, "T image too short at ell=" + std::to_string(ell));
    for (long n = 0; n < prec; ++n)
      require(TF.qexp.a[(size_t)n] == expect.a[(size_t)n],
              "T_{ell^2} theta eigenvalue fails at ell=" + std::to_string(ell) +
                  ", q^" + std::to_string(n));
  }
  for (long p : {3L, 7L}) {
    auto F = theta_form(p, prec * p * p);
    auto UF = hecke_u(F, p);
    auto th = theta_qexp(prec);
    for (long n = 0; n < prec; ++n)
      require(UF.qexp.a[(size_t)n] == th.a[(size_t)n],
              "U_{p^2} theta != theta at p=" + std::to_string(p));
    require(UF.r >= F.r, "U must not shrink the overconvergence radius");
  }
  {
    auto F = theta_form(5, prec * 25);
    auto UF = hecke_u(F, 5);
    auto th = theta_qexp(prec);
    for (long n = 0; n < prec; ++n)
      require(UF.qexp.a[(size_t)n] == th.a[(size_t)n], "U_{25} theta != theta at p=5");
  }
}

// ---- criterion 2: quotient-orbit recomputation of Hecke ----------------------

void crit_oracle_agreement(std::ostringstream&) {
  const long prec = 40;
  auto check_t = [&](const HalfIntForm<mpq_class>& F, long ell, const char* name) {
    auto direct = hecke_t(F, ell);
    auto oracle = hecke_t_oracle(F, ell, prec);
    for (long n = 0; n < prec; ++n)
      require(oracle.a[(size_t)n] == direct.qexp.a[(size_t)n],
              std::string(name) + ": orbit sum differs from the coefficient formula at ell=" +
                  std::to_string(ell) + ", q^" + std::to_string(n));
  };
  for (long ell : {3L, 5L}) {
    long p = ell == 3 ? 5 : 3;
    long S = prec * ell * ell;
    auto th = theta_qexp(S);
    check_t(theta_form(p, S), ell, "theta");
    check_t(make_form(Weight::arithmetic(p, 0), 4, TameCharacter::trivial(), th * th * th), ell,
            "theta^3");
    Weight k4 = Weight::arithmetic(p, 4);
    check_t(make_form(k4, 4, TameCharacter::trivial(), theta_eis_product(k4, S)), ell,
            "theta*E4");
  }
  for (long p : {3L, 5L}) {
    auto F = theta_form(p, prec * p * p);
    auto direct = hecke_u(F, p);
    auto oracle = hecke_u_oracle(F, p, prec);
    for (long n = 0; n < prec; ++n)
      require(oracle.a[(size_t)n] == direct.qexp.a[(size_t)n],
              "U orbit sum differs at p=" + std::to_string(p));
  }
}

// ---- criterion 3: gauss sum identities ----------------------------------------

void crit_gauss_sums(std::ostringstream&) {
  for (long ell : {3L, 5L, 7L}) {
    auto g = gauss_sum(ell, 1);
    auto g2 = g * g;
    long sign = ell % 4 == 1 ? 1 : -1;
    require(g2 == CycloElt(ell, mpq_class(sign * ell)),
            "gauss sum square != (-1/ell) ell at ell=" + std::to_string(ell));
    for (long n = 0; n < ell * ell; ++n)
      require(gauss_sum(ell, n) == g * CycloElt(ell, mpq_class(legendre(n, ell))),
              "quadratic filter fails at ell=" + std::to_string(ell) + ", n=" +
                  std::to_string(n));
  }
}

// ---- criterion 4: eisenstein constants and family interpolation ---------------

void crit_eisenstein_family(std::ostringstream&) {
  struct Row {
    long p, lambda;
    mpq_class a1;
  };
  for (const Row& row : {Row{5, 4, mpq_class(-60, 31)}, Row{7, 6, mpq_class(84, 2801)},
                         Row{3, 2, mpq_class(12)}}) {
    auto E = eisenstein_rational(row.p, row.lambda, 5);
    require(E.a[0] == 1, "E normalization broken");
    require(E.a[1] == row.a1, "E a_1 != 2/zeta_p at p=" + std::to_string(row.p));
    mpz_class euler;
    mpz_ui_pow_ui(euler.get_mpz_t(), (unsigned long)row.p, (unsigned long)(row.lambda - 1));
    mpq_class zeta = (1 - mpq_class(euler)) * (-bernoulli_number(row.lambda) / row.lambda);
    require(E.a[1] == 2 / zeta, "E a_1 disagrees with the Bernoulli route");
  }

  const long M = 20, N = 12;
  auto frame = make_family_frame(5, M, 4, 8, 2);
  auto fam = eisenstein_family(frame, N);
  Weight held_out = Weight::arithmetic(5, 904);  // off the interpolation nodes
  auto direct = eisenstein_padic(held_out, N, M);
  for (long n = 0; n < N; ++n) {
    PadicNum diff = fam.a[(size_t)n].specialize(held_out) - direct.a[(size_t)n];
    require(diff.is_zero() || diff.valuation() >= M - 2,
            "family specialization off by more than p^-(M-2) at q^" + std::to_string(n));
  }
}

// ---- criterion 5: planted spectrum recovery ------------------------------------

std::vector<mpz_class> expand_roots(const std::vector<mpz_class>& d) {
  std::vector<mpz_class> c{1};
  for (const auto& x : d) {
    std::vector<mpz_class> n(c.size() + 1, mpz_class(0));
    for (size_t i = 0; i < c.size(); ++i) {
      n[i] += c[i];
      n[i + 1] -= c[i] * x;
    }
    c = std::move(n);
  }
  return c;
}

void crit_planted_spectrum(std::ostringstream&) {
  const long p = 5, M = 30, dim = 6;
  const std::vector<long> slopes{0, 1, 1, 3, 5, 8};
  std::mt19937 rng(20260814);
  auto rnd = [&](long lo, long hi) { return lo + (long)(rng() % (unsigned long)(hi - lo + 1)); };

  std::vector<mpz_class> d;
  for (long s : slopes) {
    long u = rnd(1, 600);
    while (u % p == 0) u = rnd(1, 600);
    mpz_class e(u);
    for (long i = 0; i < s; ++i) e *= p;
    d.push_back(e);
  }

  // unimodular conjugation S = L U with unipotent triangular integer factors
  std::vector<std::vector<mpz_class>> L((size_t)dim, std::vector<mpz_class>((size_t)dim, 0)),
      U = L, Li = L, Ui = L;
  for (long i = 0; i < dim; ++i) {
    L[(size_t)i][(size_t)i] = U[(size_t)i][(size_t)i] = 1;
    for (long j = 0; j < i; ++j) L[(size_t)i][(size_t)j] = rnd(-2, 2);
    for (long j = i + 1; j < dim; ++j) U[(size_t)i][(size_t)j] = rnd(-2, 2);
  }
  auto mul = [&](const auto& A, const auto& B) {
    std::vector<std::vector<mpz_class>> C((size_t)dim, std::vector<mpz_class>((size_t)dim, 0));
    for (long i = 0; i < dim; ++i)
      for (long k = 0; k < dim; ++k)
        for (long j = 0; j < dim; ++j) C[(size_t)i][(size_t)j] += A[(size_t)i][(size_t)k] * B[(size_t)k][(size_t)j];
    return C;
  };
  auto invert_unipotent = [&](const std::vector<std::vector<mpz_class>>& A) {
    // Neumann series terminates for nilpotent N = A - I
    std::vector<std::vector<mpz_class>> N((size_t)dim, std::vector<mpz_class>((size_t)dim, 0)),
        term = N, inv = N;
    for (long i = 0; i < dim; ++i) {
      inv[(size_t)i][(size_t)i] = term[(size_t)i][(size_t)i] = 1;
      for (long j = 0; j < dim; ++j)
        if (i != j) N[(size_t)i][(size_t)j] = A[(size_t)i][(size_t)j];
    }
    for (long k = 1; k < dim; ++k) {
      term = mul(term, N);
      for (long i = 0; i < dim; ++i)
        for (long j = 0; j < dim; ++j)
          inv[(size_t)i][(size_t)j] += (k % 2 ? -1 : 1) * term[(size_t)i][(size_t)j];
    }
    return inv;
  };
  Li = invert_unipotent(L);
  Ui = invert_unipotent(U);
  auto S = mul(L, U), Si = mul(Ui, Li);
  std::vector<std::vector<mpz_class>> D((size_t)dim, std::vector<mpz_class>((size_t)dim, 0));
  for (long i = 0; i < dim; ++i) D[(size_t)i][(size_t)i] = d[(size_t)i];
  auto A = mul(mul(S, D), Si);

  Mat<PadicNum> Mp(dim, PadicNum::zero(p, M));
  Mat<mpq_class> Mq(dim, mpq_class(0));
  for (long i = 0; i < dim; ++i)
    for (long j = 0; j < dim; ++j) {
      Mp.at(i, j) = PadicNum::from_integer(A[(size_t)i][(size_t)j], p, M);
      Mq.at(i, j) = mpq_class(A[(size_t)i][(size_t)j]);
    }

  // Fredholm coefficients against the exact elementary-symmetric oracle
  auto expect = expand_roots(d);
  auto Pq = fredholm_coeffs(Mq);
  auto Pp = fredholm_coeffs(Mp);
  for (long k = 0; k <= dim; ++k) {
    require(Pq.c[(size_t)k] == mpq_class(expect[(size_t)k]),
            "rational fredholm coefficient " + std::to_string(k) + " off");
    PadicNum diff = Pp.c[(size_t)k] - PadicNum::from_integer(expect[(size_t)k], p, M);
    require(diff.is_zero(), "p-adic fredholm coefficient " + std::to_string(k) + " off");
  }

  // slope factor at h=1 recovers the planted low-slope factor mod p^(M-5)
  auto F = slope_factor(Pp, 1);
  std::vector<mpz_class> low{d[0], d[1], d[2]};
  auto lowpoly = expand_roots(low);
  require((long)F.Q.size() == 4, "low-slope factor has wrong degree");
  for (long k = 0; k < 4; ++k) {
    PadicNum diff = F.Q[(size_t)k] - PadicNum::from_integer(lowpoly[(size_t)k], p, M);
    require(diff.is_zero() || diff.valuation() >= M - 5,
            "planted factor coefficient " + std::to_string(k) + " recovered below p^(M-5)");
  }

  // Riesz projector contract (e^2=e, commuting, trace) is asserted inside
  auto piece = riesz_decompose(Mp, F.Q);
  require(piece.rank == 3, "projector rank != deg Q");
  for (long k = 0; k < 4; ++k) {
    PadicNum diff = piece.restricted_charpoly[(size_t)k] - F.Q[(size_t)k];
    require(diff.is_zero() || diff.valuation() >= M - 5,
            "restricted characteristic series strays from Q at coefficient " +
                std::to_string(k));
  }
}

// ---- criterion 6: classicality table -------------------------------------------

void crit_classicality(std::ostringstream&) {
  auto rep = classicality_report({0, 1, 3, mpq_class(7, 2), 5}, 2);
  require(rep.bound == 3, "bound != 2*lambda - 1");
  std::vector<ClassicalityTag> want{
      ClassicalityTag::CLASSICAL_GUARANTEED, ClassicalityTag::CLASSICAL_GUARANTEED,
      ClassicalityTag::INDETERMINATE, ClassicalityTag::INDETERMINATE,
      ClassicalityTag::INDETERMINATE};
  for (size_t i = 0; i < want.size(); ++i)
    require(rep.entries[i].tag == want[i], "tag mismatch at slope index " + std::to_string(i));
  require(rep.entries[2].tag == ClassicalityTag::INDETERMINATE,
          "boundary slope must stay indeterminate");
  auto zero = classicality_report({0}, 0);
  require(zero.entries[0].tag == ClassicalityTag::INDETERMINATE,
          "weight-zero slopes cannot be certified classical");
}

// ---- criterion 7: slope stability across ladder depth --------------------------

void crit_slope_stability(std::ostringstream& detail) {
  const long p = 5, Nq = 400, M = 20;
  // the span is U-stable modulo tails divisible by p
  const long tail_tolerance = 1;
  Weight kappa = Weight::arithmetic(p, 0);
  auto slopes_at = [&](long J) {
    auto B = katz_approx_basis(kappa, J, Nq, M);
    auto U = matrix_of_operator<PadicNum>(
        B, [&](const HalfIntForm<PadicNum>& f) { return hecke_u(f, p); }, tail_tolerance);
    auto P = fredholm_coeffs(U.mat);
    return slope_list(newton_polygon(P));
  };
  auto s3 = slopes_at(3);
  auto s4 = slopes_at(4);
  mpq_class cutoff = slope_agreement_cutoff(s3, s4);
  {
    std::ostringstream os;
    os << "cutoff " << cutoff.get_str() << "; J=3 slopes:";
    for (size_t i = 0; i < s3.size() && i < 8; ++i) os << ' ' << s3[i].get_str();
    detail << os.str();
  }
  require(cutoff >= 1, "slope multisets disagree already below 1");
  long zeros3 = 0, zeros4 = 0;
  for (const auto& s : s3) zeros3 += s == 0;
  for (const auto& s : s4) zeros4 += s == 0;
  require(zeros3 >= 1 && zeros4 >= 1, "ordinary (slope 0) eigenvalue missing");
}

// ---- criterion 8: family fredholm vs per-weight recomputation ------------------

void crit_family_fredholm(std::ostringstream&) {
  const long p = 5, M = 20, Nq = 80, J = 1;
  auto frame = make_family_frame(p, M, 4, 8, 2);
  auto Bfam = katz_family_basis(frame, J, Nq);
  require(Bfam.dim() == 8, "family ladder dimension drifted");
  auto Ufam = matrix_of_operator<FamilyElt>(
      Bfam, [&](const HalfIntForm<FamilyElt>& f) { return hecke_u(f, p); }, 0);
  auto Pfam = fredholm_coeffs(Ufam.mat);

  for (long lambda : {104L, 904L}) {
    Weight kappa = Weight::arithmetic(p, lambda);
    auto Bspec = specialize_basis(Bfam, kappa);
    auto Uspec = matrix_of_operator<PadicNum>(
        Bspec, [&](const HalfIntForm<PadicNum>& f) { return hecke_u(f, p); }, 0);
    auto Pspec = fredholm_coeffs(Uspec.mat);
    auto Pfrom_family = specialize_series(Pfam, kappa);
    require(Pspec.c.size() == Pfrom_family.c.size(), "series degree mismatch");
    for (size_t k = 0; k < Pspec.c.size(); ++k) {
      PadicNum diff = Pfrom_family.c[k] - Pspec.c[k];
      require(diff.is_zero() || diff.valuation() >= M - 2,
              "family and per-weight series differ above p^-(M-2) at lambda=" +
                  std::to_string(lambda) + ", coefficient " + std::to_string(k));
    }
  }
}

}  // namespace

int main() {
  std::vector<Criterion> table{
      {1, "theta Hecke eigensystem at 200 terms", 1.0, crit_theta_eigensystem},
      {2, "orbit-sum Hecke recomputation matches coefficient formulas", 30.0,
       crit_oracle_agreement},
      {3, "gauss sum square and quadratic filter", 1.0, crit_gauss_sums},
      {4, "eisenstein constants and held-out family interpolation", 5.0,
       crit_eisenstein_family},
      {5, "planted 6x6 spectrum: fredholm, slope factor, riesz restriction", 10.0,
       crit_planted_spectrum},
      {6, "classicality table with boundary slope", 1.0, crit_classicality},
      {7, "U slope stability across ladder depths J=3,4", 120.0, crit_slope_stability},
      {8, "family fredholm specializations at two weights", 60.0, crit_family_fredholm},
  };

  int failures = 0;
  for (auto& c : table) {
    std::ostringstream detail;
    auto t0 = std::chrono::steady_clock::now();
    std::string err;
    try {
      c.run(detail);
    } catch (const std::exception& e) {
      err = e.what();
    }
    double sec = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    bool on_time = sec <= c.budget_sec;
    bool ok = err.empty() && on_time;
    if (!ok) ++failures;
    std::string note;
    if (!err.empty()) note = " -- " + err;
    if (ok && !on_time) note = " -- over budget";
    if (!err.empty() && !on_time) note += " (also over budget)";
    if (!detail.str().empty()) note += " [" + detail.str() + "]";
    std::printf("%s criterion %d: %s (%.2fs, budget %.0fs)%s\n", ok ? "PASS" : "FAIL", c.id,
                c.title.c_str(), sec, c.budget_sec, note.c_str());
  }
  return failures;
}
