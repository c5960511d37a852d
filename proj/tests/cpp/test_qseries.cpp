#include <doctest.h>

#include <vector>

#include "halfint/cyclotomic.hpp"
#include "halfint/eis_theta.hpp"
#include "halfint/qseries.hpp"

using namespace halfint;

namespace {

QSeries<mpq_class> rat_series(long D, std::vector<long> coeffs) {
  std::vector<mpq_class> a(coeffs.begin(), coeffs.end());
  return make_qseries<mpq_class>(D, std::move(a), mpq_class(0));
}

}  // namespace

TEST_SUITE("qseries") {
  TEST_CASE("multiplication is plain convolution up to the window") {
    QSeries<mpq_class> f = rat_series(1, {1, 1, 0, 0, 0});   // 1 + q
    QSeries<mpq_class> g = rat_series(1, {1, -1, 0, 0, 0});  // 1 - q
    QSeries<mpq_class> h = f * g;
    CHECK(h.N() == 5);
    CHECK(h.a[0] == 1);
    CHECK(h.a[1] == 0);
    CHECK(h.a[2] == -1);
    CHECK(h.a[3] == 0);
  }

  TEST_CASE("invert produces the reciprocal to precision") {
    QSeries<mpq_class> f = rat_series(1, {1, 1, 0, 0, 0, 0});
    QSeries<mpq_class> finv = invert(f);
    for (long n = 0; n < f.N(); ++n) CHECK(finv.a[(size_t)n] == (n % 2 ? -1 : 1));
    QSeries<mpq_class> prod = f * finv;
    CHECK(prod.a[0] == 1);
    for (long n = 1; n < prod.N(); ++n) CHECK(prod.a[(size_t)n] == 0);

    CHECK_THROWS_AS(invert(rat_series(1, {0, 1})), NonUnitConstantTerm);
  }

  TEST_CASE("contract undoes dilate and theta is U_{p^2}-fixed") {
    QSeries<mpq_class> f = rat_series(1, {1, 2, 3, 4});
    CHECK(contract(dilate(f, 3), 3).a == f.a);

    QSeries<mpq_class> th = theta_qexp(90);
    QSeries<mpq_class> c = contract(th, 9);
    for (long n = 0; n < c.N(); ++n) CHECK(c.a[(size_t)n] == th.a[(size_t)n]);

    // contract(q, 2) -> 0 to precision.
    QSeries<mpq_class> q = rat_series(1, {0, 1});
    CHECK(contract(q, 2).a[0] == 0);
  }

  TEST_CASE("denominators unify by lcm") {
    QSeries<mpq_class> f = rat_series(1, {1, 1});     // 1 + q
    QSeries<mpq_class> g = rat_series(2, {1, 1, 0});  // 1 + q^(1/2)
    QSeries<mpq_class> s = f + g;
    CHECK(s.D == 2);
    CHECK(s.a[0] == 2);  // constants add
    CHECK(s.a[1] == 1);  // q^(1/2)
    CHECK(s.a[2] == 1);  // q
  }

  TEST_CASE("dilate expands the window on the same grid") {
    QSeries<mpq_class> f = rat_series(1, {5, 7});
    QSeries<mpq_class> d = dilate(f, 3);
    CHECK(d.N() == 6);
    CHECK(d.a[0] == 5);
    CHECK(d.a[3] == 7);
    CHECK(d.a[1] == 0);
  }

  TEST_CASE("substitute_root_of_unity twists slot n by zeta^(an)") {
    long D = 4;
    CycloElt proto = CycloElt::zero(4);
    std::vector<CycloElt> c;
    for (long n = 0; n < 8; ++n) c.push_back(CycloElt::one(4));
    QSeries<CycloElt> f = make_qseries<CycloElt>(D, std::move(c), proto);

    QSeries<CycloElt> tw = substitute_root_of_unity(f, 1);
    CHECK(tw.a[0] == CycloElt::one(4));
    CHECK(tw.a[1] == CycloElt::zeta(4, 1));
    CHECK(tw.a[2] == CycloElt::zeta(4, 2));
    CHECK(tw.a[5] == CycloElt::zeta(4, 5));

    // Root-of-unity filter: summing over all twists keeps exactly D | n.
    QSeries<CycloElt> sum = substitute_root_of_unity(f, 0);
    for (long a = 1; a < D; ++a) sum = sum + substitute_root_of_unity(f, a);
    for (long n = 0; n < 8; ++n) {
      if (n % D == 0)
        CHECK(sum.a[(size_t)n] == CycloElt(4, mpq_class(D)));
      else
        CHECK(sum.a[(size_t)n].is_zero());
    }
  }

  TEST_CASE("cyclotomic arithmetic is canonical in the power basis") {
    CycloElt z = CycloElt::zeta(3, 1);
    CHECK(z * z * z == CycloElt::one(3));
    CHECK(z * CycloElt::zeta(3, 2) == CycloElt::one(3));
    // 1 + zeta + zeta^2 = 0 in Q(zeta_3).
    CHECK((CycloElt::one(3) + z + CycloElt::zeta(3, 2)).is_zero());
    CHECK(CycloElt::zeta(5, 7) == CycloElt::zeta(5, 2));
    CHECK(z.galois(2) == CycloElt::zeta(3, 2));
  }

  TEST_CASE("gauss sums satisfy the square identity") {
    CHECK(gauss_sum(3, 1) == CycloElt::zeta(3, 1) - CycloElt::zeta(3, 2));
    CHECK(gauss_sum(5, 0).is_zero());
    for (long ell : {3L, 5L, 7L}) {
      CycloElt g = gauss_sum(ell, 1);
      CycloElt sq = g * g;
      long sign = (ell % 4 == 1) ? 1 : -1;  // (-1/ell)
      CHECK(sq == CycloElt(ell, mpq_class(sign * ell)));
    }
  }

  TEST_CASE("padic-coefficient series invert consistently") {
    PadicNum proto = PadicNum::zero(5, 10);
    std::vector<PadicNum> c = {PadicNum::one(5, 10), PadicNum::from_parts(1, 1, 5, 10),
                               PadicNum::zero(5, 10), PadicNum::zero(5, 10)};
    QSeries<PadicNum> f = make_qseries<PadicNum>(1, std::move(c), proto);
    QSeries<PadicNum> g = f * invert(f);
    CHECK(g.a[0] == PadicNum::one(5, 10));
    for (long n = 1; n < g.N(); ++n) CHECK(g.a[(size_t)n].is_zero());
  }
}
