#include <doctest.h>

#include "halfint/eis_theta.hpp"
#include "halfint/weight.hpp"

using namespace halfint;

TEST_SUITE("eis_theta") {
  TEST_CASE("theta has coefficient 2 exactly at positive squares") {
    QSeries<mpq_class> th = theta_qexp(10);
    std::vector<long> expect = {1, 2, 0, 0, 2, 0, 0, 0, 0, 2};
    REQUIRE(th.N() == 10);
    for (long n = 0; n < 10; ++n) CHECK(th.a[(size_t)n] == expect[(size_t)n]);
  }

  TEST_CASE("F is the odd-divisor weight-2 series") {
    QSeries<mpq_class> F = f_weight2_qexp(12);
    CHECK(F.a[0] == 0);
    CHECK(F.a[1] == 1);
    CHECK(F.a[2] == 0);
    CHECK(F.a[3] == 4);   // 1 + 3
    CHECK(F.a[5] == 6);   // 1 + 5
    CHECK(F.a[9] == 13);  // 1 + 3 + 9
    CHECK(F.a[10] == 0);
  }

  TEST_CASE("bernoulli numbers match the classical table") {
    CHECK(bernoulli_number(0) == 1);
    CHECK(bernoulli_number(2) == mpq_class(1, 6));
    CHECK(bernoulli_number(3) == 0);
    CHECK(bernoulli_number(4) == mpq_class(-1, 30));
    CHECK(bernoulli_number(12) == mpq_class(-691, 2730));
  }

  TEST_CASE("zeta_p matches the Euler-factor formula") {
    CHECK(zeta_p_rational(5, 4) == mpq_class(-31, 30));
    CHECK(zeta_p_rational(7, 6) == mpq_class(2801, 42));
    CHECK(zeta_p_rational(3, 2) == mpq_class(1, 6));
    CHECK_THROWS_AS(zeta_p_rational(5, 3), ZetaValueUnavailable);
    CHECK_THROWS_AS(zeta_p_rational(5, 0), ZetaValueUnavailable);
  }

  TEST_CASE("eisenstein series is 1 plus 2/zeta_p times p-deprived sums") {
    QSeries<mpq_class> E = eisenstein_rational(5, 4, 30);
    CHECK(E.a[0] == 1);
    CHECK(E.a[1] == mpq_class(-60, 31));  // 2/zeta_5(4)
    // a_n = (2/zeta) * sum_{d | n, p∤d} d^(lambda-1).
    mpq_class c = 2 / zeta_p_rational(5, 4);
    CHECK(E.a[2] == c * (1 + 8));
    CHECK(E.a[6] == c * (1 + 8 + 27 + 216));
    CHECK(E.a[5] == c * 1);        // divisor 5 dropped
    CHECK(E.a[10] == c * (1 + 8));  // divisors 5, 10 dropped
  }

  TEST_CASE("eisenstein coefficients are p-integral after the constant") {
    QSeries<mpq_class> E = eisenstein_rational(7, 6, 40);
    mpq_class c = 2 / zeta_p_rational(7, 6);
    for (long n = 1; n < E.N(); ++n) {
      mpq_class ratio = E.a[(size_t)n] / c;
      CHECK(ratio.get_den() == 1);
    }
  }

  TEST_CASE("padic eisenstein agrees with the rational route") {
    Weight k = Weight::arithmetic(5, 4);
    QSeries<PadicNum> Ep = eisenstein_padic(k, 20, 14);
    QSeries<mpq_class> Eq = eisenstein_rational(5, 4, 20);
    for (long n = 0; n < 20; ++n)
      CHECK(Ep.a[(size_t)n] == PadicNum::from_rational(Eq.a[(size_t)n], 5, 14));
  }

  TEST_CASE("eisenstein family specializes to the fixed series at nodes") {
    auto frame = make_family_frame(5, 16, 4, 4, 2);
    QSeries<FamilyElt> Ew = eisenstein_family(frame, 12);
    CHECK(Ew.N() == 12);
    Weight node = Weight::arithmetic(5, 104);
    QSeries<PadicNum> En = eisenstein_padic(node, 12, 16);
    for (long n = 0; n < 12; ++n) {
      PadicNum got = Ew.a[(size_t)n].specialize(node);
      CHECK((got - En.a[(size_t)n]).valuation() >= 14);
    }
    // Constant coefficient is the polynomial 1.
    CHECK(Ew.a[0].degree() == 0);
    CHECK(Ew.a[0].specialize(node) == PadicNum::one(5, 16));
  }

  TEST_CASE("eis ratio expansions telescope") {
    EisRatios r = eis_ratio_expansions(5, 4, 3, 18);
    QSeries<mpq_class> lhs = r.over_ell * r.middle;
    long N = std::min(lhs.N(), r.over_ell_sq.N());
    for (long n = 0; n < N; ++n) CHECK(lhs.a[(size_t)n] == r.over_ell_sq.a[(size_t)n]);
    // The Puiseux quotient lives on the D = ell grid.
    CHECK(r.puiseux.D == 3);
  }
}
