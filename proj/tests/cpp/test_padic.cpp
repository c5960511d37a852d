#include <doctest.h>

#include "halfint/padic.hpp"

using namespace halfint;

TEST_SUITE("padic") {
  TEST_CASE("from_parts normalizes the unit part") {
    PadicNum x = PadicNum::from_parts(50, 0, 5, 6);
    CHECK(x.valuation() == 2);
    CHECK(x.unit_part() == 2);
    CHECK(x.precision() == 6);
    CHECK(x.is_unit() == false);

    PadicNum y = PadicNum::from_parts(-1, 0, 5, 3);
    CHECK(y.unit_part() == 124);  // 5^3 - 1
  }

  TEST_CASE("zero at precision carries the valuation bound") {
    PadicNum z = PadicNum::zero(5, 7);
    CHECK(z.is_zero());
    CHECK(z.valuation() == 7);
    CHECK(z.precision() == 7);
    // Anything with valuation >= M collapses to zero-at-precision.
    CHECK(PadicNum::from_parts(3, 9, 5, 9).is_zero());
  }

  TEST_CASE("addition uses the min precision rule") {
    PadicNum a = PadicNum::from_integer(1, 5, 10);
    PadicNum b = PadicNum::from_integer(2, 5, 4);
    CHECK((a + b).precision() == 4);
    CHECK((a + b).unit_part() == 3);

    // Cancellation raises valuation without inventing digits.
    PadicNum c = PadicNum::from_integer(26, 5, 6) - PadicNum::from_integer(1, 5, 6);
    CHECK(c.valuation() == 2);
    CHECK(c.unit_part() == 1);
  }

  TEST_CASE("multiplication shifts the cap by the partner valuation") {
    PadicNum a = PadicNum::from_parts(1, 2, 5, 10);
    PadicNum b = PadicNum::from_parts(1, 3, 5, 10);
    PadicNum c = a * b;
    CHECK(c.valuation() == 5);
    CHECK(c.precision() == 12);  // min(10+3, 10+2)
  }

  TEST_CASE("equality holds at the shared precision") {
    PadicNum a = PadicNum::from_integer(1, 5, 4);
    PadicNum b = PadicNum::from_integer(1 + 625, 5, 4);
    CHECK(a == b);
    CHECK(a != PadicNum::from_integer(2, 5, 4));
  }

  TEST_CASE("inverse works for any nonzero valuation") {
    PadicNum a = PadicNum::from_integer(2, 5, 8);
    CHECK(a.inverse() * a == PadicNum::one(5, 8));

    PadicNum b = PadicNum::from_parts(3, 2, 5, 12);
    PadicNum binv = b.inverse();
    CHECK(binv.valuation() == -2);
    CHECK(binv * b == PadicNum::one(5, 8));

    CHECK_THROWS_AS(PadicNum::zero(5, 8).inverse(), DomainError);
  }

  TEST_CASE("division respects the relative-precision floor") {
    PadicNum tiny = PadicNum::from_parts(1, 0, 5, 3);  // only 3 digits known
    CHECK_THROWS_AS(PadicNum::one(5, 10) / tiny, PrecisionError);
    PrecisionFloorGuard guard(2);
    CHECK_NOTHROW(PadicNum::one(5, 10) / tiny);
  }

  TEST_CASE("from_rational clears prime-free denominators") {
    PadicNum h = PadicNum::from_rational(mpq_class(1, 2), 5, 4);
    CHECK(h + h == PadicNum::one(5, 4));
    CHECK(h.residue(4) == 313);  // (5^4 + 1) / 2

    PadicNum neg = PadicNum::from_rational(mpq_class(-1, 3), 5, 4);
    CHECK(neg * PadicNum::from_integer(-3, 5, 4) == PadicNum::one(5, 4));
  }

  TEST_CASE("lift and residue round-trip the stored value") {
    PadicNum x = PadicNum::from_parts(7, -2, 5, 6);
    CHECK(x.lift() == mpq_class(7, 25));
    CHECK_THROWS_AS(x.residue(3), DomainError);
    CHECK(PadicNum::from_integer(132, 5, 4).residue(2) == 7);
  }

  TEST_CASE("teichmuller lift is the root of unity congruent to x") {
    // tau(2) mod 25 = 7: 7^4 = 2401 = 1 + 96*25.
    CHECK(teichmuller(mpz_class(2), 5, 2).residue(2) == 7);
    PadicNum tau = teichmuller(mpz_class(2), 5, 12);
    CHECK(tau.pow(4) == PadicNum::one(5, 12));
    CHECK((tau - PadicNum::from_integer(2, 5, 12)).valuation() >= 1);
    CHECK_THROWS_AS(teichmuller(mpz_class(5), 5, 6), NotAUnit);
  }

  TEST_CASE("unit decomposition multiplies back together") {
    PadicNum x = PadicNum::from_integer(13, 5, 10);
    UnitDecomposition d = decompose_unit(x);
    CHECK(d.tau_part * d.angle == x);
    CHECK((d.angle - PadicNum::one(5, 10)).valuation() >= 1);
    CHECK(d.angle == angle_part(x));
  }

  TEST_CASE("log and exp invert each other on the small disk") {
    PadicNum x = PadicNum::from_parts(1, 1, 5, 9);  // x = 5
    PadicNum l = log_one_plus(x);
    CHECK(l.valuation() == 1);
    CHECK(exp_small(l) == PadicNum::one(5, 9) + x);

    PadicNum y = PadicNum::from_parts(3, 2, 5, 10);
    CHECK(log_one_plus(exp_small(y) - PadicNum::one(5, 10)) == y);
  }

  TEST_CASE("pow handles negative exponents through the inverse") {
    PadicNum a = PadicNum::from_integer(7, 5, 8);
    CHECK(a.pow(3) * a.pow(-3) == PadicNum::one(5, 8));
    CHECK(a.pow(0) == PadicNum::one(5, 8));
  }
}
