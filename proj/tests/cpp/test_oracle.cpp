#include <doctest.h>

#include <halfint/eis_theta.hpp>
#include <halfint/errors.hpp>
#include <halfint/forms.hpp>
#include <halfint/tate_oracle.hpp>

using namespace halfint;

namespace {

bool agree(const QSeries<mpq_class>& a, const QSeries<mpq_class>& b, long prec) {
  REQUIRE(a.D == 1);
  REQUIRE(b.D == 1);
  REQUIRE(a.N() >= prec);
  REQUIRE(b.N() >= prec);
  for (long n = 0; n < prec; ++n)
    if (a.a[n] != b.a[n]) return false;
  return true;
}

}  // namespace

TEST_SUITE("oracle") {
  TEST_CASE("subgroup orbit enumeration") {
    auto orbits = subgroup_orbits(3);
    REQUIRE(orbits.size() == 12);  // 1 + (l-1) + l^2
    CHECK(orbits[0].kind == OrbitKind::mu);
    CHECK(orbits[1].kind == OrbitKind::mixed);
    CHECK(orbits[1].index == 1);
    CHECK(orbits[2].kind == OrbitKind::mixed);
    CHECK(orbits[2].index == 2);
    for (long a = 0; a < 9; ++a) {
      CHECK(orbits[3 + a].kind == OrbitKind::etale);
      CHECK(orbits[3 + a].index == a);
    }
    CHECK(subgroup_orbits(5).size() == 30);
    CHECK_THROWS_AS(subgroup_orbits(2), DomainError);
    CHECK_THROWS_AS(subgroup_orbits(9), DomainError);
  }

  TEST_CASE("T oracle matches closed form on theta") {
    long prec = 8;
    auto F = theta_form(5, prec * 9);
    auto direct = hecke_t(F, 3);
    auto oracle = hecke_t_oracle(F, 3, prec);
    CHECK(agree(oracle, direct.qexp, prec));
    // theta is an eigenform with eigenvalue 1 + 1/ell.
    auto scaled = theta_qexp(prec) * mpq_class(4, 3);
    CHECK(agree(oracle, scaled, prec));
  }

  TEST_CASE("T oracle at ell=5 on a 3-adic form") {
    long prec = 3;
    auto F = theta_form(3, prec * 25);
    auto direct = hecke_t(F, 5);
    auto oracle = hecke_t_oracle(F, 5, prec);
    CHECK(agree(oracle, direct.qexp, prec));
  }

  TEST_CASE("T oracle matches closed form on theta cubed") {
    long prec = 5;
    long S = prec * 9;
    auto th = theta_qexp(S);
    auto F = make_form<mpq_class>(Weight::arithmetic(5, 0), 4, TameCharacter{}, th * th * th);
    auto direct = hecke_t(F, 3);
    auto oracle = hecke_t_oracle(F, 3, prec);
    CHECK(agree(oracle, direct.qexp, prec));
  }

  TEST_CASE("T oracle matches closed form in weight four") {
    long prec = 5;
    auto kappa = Weight::arithmetic(5, 4);
    auto F = make_form<mpq_class>(kappa, 4, TameCharacter{}, theta_eis_product(kappa, prec * 9));
    auto direct = hecke_t(F, 3);
    auto oracle = hecke_t_oracle(F, 3, prec);
    CHECK(agree(oracle, direct.qexp, prec));
  }

  TEST_CASE("U oracle is the square-index contraction") {
    long prec = 5;
    auto F = theta_form(3, prec * 9);
    auto direct = hecke_u(F, 3);
    auto oracle = hecke_u_oracle(F, 3, prec);
    CHECK(agree(oracle, direct.qexp, prec));
    CHECK(agree(oracle, theta_qexp(prec), prec));  // U_{p^2} theta = theta
  }

  TEST_CASE("literal and cancelled T oracles agree") {
    long prec = 4;
    auto F = theta_form(5, prec * 9);
    auto cancelled = hecke_t_oracle(F, 3, prec);
    auto literal = hecke_t_oracle_literal(F, 3, prec);
    CHECK(agree(cancelled, literal, prec));
  }

  TEST_CASE("literal and cancelled U oracles agree") {
    long prec = 4;
    auto F = theta_form(3, prec * 9);
    CHECK(agree(hecke_u_oracle(F, 3, prec), hecke_u_oracle_literal(F, 3, prec), prec));
  }

  TEST_CASE("oracle of the zero form vanishes") {
    long prec = 3;
    auto F = make_form<mpq_class>(Weight::arithmetic(5, 0), 4, TameCharacter{},
                                  make_qseries<mpq_class>(1, prec * 9, 0));
    auto oracle = hecke_t_oracle(F, 3, prec);
    for (long n = 0; n < prec; ++n) CHECK(oracle.a[n] == 0);
  }

  TEST_CASE("oracle input validation") {
    auto F = theta_form(5, 20);
    CHECK_THROWS_AS(hecke_t_oracle(F, 3, 8), PrecisionError);  // needs 72 coefficients
    auto G = theta_form(5, 500);
    CHECK_THROWS_AS(hecke_t_oracle(G, 5, 4), DomainError);  // ell divides the adic prime
    CHECK_THROWS_AS(hecke_t_oracle(G, 2, 4), DomainError);
    CHECK_THROWS_AS(hecke_t_oracle(G, 3, 0), DomainError);
  }
}
