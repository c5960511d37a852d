#include <doctest.h>

#include "halfint/weight.hpp"

using namespace halfint;

TEST_SUITE("weight") {
  TEST_CASE("arithmetic weights land on the Teichmueller component") {
    Weight k4 = Weight::arithmetic(5, 4);
    CHECK(k4.component() == 0);
    CHECK(k4.q() == 5);
    CHECK(k4.phi_q() == 4);
    CHECK(Weight::arithmetic(5, 3).component() == 3);
    CHECK(Weight::arithmetic(5, 0).component() == 0);
    CHECK(Weight::arithmetic(2, 5).component() == 1);
  }

  TEST_CASE("evaluation is x^lambda for trivial psi") {
    Weight k = Weight::arithmetic(5, 4);
    CHECK(k.eval(mpz_class(2), 20) == PadicNum::from_integer(2, 5, 20).pow(4));
    CHECK(k.eval(mpz_class(7), 12) == PadicNum::from_integer(7, 5, 12).pow(4));
    // lambda = 0 is the trivial character.
    CHECK(Weight::arithmetic(5, 0).eval(mpz_class(3), 10) == PadicNum::one(5, 10));
  }

  TEST_CASE("angle-only evaluation strips the Teichmueller part") {
    Weight k = Weight::arithmetic(5, 4);
    PadicNum expect = angle_part(PadicNum::from_integer(2, 5, 16)).pow(4);
    CHECK(k.eval_angle_only(mpz_class(2), 16) == expect);
  }

  TEST_CASE("disc coordinate is kappa(1+q)") {
    Weight k = Weight::arithmetic(5, 4);
    CHECK(k.disc_coord(10) == PadicNum::from_integer(6, 5, 10).pow(4));
    CHECK(Weight::arithmetic(5, 0).disc_coord(10) == PadicNum::one(5, 10));
  }

  TEST_CASE("generic weights evaluate through log and exp") {
    // w chosen as the disc coordinate of x^4: the generic route must agree
    // with the arithmetic one on the angle part.
    Weight arith = Weight::arithmetic(5, 4);
    Weight gen = Weight::generic(5, arith.disc_coord(18), 0);
    CHECK(gen.eval_angle_only(mpz_class(2), 18) == arith.eval_angle_only(mpz_class(2), 18));
    CHECK(gen.disc_coord(18) == arith.disc_coord(18));
  }

  TEST_CASE("nontrivial wild psi cannot be evaluated inside Q_p") {
    WildPsi psi{2, 1};
    CHECK(!psi.is_trivial(5));
    CHECK(WildPsi{1, 0}.is_trivial(5));
    CHECK(WildPsi{3, 0}.is_trivial(5));
    Weight k = Weight::arithmetic(5, 4, psi);
    CHECK(k.nbhd_tier() == 2);
    CHECK_THROWS_AS(k.eval(mpz_class(2), 10), EvalError);
  }

  TEST_CASE("radius schedule follows p^(2-n)/(2q(1+p))") {
    CHECK(r_schedule(5, 1) == mpq_class(1, 12));
    CHECK(r_schedule(5, 2) == mpq_class(1, 60));
    CHECK(r_schedule(3, 1) == mpq_class(1, 8));
    CHECK_THROWS_AS(r_schedule(5, 0), DomainError);
  }

  TEST_CASE("family frame nodes are clustered arithmetic weights") {
    auto frame = make_family_frame(5, 20, 4, 8, 2);
    CHECK(frame->degree() == 8);
    CHECK(frame->lambdas.front() == 4);
    CHECK(frame->lambdas[1] == 104);
    CHECK(frame->lambdas.back() == 804);
    CHECK(frame->node_index(Weight::arithmetic(5, 104)).value() == 1);
    CHECK(!frame->node_index(Weight::arithmetic(5, 8)).has_value());
    CHECK(frame->w_nodes[0] == PadicNum::from_integer(6, 5, 20).pow(4));
    CHECK_THROWS_AS(make_family_frame(5, 20, 3, 8, 2), DomainError);
  }

  TEST_CASE("family elements specialize exactly at nodes") {
    auto frame = make_family_frame(5, 20, 4, 4, 2);
    FamilyElt w = FamilyElt::coordinate(frame);
    for (size_t j = 0; j < frame->lambdas.size(); ++j) {
      Weight node = Weight::arithmetic(5, frame->lambdas[j]);
      CHECK(w.specialize(node) == frame->w_nodes[j]);
    }
    CHECK(w.degree() == 1);
    FamilyElt c = FamilyElt::constant(frame, PadicNum::from_integer(3, 5, 20));
    CHECK(c.degree() == 0);
    CHECK((c * w).specialize(Weight::arithmetic(5, 104)) ==
          PadicNum::from_integer(3, 5, 20) * frame->w_nodes[1]);
  }

  TEST_CASE("bracket interpolates kappa(ell) across the disk") {
    auto frame = make_family_frame(5, 20, 4, 8, 2);
    FamilyElt br = FamilyElt::bracket(frame, 2);
    // Exact at nodes.
    Weight node = Weight::arithmetic(5, 104);
    CHECK(br.specialize(node) == node.eval(mpz_class(2), 20));
    // Held-out arithmetic weight in the same disk: accurate to M - 2.
    Weight held = Weight::arithmetic(5, 904);
    PadicNum diff = br.specialize(held) - held.eval(mpz_class(2), 20);
    CHECK(diff.valuation() >= 18);
  }

  TEST_CASE("specialize refuses weights outside the frame disk") {
    auto frame = make_family_frame(5, 20, 4, 4, 2);
    FamilyElt w = FamilyElt::coordinate(frame);
    CHECK_THROWS_AS(w.specialize(Weight::arithmetic(5, 7)), WeightNotInNbhd);   // component 3
    CHECK_THROWS_AS(w.specialize(Weight::arithmetic(5, 8)), WeightNotInNbhd);   // outside cluster
    CHECK_THROWS_AS(w.specialize(Weight::arithmetic(3, 4)), DomainError);       // wrong prime
  }

  TEST_CASE("family inverse and products specialize pointwise") {
    auto frame = make_family_frame(5, 20, 4, 4, 2);
    FamilyElt br = FamilyElt::bracket(frame, 3);
    FamilyElt prod = br * br.inverse();
    Weight node = Weight::arithmetic(5, 204);
    CHECK(prod.specialize(node) == PadicNum::one(5, 20));
    CHECK(br.is_zero() == false);
  }
}
