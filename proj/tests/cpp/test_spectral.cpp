#include <doctest.h>

#include <halfint/errors.hpp>
#include <halfint/spectral.hpp>
#include <halfint/weight.hpp>

using namespace halfint;

namespace {

constexpr long kM = 20;

PadicNum pd(long t, long v = 0) { return PadicNum::from_parts(mpz_class(t), v, 5, kM); }

Mat<PadicNum> diag_mat(const std::vector<PadicNum>& d) {
  Mat<PadicNum> m((long)d.size(), PadicNum::zero(5, kM));
  for (long i = 0; i < m.n; ++i) m.at(i, i) = d[(size_t)i];
  return m;
}

long val_gap(const PadicNum& a, const PadicNum& b) { return (a - b).valuation(); }

}  // namespace

TEST_SUITE("spectral") {
  TEST_CASE("fredholm coefficients over the rationals") {
    Mat<mpq_class> A(2, mpq_class(0));
    A.at(0, 0) = 1;
    A.at(0, 1) = 2;
    A.at(1, 0) = 3;
    A.at(1, 1) = 4;
    auto P = fredholm_coeffs(A);
    REQUIRE(P.degree() == 2);
    CHECK(P.c[0] == 1);
    CHECK(P.c[1] == -5);  // -trace
    CHECK(P.c[2] == -2);  // +det

    // det(1 - T M) is multiplicative on block triangular matrices.
    Mat<mpq_class> B(3, mpq_class(0));
    B.at(0, 0) = 2;
    B.at(1, 1) = 3;
    B.at(1, 2) = 1;
    B.at(2, 2) = 3;
    auto Q = fredholm_coeffs(B);
    CHECK(Q.c[1] == -8);
    CHECK(Q.c[2] == 21);   // e2 of {2,3,3}
    CHECK(Q.c[3] == -18);  // -e3

    // conjugation invariance: S A S^-1 with S = [[1,2],[0,1]]
    Mat<mpq_class> C(2, mpq_class(0));
    C.at(0, 0) = 1 + 2 * 3;
    C.at(0, 1) = 2 + 2 * 4 - (1 + 2 * 3) * 2;
    C.at(1, 0) = 3;
    C.at(1, 1) = 4 - 3 * 2;
    auto Pc = fredholm_coeffs(C);
    CHECK(Pc.c[1] == P.c[1]);
    CHECK(Pc.c[2] == P.c[2]);
  }

  TEST_CASE("newton polygon from certified valuations") {
    auto P = fredholm_coeffs(diag_mat({pd(1, 1), pd(1, 2)}));
    auto np = newton_polygon(P);
    CHECK(np.vertices == std::vector<std::pair<long, long>>{{0, 0}, {1, 1}, {2, 3}});
    REQUIRE(np.segments.size() == 2);
    CHECK(np.segments[0].slope == 1);
    CHECK(np.segments[0].mult == 1);
    CHECK(np.segments[1].slope == 2);
    CHECK(np.segments[1].mult == 1);
    CHECK(slope_list(np) == std::vector<mpq_class>{1, 2});
    CHECK_FALSE(np.indeterminate);

    // repeated slope: collinear points merge into one segment
    auto P2 = fredholm_coeffs(diag_mat({pd(1, 1), pd(1, 1)}));
    auto np2 = newton_polygon(P2);
    CHECK(np2.vertices == std::vector<std::pair<long, long>>{{0, 0}, {2, 2}});
    REQUIRE(np2.segments.size() == 1);
    CHECK(np2.segments[0].slope == 1);
    CHECK(np2.segments[0].mult == 2);
  }

  TEST_CASE("newton polygon flags uncertified dips") {
    FredholmSeries<PadicNum> P{{PadicNum::one(5, 10), PadicNum::zero(5, 1), pd(1, 4)}};
    auto np = newton_polygon(P);
    CHECK(np.indeterminate);
    CHECK_FALSE(np.note.empty());
    CHECK(np.vertices == std::vector<std::pair<long, long>>{{0, 0}, {2, 4}});

    FredholmSeries<PadicNum> Pok{{PadicNum::one(5, 10), PadicNum::zero(5, 8), pd(1, 4)}};
    CHECK_FALSE(newton_polygon(Pok).indeterminate);

    // a trailing at-precision zero below the continuation of the last segment
    FredholmSeries<PadicNum> Pt{{PadicNum::one(5, 10), pd(1, 1), PadicNum::zero(5, 1)}};
    CHECK(newton_polygon(Pt).indeterminate);
    FredholmSeries<PadicNum> Pt2{{PadicNum::one(5, 10), pd(1, 1), PadicNum::zero(5, 9)}};
    CHECK_FALSE(newton_polygon(Pt2).indeterminate);

    FredholmSeries<PadicNum> Pbad{{PadicNum::zero(5, 3), PadicNum::one(5, 10)}};
    CHECK_THROWS_AS(newton_polygon(Pbad), DomainError);
  }

  TEST_CASE("slope factorization splits at a gap") {
    auto P = fredholm_coeffs(diag_mat({pd(1, 1), pd(3, 1), pd(1, 4)}));
    CHECK((P.c[1] + pd(645)).is_zero());
    CHECK((P.c[2] - pd(12575)).is_zero());

    auto F = slope_factor(P, 1);
    REQUIRE(F.Q.size() == 3);
    REQUIRE(F.R.size() == 2);
    CHECK(val_gap(F.Q[1], pd(-20)) >= kM - 4);
    CHECK(val_gap(F.Q[2], pd(75)) >= kM - 4);
    CHECK(val_gap(F.R[1], pd(-1, 4)) >= kM - 4);
    CHECK(F.residual_valuation >= kM - 2);

    auto lo = slope_factor(P, mpq_class(1, 2));
    CHECK(lo.Q.size() == 1);  // nothing at or below slope 1/2
    CHECK(lo.R.size() == 4);
    CHECK(lo.residual_valuation == kTailExact);

    auto hi = slope_factor(P, 7);
    CHECK(hi.Q.size() == 4);
    CHECK(hi.R.size() == 1);
  }

  TEST_CASE("slope factorization refuses an uncertified cut") {
    FredholmSeries<PadicNum> P{{PadicNum::one(5, 10), PadicNum::zero(5, 1), pd(1, 4)}};
    CHECK_THROWS_AS(slope_factor(P, 2), IndeterminateVertex);
  }

  TEST_CASE("riesz decomposition of a separated piece") {
    auto M = diag_mat({pd(2, 1), pd(3, 3)});
    auto P = fredholm_coeffs(M);
    auto F = slope_factor(P, 1);
    REQUIRE(F.Q.size() == 2);
    auto piece = riesz_decompose(M, F.Q);
    CHECK(piece.rank == 1);
    CHECK(piece.basis_cols == std::vector<long>{0});
    REQUIRE(piece.n_basis.size() == 1);
    CHECK(piece.n_basis[0].size() == 2);
    CHECK(val_gap(piece.projector.at(0, 0), pd(1)) >= kM - 6);
    CHECK(piece.projector.at(1, 1).valuation() >= kM - 6);
    REQUIRE(piece.restricted.n == 1);
    CHECK(val_gap(piece.restricted.at(0, 0), pd(2, 1)) >= kM - 6);
    REQUIRE(piece.restricted_charpoly.size() == 2);
    CHECK(val_gap(piece.restricted_charpoly[1], F.Q[1]) >= kM - 6);
  }

  TEST_CASE("riesz decomposition off the diagonal") {
    Mat<PadicNum> M(2, PadicNum::zero(5, kM));
    M.at(0, 0) = pd(2, 1);
    M.at(0, 1) = pd(3, 3) - pd(2, 1);
    M.at(1, 1) = pd(3, 3);
    auto F = slope_factor(fredholm_coeffs(M), 1);
    auto piece = riesz_decompose(M, F.Q);
    CHECK(piece.rank == 1);
    CHECK(val_gap(piece.restricted.at(0, 0), pd(2, 1)) >= kM - 6);
  }

  TEST_CASE("riesz decomposition for the full factor is trivial") {
    auto M = diag_mat({pd(2, 1), pd(3, 3)});
    auto P = fredholm_coeffs(M);
    auto piece = riesz_decompose(M, P.c);
    CHECK(piece.rank == 2);
    CHECK((piece.projector.at(0, 0) - pd(1)).is_zero());
    CHECK(piece.projector.at(0, 1).is_zero());
    CHECK(val_gap(piece.restricted.at(0, 0), pd(2, 1)) >= kM - 6);
    CHECK(piece.restricted_charpoly.size() == 3);
  }

  TEST_CASE("riesz validates the factor") {
    auto M = diag_mat({pd(2, 1), pd(3, 3)});
    CHECK_THROWS_AS(riesz_decompose(M, {pd(1), pd(-7)}), BezoutFailure);
    CHECK_THROWS_AS(riesz_decompose(M, {pd(1), PadicNum::zero(5, kM)}), PrecisionExhausted);
  }

  TEST_CASE("local hecke algebra emits certified packets") {
    auto M = diag_mat({pd(2, 1), pd(3, 3)});
    auto F = slope_factor(fredholm_coeffs(M), 1);
    auto piece = riesz_decompose(M, F.Q);
    auto gens = std::vector<Mat<PadicNum>>{diag_mat({pd(7), pd(11)})};
    piece = local_hecke_algebra(std::move(piece), M, gens, 10);
    REQUIRE(piece.gen_restricted.size() == 1);
    REQUIRE(piece.gen_charpoly.size() == 1);
    CHECK(piece.gen_charpoly[0].size() == 2);
    REQUIRE(piece.commutator_valuations.size() == 1);
    CHECK(piece.commutator_valuations[0] >= 10);
    REQUIRE(piece.packets.size() == 1);
    const EigenPacket& pk = piece.packets[0];
    CHECK(pk.slope == 1);
    CHECK(val_gap(pk.alpha, pd(2, 1)) >= 10);
    REQUIRE(pk.hecke_eigenvalues.size() == 1);
    CHECK(val_gap(pk.hecke_eigenvalues[0], pd(7)) >= 10);
  }

  TEST_CASE("local hecke algebra rejects non-commuting generators") {
    auto M = diag_mat({pd(2, 1), pd(3, 3)});
    auto F = slope_factor(fredholm_coeffs(M), 1);
    auto piece = riesz_decompose(M, F.Q);
    Mat<PadicNum> g(2, PadicNum::zero(5, kM));
    g.at(0, 1) = pd(1);
    CHECK_THROWS_AS(local_hecke_algebra(std::move(piece), M, {g}, 5), NonCommuting);
  }

  TEST_CASE("family fredholm series specializes coherently") {
    auto frame = make_family_frame(5, 12, 4, 3, 2);
    FamilyElt z = FamilyElt::constant(frame, PadicNum::zero(5, 12));
    Mat<FamilyElt> A(2, z);
    A.at(0, 0) = FamilyElt::bracket(frame, 1) + FamilyElt::constant(frame, PadicNum::one(5, 12));
    A.at(0, 1) = FamilyElt::coordinate(frame);
    A.at(1, 1) = FamilyElt::constant(frame, PadicNum::from_integer(5, 5, 12));
    auto chk = family_fredholm_check(A, Weight::arithmetic(5, 104));
    REQUIRE(chk.specialized.size() == 3);
    REQUIRE(chk.recomputed.size() == 3);
    CHECK(chk.agreement_valuation >= 10);
  }

  TEST_CASE("classicality table") {
    auto rep = classicality_report({0, 3, mpq_class(7, 2)}, 2);
    CHECK(rep.bound == 3);
    REQUIRE(rep.entries.size() == 3);
    CHECK(rep.entries[0].tag == ClassicalityTag::CLASSICAL_GUARANTEED);
    CHECK(rep.entries[1].tag == ClassicalityTag::INDETERMINATE);  // boundary slope
    CHECK(rep.entries[2].tag == ClassicalityTag::INDETERMINATE);
    auto zero = classicality_report({0}, 0);
    CHECK(zero.bound == -1);
    CHECK(zero.entries[0].tag == ClassicalityTag::INDETERMINATE);
  }

  TEST_CASE("compactness diagnostic") {
    FredholmSeries<PadicNum> P{{pd(1), pd(2), pd(1, 1), pd(1, 3)}};
    auto d = compactness_diagnostic(P);
    CHECK(d.last_violation == 0);
    CHECK(d.tail_start == 1);
    FredholmSeries<PadicNum> G{{pd(1), pd(1, 1), pd(1, 3), pd(1, 6)}};
    auto g = compactness_diagnostic(G);
    CHECK(g.last_violation == -1);
    CHECK(g.tail_start == 0);
  }

  TEST_CASE("slope agreement cutoff") {
    CHECK(slope_agreement_cutoff({0, 1, 2}, {0, 1, 3}) == 2);
    CHECK(slope_agreement_cutoff({0, 1}, {0, 1, 2}) == 2);
    CHECK(slope_agreement_cutoff({0, 1}, {0, 1}) == 2);
    CHECK(slope_agreement_cutoff({}, {}) == 0);
    CHECK(slope_agreement_cutoff({mpq_class(1, 2), 1}, {mpq_class(1, 2), 2}) == 1);
  }
}
