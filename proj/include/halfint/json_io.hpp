#pragma once

#include <json.hpp>

#include "halfint/spectral.hpp"

namespace halfint {

/** Insertion-ordered JSON so identical configs serialize byte-identically. */
using Json = nlohmann::ordered_json;

// scalars: rationals as "num/den" strings, p-adics as {unit, val, prec}
Json mpq_to_json(const mpq_class& x);
mpq_class mpq_from_json(const Json& j);
Json padic_to_json(const PadicNum& x);
PadicNum padic_from_json(const Json& j, long p);

// q-expansions: {prime, domain, D, N, coeffs}
Json qseries_to_json(const QSeries<mpq_class>& f, long prime = 0);
Json qseries_to_json(const QSeries<PadicNum>& f);
QSeries<mpq_class> qseries_rational_from_json(const Json& j);
QSeries<PadicNum> qseries_padic_from_json(const Json& j);

Json weight_to_json(const Weight& k);
Weight weight_from_json(const Json& j);

// forms: tags + qexp
Json form_to_json(const HalfIntForm<mpq_class>& F, long prime = 0);
Json form_to_json(const HalfIntForm<PadicNum>& F);
HalfIntForm<mpq_class> form_rational_from_json(const Json& j);
HalfIntForm<PadicNum> form_padic_from_json(const Json& j);

// basis files: {metadata: {p, lambda, J, N, ...}, forms: [...]}
Json basis_to_json(const KatzBasis& B, const Weight& kappa, long J, long M, bool wide);
std::vector<HalfIntForm<PadicNum>> basis_forms_from_json(const Json& j);

Json matrix_to_json(const CompactMatrix<PadicNum>& M);
Json fredholm_to_json(const std::vector<PadicNum>& coeffs);
Json polygon_to_json(const NewtonPolygon& np);
Json local_piece_to_json(const LocalPiece& piece);
Json classicality_to_json(const ClassicalityReport& r);

/** The provenance header every numeric artifact embeds; fields that do not
 *  apply to a given artifact are emitted as null. */
Json provenance_json(long p, long M, long N, long J, long Dw, const mpq_class* r);

/** ASCII rendering of a Newton polygon (for the --render flag). */
std::string polygon_ascii(const NewtonPolygon& np);

}  // namespace halfint
