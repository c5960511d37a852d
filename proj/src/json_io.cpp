#include "halfint/json_io.hpp"

#include <algorithm>
#include <sstream>

namespace halfint {

Json mpq_to_json(const mpq_class& x) { return x.get_str(); }

mpq_class mpq_from_json(const Json& j) {
  if (j.is_number_integer()) return mpq_class(j.get<long>());
  mpq_class x(j.get<std::string>());
  x.canonicalize();
  return x;
}

Json padic_to_json(const PadicNum& x) {
  Json j;
  j["unit"] = x.unit_part().get_str();
  j["val"] = x.valuation();
  j["prec"] = x.precision();
  return j;
}

PadicNum padic_from_json(const Json& j, long p) {
  mpz_class u(j.at("unit").get<std::string>());
  return PadicNum::from_parts(u, j.at("val").get<long>(), p, j.at("prec").get<long>());
}

Json qseries_to_json(const QSeries<mpq_class>& f, long prime) {
  Json j;
  j["prime"] = prime;
  j["domain"] = "rational";
  j["D"] = f.D;
  j["N"] = f.N();
  Json coeffs = Json::array();
  for (const auto& c : f.a) coeffs.push_back(mpq_to_json(c));
  j["coeffs"] = std::move(coeffs);
  return j;
}

Json qseries_to_json(const QSeries<PadicNum>& f) {
  Json j;
  j["prime"] = f.proto.prime();
  j["domain"] = "padic";
  j["D"] = f.D;
  j["N"] = f.N();
  Json coeffs = Json::array();
  for (const auto& c : f.a) coeffs.push_back(padic_to_json(c));
  j["coeffs"] = std::move(coeffs);
  return j;
}

QSeries<mpq_class> qseries_rational_from_json(const Json& j) {
  if (j.at("domain").get<std::string>() != "rational")
    throw DomainError("qseries: expected a rational-domain series");
  std::vector<mpq_class> a;
  for (const auto& c : j.at("coeffs")) a.push_back(mpq_from_json(c));
  return make_qseries<mpq_class>(j.at("D").get<long>(), std::move(a), mpq_class(0));
}

QSeries<PadicNum> qseries_padic_from_json(const Json& j) {
  if (j.at("domain").get<std::string>() != "padic")
    throw DomainError("qseries: expected a padic-domain series");
  long p = j.at("prime").get<long>();
  const Json& cs = j.at("coeffs");
  if (cs.empty()) throw DomainError("qseries: empty coefficient list");
  std::vector<PadicNum> a;
  for (const auto& c : cs) a.push_back(padic_from_json(c, p));
  PadicNum proto = PadicNum::zero(p, a[0].precision());
  return make_qseries<PadicNum>(j.at("D").get<long>(), std::move(a), proto);
}

Json weight_to_json(const Weight& k) {
  Json j;
  j["p"] = k.prime();
  j["component"] = k.component();
  if (k.is_arithmetic()) {
    j["kind"] = "arithmetic";
    j["lambda"] = k.arith().lambda;
    j["psi_m"] = k.arith().psi.m;
    j["psi_t"] = k.arith().psi.t;
  } else {
    j["kind"] = "generic";
    j["w"] = padic_to_json(k.generic_part().w);
  }
  return j;
}

Weight weight_from_json(const Json& j) {
  long p = j.at("p").get<long>();
  long i = j.at("component").get<long>();
  std::string kind = j.at("kind").get<std::string>();
  if (kind == "arithmetic") {
    WildPsi psi{j.value("psi_m", 1L), j.value("psi_t", 0L)};
    return Weight::arithmetic_on_component(p, j.at("lambda").get<long>(), i, psi);
  }
  if (kind == "generic") return Weight::generic(p, padic_from_json(j.at("w"), p), i);
  throw DomainError("weight: unknown kind '" + kind + "'");
}

namespace {

template <class C>
Json form_tags_json(const HalfIntForm<C>& F) {
  Json j;
  j["kappa"] = weight_to_json(F.kappa);
  j["tame_level"] = F.tame_level;
  j["chi_modulus"] = F.chi.modulus;
  j["chi_disc"] = F.chi.disc;
  j["r"] = mpq_to_json(F.r);
  return j;
}

}  // namespace

Json form_to_json(const HalfIntForm<mpq_class>& F, long prime) {
  Json j = form_tags_json(F);
  j["qexp"] = qseries_to_json(F.qexp, prime ? prime : F.kappa.prime());
  return j;
}

Json form_to_json(const HalfIntForm<PadicNum>& F) {
  Json j = form_tags_json(F);
  j["qexp"] = qseries_to_json(F.qexp);
  return j;
}

namespace {

template <class C>
HalfIntForm<C> form_from_parts(const Json& j, QSeries<C> qexp) {
  Weight kappa = weight_from_json(j.at("kappa"));
  TameCharacter chi{j.value("chi_modulus", 4L), j.value("chi_disc", 1L)};
  return make_form(kappa, j.at("tame_level").get<long>(), chi, std::move(qexp),
                   mpq_from_json(j.at("r")));
}

}  // namespace

HalfIntForm<mpq_class> form_rational_from_json(const Json& j) {
  return form_from_parts<mpq_class>(j, qseries_rational_from_json(j.at("qexp")));
}

HalfIntForm<PadicNum> form_padic_from_json(const Json& j) {
  return form_from_parts<PadicNum>(j, qseries_padic_from_json(j.at("qexp")));
}

Json basis_to_json(const KatzBasis& B, const Weight& kappa, long J, long M, bool wide) {
  Json meta;
  meta["p"] = kappa.prime();
  meta["lambda"] = kappa.is_arithmetic() ? Json(kappa.arith().lambda) : Json();
  meta["J"] = J;
  meta["N"] = B.basis.q_prec;
  meta["M"] = M;
  meta["slot_mult"] = B.slot_mult;
  meta["pivots"] = B.basis.pivots;
  meta["provenance"] = B.basis.provenance;
  Json forms = Json::array();
  const auto& list = wide ? B.wide : B.basis.forms;
  for (const auto& f : list) forms.push_back(form_to_json(f));
  Json j;
  j["metadata"] = std::move(meta);
  j["forms"] = std::move(forms);
  return j;
}

std::vector<HalfIntForm<PadicNum>> basis_forms_from_json(const Json& j) {
  std::vector<HalfIntForm<PadicNum>> out;
  const Json& forms = j.is_array() ? j : j.at("forms");
  for (const auto& f : forms) out.push_back(form_padic_from_json(f));
  return out;
}

Json matrix_to_json(const CompactMatrix<PadicNum>& M) {
  Json j;
  j["dim"] = M.mat.n;
  j["tolerance"] = M.tolerance == kTailStrict ? Json() : Json(M.tolerance);
  Json tails = Json::array();
  for (long t : M.tail_valuation) tails.push_back(t == kTailExact ? Json() : Json(t));
  j["tail_valuation"] = std::move(tails);
  Json rows = Json::array();
  for (long i = 0; i < M.mat.n; ++i) {
    Json row = Json::array();
    for (long k = 0; k < M.mat.n; ++k) row.push_back(padic_to_json(M.mat.at(i, k)));
    rows.push_back(std::move(row));
  }
  j["entries"] = std::move(rows);
  return j;
}

Json fredholm_to_json(const std::vector<PadicNum>& coeffs) {
  Json a = Json::array();
  for (const auto& c : coeffs) a.push_back(padic_to_json(c));
  return a;
}

Json polygon_to_json(const NewtonPolygon& np) {
  Json j;
  Json vs = Json::array();
  for (const auto& v : np.vertices) vs.push_back(Json::array({v.first, v.second}));
  j["vertices"] = std::move(vs);
  Json segs = Json::array();
  for (const auto& s : np.segments) {
    Json e;
    e["slope"] = mpq_to_json(s.slope);
    e["mult"] = s.mult;
    segs.push_back(std::move(e));
  }
  j["segments"] = std::move(segs);
  j["slope_convention"] = "v(alpha) for reciprocal roots alpha of P";
  j["indeterminate"] = np.indeterminate;
  j["note"] = np.note;
  return j;
}

Json local_piece_to_json(const LocalPiece& piece) {
  Json j;
  j["Q"] = fredholm_to_json(piece.Q);
  j["R"] = fredholm_to_json(piece.R);
  j["rank"] = piece.rank;
  j["basis_cols"] = piece.basis_cols;
  j["restricted_charpoly"] = fredholm_to_json(piece.restricted_charpoly);
  Json gens = Json::array();
  for (const auto& g : piece.gen_charpoly) gens.push_back(fredholm_to_json(g));
  j["gen_charpolys"] = std::move(gens);
  j["commutator_valuations"] = piece.commutator_valuations;
  Json packets = Json::array();
  for (const auto& pk : piece.packets) {
    Json e;
    e["slope"] = mpq_to_json(pk.slope);
    e["alpha"] = padic_to_json(pk.alpha);
    Json evs = Json::array();
    for (const auto& mu : pk.hecke_eigenvalues) evs.push_back(padic_to_json(mu));
    e["hecke_eigenvalues"] = std::move(evs);
    packets.push_back(std::move(e));
  }
  j["packets"] = std::move(packets);
  return j;
}

Json classicality_to_json(const ClassicalityReport& r) {
  Json j;
  j["lambda"] = r.lambda;
  j["bound"] = mpq_to_json(r.bound);
  Json entries = Json::array();
  for (const auto& e : r.entries) {
    Json x;
    x["slope"] = mpq_to_json(e.slope);
    x["tag"] = e.tag == ClassicalityTag::CLASSICAL_GUARANTEED ? "CLASSICAL_GUARANTEED"
                                                              : "INDETERMINATE";
    entries.push_back(std::move(x));
  }
  j["entries"] = std::move(entries);
  return j;
}

Json provenance_json(long p, long M, long N, long J, long Dw, const mpq_class* r) {
  Json j;
  j["p"] = p > 0 ? Json(p) : Json();
  j["M"] = M > 0 ? Json(M) : Json();
  j["N"] = N > 0 ? Json(N) : Json();
  j["J"] = J >= 0 ? Json(J) : Json();
  j["Dw"] = Dw > 0 ? Json(Dw) : Json();
  j["r"] = r ? Json(mpq_to_json(*r)) : Json();
  return j;
}

std::string polygon_ascii(const NewtonPolygon& np) {
  if (np.vertices.empty()) return "(empty polygon)\n";
  long kmax = np.vertices.back().first;
  long vmax = 0;
  for (const auto& v : np.vertices) vmax = std::max(vmax, v.second);
  long width = std::min(kmax, 60L);
  long height = std::min(vmax, 18L);
  std::vector<std::string> grid((size_t)height + 1, std::string((size_t)width + 1, ' '));
  auto put = [&](long k, long v) {
    long x = kmax ? k * width / kmax : 0;
    long y = vmax ? v * height / vmax : 0;
    grid[(size_t)(height - y)][(size_t)x] = '*';
  };
  for (const auto& v : np.vertices) put(v.first, v.second);
  std::ostringstream out;
  out << "v(c_k)\n";
  for (long r = 0; r <= height; ++r) out << "  |" << grid[(size_t)r] << "\n";
  out << "  +" << std::string((size_t)width + 1, '-') << "  k -> " << kmax << "\n";
  for (const auto& s : np.segments)
    out << "  slope " << s.slope.get_str() << " x" << s.mult << "\n";
  if (np.indeterminate) out << "  (indeterminate: " << np.note << ")\n";
  return out.str();
}

}  // namespace halfint
