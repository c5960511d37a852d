// halfint: command-line front end for the half-integral-weight p-adic
// pipeline.  Subcommands cover series generation, Hecke action, the moduli
// oracle, basis/matrix assembly, and the spectral reports.  All machine
// output is JSON (deterministic for a fixed config); ASCII renders go to
// stderr so stdout stays parseable.
//
// Exit codes: 0 success, 1 user error, 2 precision exhaustion,
// 3 internal-invariant failure (oracle mismatch, degenerate basis, ...).

#include <CLI11.hpp>

#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "halfint/basis.hpp"
#include "halfint/eis_theta.hpp"
#include "halfint/errors.hpp"
#include "halfint/forms.hpp"
#include "halfint/json_io.hpp"
#include "halfint/spectral.hpp"
#include "halfint/tate_oracle.hpp"
#include "halfint/weight.hpp"

namespace {

using namespace halfint;

constexpr int kExitOk = 0;
constexpr int kExitUser = 1;
constexpr int kExitPrecision = 2;
constexpr int kExitInvariant = 3;

int fail(int code, const std::string& kind, const std::string& msg) {
  std::cerr << "halfint: " << kind << ": " << msg << "\n";
  return code;
}

int run_guarded(const std::function<int()>& job) {
  try {
    return job();
  } catch (const PrecisionError& e) {
    return fail(kExitPrecision, "precision", e.what());
  } catch (const PrecisionTooLow& e) {
    return fail(kExitPrecision, "precision", e.what());
  } catch (const PrecisionExhausted& e) {
    return fail(kExitPrecision, "precision", e.what());
  } catch (const InsufficientPrecision& e) {
    return fail(kExitPrecision, "precision", e.what());
  } catch (const InterpolationInsufficient& e) {
    return fail(kExitPrecision, "precision", e.what());
  } catch (const IndeterminateVertex& e) {
    return fail(kExitPrecision, "precision", e.what());
  } catch (const NonConvergence& e) {
    return fail(kExitPrecision, "precision", e.what());
  } catch (const EchelonDegenerate& e) {
    return fail(kExitInvariant, "invariant", e.what());
  } catch (const NotInSpan& e) {
    return fail(kExitInvariant, "invariant", e.what());
  } catch (const BezoutFailure& e) {
    return fail(kExitInvariant, "invariant", e.what());
  } catch (const NonCommuting& e) {
    return fail(kExitInvariant, "invariant", e.what());
  } catch (const HalfintError& e) {
    return fail(kExitUser, "error", e.what());
  } catch (const Json::exception& e) {
    return fail(kExitUser, "json", e.what());
  } catch (const std::exception& e) {
    return fail(kExitUser, "error", e.what());
  }
}

void emit_json(const Json& j, const std::string& path) {
  std::string text = j.dump(2);
  text += '\n';
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) throw DomainError("cannot write output file '" + path + "'");
}

Json load_json(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DomainError("cannot read input file '" + path + "'");
  Json j;
  in >> j;
  return j;
}

mpq_class parse_mpq(const std::string& s) {
  if (s.empty()) throw DomainError("empty rational literal");
  mpq_class x;
  if (x.set_str(s, 10) != 0) throw DomainError("bad rational literal '" + s + "'");
  x.canonicalize();
  return x;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, sep)) out.push_back(item);
  return out;
}

WildPsi parse_psi(const std::string& s) {
  auto parts = split(s, ':');
  if (parts.size() != 2) throw DomainError("psi spec must be 'conductor:index', got '" + s + "'");
  return WildPsi{std::stol(parts[0]), std::stol(parts[1])};
}

/** Weight spec: "lambda", "lambda;psi=m:t", or "w=<literal>;i=<int>". */
Weight parse_weight_spec(const std::string& spec, long p, long M) {
  auto fields = split(spec, ';');
  if (fields.empty()) throw DomainError("empty weight spec");
  if (fields[0].rfind("w=", 0) == 0) {
    mpq_class w = parse_mpq(fields[0].substr(2));
    long i = 0;
    for (size_t k = 1; k < fields.size(); ++k) {
      if (fields[k].rfind("i=", 0) == 0)
        i = std::stol(fields[k].substr(2));
      else
        throw DomainError("unknown weight spec field '" + fields[k] + "'");
    }
    return Weight::generic(p, PadicNum::from_rational(w, p, M), i);
  }
  long lambda = std::stol(fields[0]);
  WildPsi psi = WildPsi::trivial();
  for (size_t k = 1; k < fields.size(); ++k) {
    if (fields[k].rfind("psi=", 0) == 0)
      psi = parse_psi(fields[k].substr(4));
    else
      throw DomainError("unknown weight spec field '" + fields[k] + "'");
  }
  return Weight::arithmetic(p, lambda, psi);
}

void write_slope_csv(const std::string& path, const NewtonPolygon& np) {
  std::ofstream out(path, std::ios::binary);
  out << "slope,multiplicity\n";
  for (const auto& s : np.segments) out << s.slope.get_str() << "," << s.mult << "\n";
  if (!out) throw DomainError("cannot write CSV file '" + path + "'");
}

/** Options shared by the katz-pipeline subcommands. */
struct PipelineOpts {
  long p = 5;
  long lambda = 0;
  std::string psi;
  long J = 2;
  long prec = 0;   // q-terms; 0 means the subcommand default
  long M = 20;     // p-adic digits
  long slot_mult = 0;
  long tolerance = 0;
  bool render = false;
  std::string csv;
};

void add_pipeline_flags(CLI::App* cmd, PipelineOpts& o, long default_prec) {
  o.prec = default_prec;
  cmd->add_option("--p", o.p, "prime p")->check(CLI::PositiveNumber);
  cmd->add_option("--lambda", o.lambda, "arithmetic weight exponent lambda");
  cmd->add_option("--psi", o.psi, "wild character 'conductor:index'");
  cmd->add_option("--J", o.J, "basis depth (Eisenstein denominator exponent)")
      ->check(CLI::NonNegativeNumber);
  cmd->add_option("--prec", o.prec, "q-expansion terms N");
  cmd->add_option("--M", o.M, "p-adic working precision (digits)")->check(CLI::PositiveNumber);
  cmd->add_option("--slot-mult", o.slot_mult, "synthesis window multiplier (default p^2)");
  cmd->add_option("--tolerance", o.tolerance,
                  "matrix tail valuation floor (negative = exact tails required)");
}

Weight pipeline_weight(const PipelineOpts& o) {
  WildPsi psi = o.psi.empty() ? WildPsi::trivial() : parse_psi(o.psi);
  return Weight::arithmetic(o.p, o.lambda, psi);
}

struct KatzRun {
  KatzBasis B;
  CompactMatrix<PadicNum> U;
};

KatzRun katz_u_matrix(const PipelineOpts& o) {
  Weight kappa = pipeline_weight(o);
  KatzBasis B = katz_approx_basis(kappa, o.J, o.prec, o.M, o.slot_mult);
  std::function<HalfIntForm<PadicNum>(const HalfIntForm<PadicNum>&)> up =
      [&o](const HalfIntForm<PadicNum>& F) { return hecke_u(F, o.p); };
  CompactMatrix<PadicNum> U = matrix_of_operator(B, up, o.tolerance);
  return KatzRun{std::move(B), std::move(U)};
}

Json pipeline_provenance(const PipelineOpts& o, long Dw = 0) {
  return provenance_json(o.p, o.M, o.prec, o.J, Dw, nullptr);
}

// --- subcommand bodies -----------------------------------------------------

int cmd_theta(long prec, long p, const std::string& out) {
  Json j = qseries_to_json(theta_qexp(prec), p);
  j["provenance"] = provenance_json(p, 0, prec, -1, 0, nullptr);
  emit_json(j, out);
  return kExitOk;
}

int cmd_eis(long p, long lambda, const std::string& psi_spec, long prec, long M, bool rational,
            const std::string& out) {
  Json j;
  if (rational) {
    if (!psi_spec.empty()) throw DomainError("--rational requires trivial psi");
    j = qseries_to_json(eisenstein_rational(p, lambda, prec), p);
  } else {
    WildPsi psi = psi_spec.empty() ? WildPsi::trivial() : parse_psi(psi_spec);
    Weight kappa = Weight::arithmetic(p, lambda, psi);
    j = qseries_to_json(eisenstein_padic(kappa, prec, M));
  }
  j["provenance"] = provenance_json(p, rational ? 0 : M, prec, -1, 0, nullptr);
  emit_json(j, out);
  return kExitOk;
}

int cmd_weight(long p, const std::string& spec, long M, const std::string& out) {
  Weight kappa = parse_weight_spec(spec, p, M);
  Json j = weight_to_json(kappa);
  j["q"] = kappa.q();
  j["phi_q"] = kappa.phi_q();
  j["nbhd_tier"] = kappa.nbhd_tier();
  j["disc_coord"] = padic_to_json(kappa.disc_coord(M));
  j["str"] = kappa.str();
  j["provenance"] = provenance_json(p, M, 0, -1, 0, nullptr);
  emit_json(j, out);
  return kExitOk;
}

int cmd_hecke(const std::string& op, long ell, bool p2, long d, const std::string& form_path,
              const std::string& out) {
  Json in = load_json(form_path);
  std::string domain = in.at("qexp").at("domain").get<std::string>();
  long ell_used = p2 ? in.at("kappa").at("p").get<long>() : ell;
  Json j;
  if (domain == "rational") {
    HalfIntForm<mpq_class> F = form_rational_from_json(in);
    HalfIntForm<mpq_class> G = op == "T"   ? hecke_t(F, ell_used)
                               : op == "U" ? hecke_u(F, ell_used)
                                           : diamond(F, d);
    j = form_to_json(G, in.at("qexp").at("prime").get<long>());
    j["provenance"] = provenance_json(G.kappa.prime(), 0, G.qexp.N(), -1, 0, &G.r);
  } else if (domain == "padic") {
    HalfIntForm<PadicNum> F = form_padic_from_json(in);
    HalfIntForm<PadicNum> G = op == "T"   ? hecke_t(F, ell_used)
                              : op == "U" ? hecke_u(F, ell_used)
                                          : diamond(F, d);
    long M = G.qexp.a.empty() ? 0 : G.qexp.a[0].precision();
    j = form_to_json(G);
    j["provenance"] = provenance_json(G.kappa.prime(), M, G.qexp.N(), -1, 0, &G.r);
  } else {
    throw DomainError("hecke: unsupported coefficient domain '" + domain + "'");
  }
  j["op"] = op == "D" ? "D_" + std::to_string(d)
                      : op + "_" + std::to_string(ell_used) + "^2";
  emit_json(j, out);
  return kExitOk;
}

int cmd_oracle(const std::string& op, long ell, const std::string& form_path, long prec,
               bool compare, const std::string& out) {
  Json in = load_json(form_path);
  if (in.at("qexp").at("domain").get<std::string>() != "rational")
    throw DomainError("oracle: the moduli-side route needs a rational-domain form");
  HalfIntForm<mpq_class> F = form_rational_from_json(in);
  QSeries<mpq_class> moduli =
      op == "T" ? hecke_t_oracle(F, ell, prec) : hecke_u_oracle(F, ell, prec);

  Json j;
  j["op"] = op + "_" + std::to_string(ell) + "^2";
  j["provenance"] = provenance_json(F.kappa.prime(), 0, prec, -1, 0, &F.r);
  j["series"] = qseries_to_json(moduli, in.at("qexp").at("prime").get<long>());

  if (compare) {
    HalfIntForm<mpq_class> closed = op == "T" ? hecke_t(F, ell) : hecke_u(F, ell);
    if (closed.qexp.N() < prec)
      throw DomainError("oracle: form has too few terms for --prec " + std::to_string(prec) +
                        " (closed form yields " + std::to_string(closed.qexp.N()) + ")");
    for (long n = 0; n < prec; ++n) {
      if (moduli.a[(size_t)n] != closed.qexp.a[(size_t)n]) {
        j["match"] = false;
        j["mismatch_at"] = n;
        j["moduli_side"] = mpq_to_json(moduli.a[(size_t)n]);
        j["closed_form"] = mpq_to_json(closed.qexp.a[(size_t)n]);
        emit_json(j, out);
        std::cerr << "halfint: invariant: oracle mismatch at q^" << n << ": moduli side "
                  << moduli.a[(size_t)n].get_str() << " vs closed form "
                  << closed.qexp.a[(size_t)n].get_str() << "\n";
        return kExitInvariant;
      }
    }
    j["match"] = true;
    j["checked_terms"] = prec;
  }
  emit_json(j, out);
  return kExitOk;
}

int cmd_basis(const PipelineOpts& o, bool wide, const std::string& out) {
  Weight kappa = pipeline_weight(o);
  KatzBasis B = katz_approx_basis(kappa, o.J, o.prec, o.M, o.slot_mult);
  Json j = basis_to_json(B, kappa, o.J, o.M, wide);
  j["provenance"] = pipeline_provenance(o);
  emit_json(j, out);
  return kExitOk;
}

int cmd_matrix(const PipelineOpts& o, const std::string& basis_path, const std::string& op,
               long ell, const std::string& out) {
  Json j;
  if (!basis_path.empty()) {
    auto forms = basis_forms_from_json(load_json(basis_path));
    if (forms.empty()) throw DomainError("matrix: basis file has no forms");
    long p = forms[0].kappa.prime();
    ApproxBasis<PadicNum> B;
    B.wide = forms;
    B.basis = echelonize_forms(std::move(forms), "ingested from " + basis_path);
    B.slot_mult = 1;
    std::function<HalfIntForm<PadicNum>(const HalfIntForm<PadicNum>&)> act =
        [&](const HalfIntForm<PadicNum>& F) {
          return op == "T" ? hecke_t(F, ell) : hecke_u(F, op == "U" ? p : ell);
        };
    CompactMatrix<PadicNum> Mx = matrix_of_operator(B, act, o.tolerance);
    j["matrix"] = matrix_to_json(Mx);
    j["pivots"] = B.basis.pivots;
    long M = B.wide[0].qexp.a[0].precision();
    j["provenance"] = provenance_json(p, M, B.basis.q_prec, -1, 0, nullptr);
  } else {
    KatzRun run = katz_u_matrix(o);
    j["matrix"] = matrix_to_json(run.U);
    j["pivots"] = run.B.basis.pivots;
    j["provenance"] = pipeline_provenance(o);
  }
  j["op"] = op;
  emit_json(j, out);
  return kExitOk;
}

int cmd_charseries(const PipelineOpts& o, const std::string& out) {
  KatzRun run = katz_u_matrix(o);
  FredholmSeries<PadicNum> P = fredholm_coeffs(run.U.mat);
  NewtonPolygon np = newton_polygon(P);
  CompactnessDiagnostic cd = compactness_diagnostic(P);
  Json j;
  j["provenance"] = pipeline_provenance(o);
  j["dim"] = run.B.dim();
  j["series"] = fredholm_to_json(P.c);
  j["polygon"] = polygon_to_json(np);
  j["compactness"] = Json{{"last_violation", cd.last_violation}, {"tail_start", cd.tail_start}};
  if (!o.csv.empty()) write_slope_csv(o.csv, np);
  if (o.render) std::cerr << polygon_ascii(np);
  emit_json(j, out);
  return kExitOk;
}

int cmd_slopes(const PipelineOpts& o, const std::string& out) {
  KatzRun run = katz_u_matrix(o);
  FredholmSeries<PadicNum> P = fredholm_coeffs(run.U.mat);
  NewtonPolygon np = newton_polygon(P);
  Json j;
  j["provenance"] = pipeline_provenance(o);
  j["dim"] = run.B.dim();
  Json table = Json::array();
  for (const auto& s : np.segments)
    table.push_back(Json{{"slope", mpq_to_json(s.slope)}, {"mult", s.mult}});
  j["slopes"] = std::move(table);
  j["indeterminate"] = np.indeterminate;
  j["note"] = np.note;
  if (!o.csv.empty()) write_slope_csv(o.csv, np);
  if (o.render) std::cerr << polygon_ascii(np);
  emit_json(j, out);
  return kExitOk;
}

int cmd_localpiece(const PipelineOpts& o, const std::string& h_str, const std::string& gens_str,
                   long alg_tolerance, const std::string& out) {
  mpq_class h = parse_mpq(h_str);
  KatzRun run = katz_u_matrix(o);
  FredholmSeries<PadicNum> P = fredholm_coeffs(run.U.mat);
  NewtonPolygon np = newton_polygon(P);
  SlopeFactorization sf = slope_factor(P, h);
  LocalPiece piece = riesz_decompose(run.U.mat, sf.Q);

  std::vector<Mat<PadicNum>> gens;
  std::vector<long> gen_ells;
  for (const auto& tok : split(gens_str, ',')) {
    if (tok.empty()) continue;
    long ell = std::stol(tok);
    std::function<HalfIntForm<PadicNum>(const HalfIntForm<PadicNum>&)> act =
        [ell](const HalfIntForm<PadicNum>& F) { return hecke_t(F, ell); };
    gens.push_back(matrix_of_operator(run.B, act, o.tolerance).mat);
    gen_ells.push_back(ell);
  }
  long tol = alg_tolerance >= 0 ? alg_tolerance : std::max(1L, o.M - 5);
  piece = local_hecke_algebra(std::move(piece), run.U.mat, gens, tol);

  Json piece_json = local_piece_to_json(piece);
  Json packets = piece_json.at("packets");
  piece_json.erase("packets");
  Json j;
  j["provenance"] = pipeline_provenance(o);
  j["h"] = mpq_to_json(h);
  j["generators"] = gen_ells;
  j["algebra_tolerance"] = tol;
  j["series"] = fredholm_to_json(P.c);
  j["polygon"] = polygon_to_json(np);
  j["piece"] = std::move(piece_json);
  j["packets"] = std::move(packets);
  j["factor_residual_valuation"] = sf.residual_valuation;
  if (!o.csv.empty()) write_slope_csv(o.csv, np);
  if (o.render) std::cerr << polygon_ascii(np);
  emit_json(j, out);
  return kExitOk;
}

int cmd_classicality(PipelineOpts o, const std::string& slopes_str, const std::string& out) {
  std::vector<mpq_class> slopes;
  Json j;
  if (!slopes_str.empty()) {
    for (const auto& tok : split(slopes_str, ','))
      if (!tok.empty()) slopes.push_back(parse_mpq(tok));
    j["provenance"] = provenance_json(0, 0, 0, -1, 0, nullptr);
  } else {
    KatzRun run = katz_u_matrix(o);
    FredholmSeries<PadicNum> P = fredholm_coeffs(run.U.mat);
    slopes = slope_list(newton_polygon(P));
    j["provenance"] = pipeline_provenance(o);
  }
  ClassicalityReport report = classicality_report(slopes, o.lambda);
  Json body = classicality_to_json(report);
  for (auto& [key, val] : body.items()) j[key] = val;
  emit_json(j, out);
  return kExitOk;
}

int cmd_family(const PipelineOpts& o, long Dw, long cluster_c, const std::string& weights_str,
               const std::string& out) {
  auto frame = make_family_frame(o.p, o.M, o.lambda, Dw, cluster_c);
  KatzFamilyBasis FB = katz_family_basis(frame, o.J, o.prec, o.slot_mult);
  std::function<HalfIntForm<FamilyElt>(const HalfIntForm<FamilyElt>&)> up =
      [&o](const HalfIntForm<FamilyElt>& F) { return hecke_u(F, o.p); };
  CompactMatrix<FamilyElt> Uw = matrix_of_operator(FB, up, o.tolerance);
  FredholmSeries<FamilyElt> Pw = fredholm_coeffs(Uw.mat);

  Json j;
  j["provenance"] = provenance_json(o.p, o.M, o.prec, o.J, Dw, nullptr);
  j["dim"] = FB.dim();
  j["node_lambdas"] = frame->lambdas;
  Json series = Json::array();
  for (const auto& c : Pw.c) {
    Json vals = Json::array();
    for (const auto& v : c.values()) vals.push_back(padic_to_json(v));
    series.push_back(Json{{"values", std::move(vals)}});
  }
  j["series"] = std::move(series);

  Json checks = Json::array();
  for (const auto& tok : split(weights_str, ',')) {
    if (tok.empty()) continue;
    long lam = std::stol(tok);
    Weight kappa = Weight::arithmetic(o.p, lam);
    FamilySpectralCheck chk = family_fredholm_check(Uw.mat, kappa);
    NewtonPolygon np = newton_polygon(FredholmSeries<PadicNum>{chk.recomputed});
    Json e;
    e["lambda"] = lam;
    e["agreement_valuation"] = chk.agreement_valuation;
    e["specialized"] = fredholm_to_json(chk.specialized);
    e["recomputed"] = fredholm_to_json(chk.recomputed);
    Json segs = Json::array();
    for (const auto& s : np.segments)
      segs.push_back(Json{{"slope", mpq_to_json(s.slope)}, {"mult", s.mult}});
    e["slopes"] = std::move(segs);
    checks.push_back(std::move(e));
  }
  j["checks"] = std::move(checks);
  emit_json(j, out);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"half-integral-weight p-adic modular forms pipeline"};
  app.require_subcommand(1);
  std::function<int()> job;

  // theta
  long th_prec = 10, th_p = 0;
  std::string th_out = "-";
  auto* th = app.add_subcommand("theta", "q-expansion of theta = 1 + 2q + 2q^4 + ...");
  th->add_option("--prec", th_prec, "number of q-terms")->required()->check(CLI::PositiveNumber);
  th->add_option("--p", th_p, "prime tag for the emitted series (0 = untagged)");
  th->add_option("-o,--output", th_out, "output path (default stdout)");
  th->callback([&] { job = [&] { return cmd_theta(th_prec, th_p, th_out); }; });

  // eis
  long e_p = 5, e_lambda = 4, e_prec = 50, e_M = 20;
  bool e_rational = false;
  std::string e_psi, e_out = "-";
  auto* ei = app.add_subcommand("eis", "p-deprived Eisenstein series E_lambda");
  ei->add_option("--p", e_p, "prime p")->required()->check(CLI::PositiveNumber);
  ei->add_option("--lambda", e_lambda, "weight exponent lambda")->required();
  ei->add_option("--psi", e_psi, "wild character 'conductor:index'");
  ei->add_option("--prec", e_prec, "number of q-terms")->check(CLI::PositiveNumber);
  ei->add_option("--M", e_M, "p-adic digits (p-adic route)")->check(CLI::PositiveNumber);
  ei->add_flag("--rational", e_rational, "exact rational route (needs phi(q) | lambda)");
  ei->add_option("-o,--output", e_out, "output path (default stdout)");
  ei->callback([&] {
    job = [&] { return cmd_eis(e_p, e_lambda, e_psi, e_prec, e_M, e_rational, e_out); };
  });

  // weight
  long w_p = 5, w_M = 20;
  std::string w_spec, w_out = "-";
  auto* wt = app.add_subcommand("weight", "parse and describe a weight character");
  wt->add_option("--p", w_p, "prime p")->required()->check(CLI::PositiveNumber);
  wt->add_option("--weight", w_spec, "spec: 'lambda', 'lambda;psi=m:t', or 'w=<lit>;i=<int>'")
      ->required();
  wt->add_option("--M", w_M, "p-adic digits for derived values")->check(CLI::PositiveNumber);
  wt->add_option("-o,--output", w_out, "output path (default stdout)");
  wt->callback([&] { job = [&] { return cmd_weight(w_p, w_spec, w_M, w_out); }; });

  // hecke
  std::string h_op = "T", h_form, h_out = "-";
  long h_ell = 3, h_d = 1;
  bool h_p2 = false;
  auto* hk = app.add_subcommand("hecke", "apply T_{ell^2}, U_{ell^2}, or a diamond operator");
  hk->add_option("--op", h_op, "operator: T, U, or D (diamond)")
      ->check(CLI::IsMember({"T", "U", "D"}));
  hk->add_option("--ell", h_ell, "prime index ell");
  hk->add_flag("--p2", h_p2, "use ell = p from the form's weight (U_{p^2})");
  hk->add_option("--d", h_d, "diamond argument d");
  hk->add_option("--form", h_form, "input form JSON")->required();
  hk->add_option("-o,--output", h_out, "output path (default stdout)");
  hk->callback([&] { job = [&] { return cmd_hecke(h_op, h_ell, h_p2, h_d, h_form, h_out); }; });

  // oracle
  std::string o_op = "T", o_form, o_out = "-";
  long o_ell = 3, o_prec = 40;
  bool o_compare = false;
  auto* orc = app.add_subcommand("oracle", "moduli-side Hecke action (independent route)");
  orc->add_option("--op", o_op, "operator: T or U")->check(CLI::IsMember({"T", "U"}));
  orc->add_option("--ell", o_ell, "prime index ell")->check(CLI::PositiveNumber);
  orc->add_option("--form", o_form, "input form JSON (rational domain)")->required();
  orc->add_option("--prec", o_prec, "output q-terms")->check(CLI::PositiveNumber);
  orc->add_flag("--compare", o_compare, "compare against the closed form; mismatch exits 3");
  orc->add_option("-o,--output", o_out, "output path (default stdout)");
  orc->callback(
      [&] { job = [&] { return cmd_oracle(o_op, o_ell, o_form, o_prec, o_compare, o_out); }; });

  // basis
  PipelineOpts b_opts;
  bool b_wide = false;
  std::string b_out = "-";
  auto* bs = app.add_subcommand("basis", "echelonized Katz approximation basis");
  add_pipeline_flags(bs, b_opts, 60);
  bs->add_flag("--wide", b_wide, "emit the synthesis-window forms instead of truncations");
  bs->add_option("-o,--output", b_out, "output path (default stdout)");
  bs->callback([&] { job = [&] { return cmd_basis(b_opts, b_wide, b_out); }; });

  // matrix
  PipelineOpts m_opts;
  std::string m_basis, m_op = "U", m_out = "-";
  long m_ell = 3;
  auto* mx = app.add_subcommand("matrix", "operator matrix on a basis (built or ingested)");
  add_pipeline_flags(mx, m_opts, 60);
  mx->add_option("--basis", m_basis, "ingest forms from a basis JSON file");
  mx->add_option("--op", m_op, "operator: U (at p) or T")->check(CLI::IsMember({"T", "U"}));
  mx->add_option("--ell", m_ell, "prime index for --op T");
  mx->add_option("-o,--output", m_out, "output path (default stdout)");
  mx->callback([&] { job = [&] { return cmd_matrix(m_opts, m_basis, m_op, m_ell, m_out); }; });

  // charseries
  PipelineOpts c_opts;
  std::string c_out = "-";
  auto* cs = app.add_subcommand("charseries", "Fredholm series det(1 - T U) and Newton polygon");
  add_pipeline_flags(cs, c_opts, 120);
  cs->add_option("--csv", c_opts.csv, "also write a slope,multiplicity CSV");
  cs->add_flag("--render", c_opts.render, "ASCII Newton polygon on stderr");
  cs->add_option("-o,--output", c_out, "output path (default stdout)");
  cs->callback([&] { job = [&] { return cmd_charseries(c_opts, c_out); }; });

  // slopes
  PipelineOpts s_opts;
  std::string s_out = "-";
  auto* sl = app.add_subcommand("slopes", "U_{p^2} slope table from the Newton polygon");
  add_pipeline_flags(sl, s_opts, 200);
  sl->add_option("--csv", s_opts.csv, "also write a slope,multiplicity CSV");
  sl->add_flag("--render", s_opts.render, "ASCII Newton polygon on stderr");
  sl->add_option("-o,--output", s_out, "output path (default stdout)");
  sl->callback([&] { job = [&] { return cmd_slopes(s_opts, s_out); }; });

  // localpiece
  PipelineOpts l_opts;
  std::string l_h = "1", l_gens = "3", l_out = "-";
  long l_alg_tol = -1;
  auto* lp = app.add_subcommand("localpiece", "Riesz projector and eigen-packets below slope h");
  lp->set_help_flag("--help", "print help");  // frees -h for the slope bound
  add_pipeline_flags(lp, l_opts, 120);
  lp->add_option("--h", l_h, "slope bound (rational)")->required();
  lp->add_option("--gens", l_gens, "comma list of primes ell for T_{ell^2} generators");
  lp->add_option("--alg-tolerance", l_alg_tol,
                 "commutation/eigenvector certification floor (default M-5)");
  lp->add_option("--csv", l_opts.csv, "also write a slope,multiplicity CSV");
  lp->add_flag("--render", l_opts.render, "ASCII Newton polygon on stderr");
  lp->add_option("-o,--output", l_out, "output path (default stdout)");
  lp->callback(
      [&] { job = [&] { return cmd_localpiece(l_opts, l_h, l_gens, l_alg_tol, l_out); }; });

  // classicality
  PipelineOpts g_opts;
  std::string g_slopes, g_out = "-";
  auto* cl = app.add_subcommand("classicality", "classical-guarantee tags for a slope table");
  add_pipeline_flags(cl, g_opts, 120);
  cl->add_option("--slopes", g_slopes, "explicit comma list of slopes (skips the pipeline)");
  cl->add_option("-o,--output", g_out, "output path (default stdout)");
  cl->callback([&] { job = [&] { return cmd_classicality(g_opts, g_slopes, g_out); }; });

  // family
  PipelineOpts f_opts;
  long f_Dw = 4, f_c = 2;
  std::string f_weights, f_out = "-";
  auto* fm = app.add_subcommand("family", "family Fredholm series over a weight disk");
  add_pipeline_flags(fm, f_opts, 60);
  fm->add_option("--Dw", f_Dw, "family polynomial degree")->check(CLI::PositiveNumber);
  fm->add_option("--c", f_c, "node cluster exponent (spacing phi(q) p^c)")
      ->check(CLI::PositiveNumber);
  fm->add_option("--weights", f_weights, "comma list of arithmetic lambdas to cross-check");
  fm->add_option("-o,--output", f_out, "output path (default stdout)");
  fm->callback([&] { job = [&] { return cmd_family(f_opts, f_Dw, f_c, f_weights, f_out); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUser;
  }
  return run_guarded(job);
}
