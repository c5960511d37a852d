// Thin JSON-string bindings over the library pipelines; every function
// returns the same artifact shape the CLI writes, as a serialized string.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <halfint/basis.hpp>
#include <halfint/eis_theta.hpp>
#include <halfint/errors.hpp>
#include <halfint/forms.hpp>
#include <halfint/json_io.hpp>
#include <halfint/spectral.hpp>
#include <halfint/tate_oracle.hpp>

namespace py = pybind11;
using namespace halfint;

namespace {

struct UPipeline {
  KatzBasis basis;
  CompactMatrix<PadicNum> U;
};

UPipeline build_u_pipeline(long p, long lambda, long J, long prec, long M) {
  Weight kappa = Weight::arithmetic(p, lambda);
  UPipeline out{katz_approx_basis(kappa, J, prec, M), {}};
  out.U = matrix_of_operator<PadicNum>(
      out.basis, [p](const HalfIntForm<PadicNum>& f) { return hecke_u(f, p); }, 0);
  return out;
}

std::string theta_json(long p, long prec) {
  return form_to_json(theta_form(p, prec), p).dump();
}

std::string eisenstein_json(long p, long lambda, long prec) {
  return qseries_to_json(eisenstein_rational(p, lambda, prec), p).dump();
}

std::string eisenstein_padic_json(long p, long lambda, long prec, long M) {
  return qseries_to_json(eisenstein_padic(Weight::arithmetic(p, lambda), prec, M)).dump();
}

std::string weight_json(long p, long lambda) {
  return weight_to_json(Weight::arithmetic(p, lambda)).dump();
}

std::string hecke_t_json(const std::string& form_json, long ell) {
  auto F = form_rational_from_json(Json::parse(form_json));
  return form_to_json(hecke_t(F, ell), F.kappa.prime()).dump();
}

std::string hecke_u_json(const std::string& form_json) {
  auto F = form_rational_from_json(Json::parse(form_json));
  return form_to_json(hecke_u(F, F.kappa.prime()), F.kappa.prime()).dump();
}

std::string oracle_t_json(const std::string& form_json, long ell, long prec) {
  auto F = form_rational_from_json(Json::parse(form_json));
  auto orc = hecke_t_oracle(F, ell, prec);
  auto direct = truncate(hecke_t(F, ell).qexp, prec);
  Json out;
  out["oracle"] = qseries_to_json(orc, F.kappa.prime());
  out["direct"] = qseries_to_json(direct, F.kappa.prime());
  bool agree = true;
  for (long n = 0; n < prec && agree; ++n) agree = orc.a[(size_t)n] == direct.a[(size_t)n];
  out["agree"] = agree;
  return out.dump();
}

std::string katz_basis_json(long p, long lambda, long J, long prec, long M) {
  Weight kappa = Weight::arithmetic(p, lambda);
  return basis_to_json(katz_approx_basis(kappa, J, prec, M), kappa, J, M, false).dump();
}

std::string u_matrix_json(long p, long lambda, long J, long prec, long M) {
  return matrix_to_json(build_u_pipeline(p, lambda, J, prec, M).U).dump();
}

std::string charseries_json(long p, long lambda, long J, long prec, long M) {
  auto pipe = build_u_pipeline(p, lambda, J, prec, M);
  auto P = fredholm_coeffs(pipe.U.mat);
  Json out;
  out["fredholm"] = fredholm_to_json(P.c);
  out["polygon"] = polygon_to_json(newton_polygon(P));
  return out.dump();
}

std::string classicality_json_py(const std::vector<std::string>& slopes, long lambda) {
  std::vector<mpq_class> s;
  for (const auto& t : slopes) s.emplace_back(t);
  for (auto& x : s) x.canonicalize();
  return classicality_to_json(classicality_report(s, lambda)).dump();
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "overconvergent half-integral weight pipelines (JSON-string API)";
  py::register_exception<HalfintError>(m, "HalfintError");

  m.def("theta", &theta_json, py::arg("p"), py::arg("prec"),
        "theta series as a rational form artifact");
  m.def("eisenstein", &eisenstein_json, py::arg("p"), py::arg("lambda_"), py::arg("prec"),
        "p-deprived Eisenstein series, exact rational route");
  m.def("eisenstein_padic", &eisenstein_padic_json, py::arg("p"), py::arg("lambda_"),
        py::arg("prec"), py::arg("M"), "p-deprived Eisenstein series mod p^M");
  m.def("weight", &weight_json, py::arg("p"), py::arg("lambda_"),
        "arithmetic weight descriptor");
  m.def("hecke_t", &hecke_t_json, py::arg("form_json"), py::arg("ell"),
        "apply T_{ell^2} to a rational form artifact");
  m.def("hecke_u", &hecke_u_json, py::arg("form_json"),
        "apply U_{p^2} at the form's own prime");
  m.def("oracle_t", &oracle_t_json, py::arg("form_json"), py::arg("ell"), py::arg("prec"),
        "orbit-sum recomputation of T_{ell^2} next to the coefficient formula");
  m.def("katz_basis", &katz_basis_json, py::arg("p"), py::arg("lambda_"), py::arg("J"),
        py::arg("prec"), py::arg("M"), "echelonized approximation basis artifact");
  m.def("u_matrix", &u_matrix_json, py::arg("p"), py::arg("lambda_"), py::arg("J"),
        py::arg("prec"), py::arg("M"), "matrix of U_{p^2} on the approximation basis");
  m.def("charseries", &charseries_json, py::arg("p"), py::arg("lambda_"), py::arg("J"),
        py::arg("prec"), py::arg("M"), "Fredholm series and Newton polygon of U_{p^2}");
  m.def("classicality", &classicality_json_py, py::arg("slopes"), py::arg("lambda_"),
        "classical-guarantee tags for a slope table");
}
