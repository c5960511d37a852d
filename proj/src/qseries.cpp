#include "halfint/qseries.hpp"

namespace halfint {

CycloElt coeff_inv(const CycloElt& x) {
  // Inverses are only taken where the oracle needs them: rational elements.
  // (General cyclotomic division would need the full norm form; nothing in
  // the pipeline divides by a genuinely irrational element.)
  if (x.is_zero()) throw DomainError("CycloElt inverse of zero");
  if (!x.is_rational())
    throw DomainError("CycloElt inverse: only rational elements are invertible here");
  return CycloElt(x.conductor(), coeff_inv(x.rational_part()));
}

QSeries<CycloElt> twist_by_zeta(const QSeries<CycloElt>& f, long m, long a) {
  long cond = f.proto.conductor();
  if (m < 1 || cond % m != 0)
    throw DomainLacksRoot("twist_by_zeta: conductor " + std::to_string(cond) +
                          " lacks a root of unity of order " + std::to_string(m));
  long step = cond / m;
  long aa = ((a % m) + m) % m;
  QSeries<CycloElt> r = f;
  for (long n = 0; n < f.N(); ++n) {
    if (f.a[n].is_zero()) continue;
    r.a[(size_t)n] = f.a[n].times_zeta(step * ((aa * (n % m)) % m));
  }
  return r;
}

QSeries<CycloElt> substitute_root_of_unity(const QSeries<CycloElt>& f, long a) {
  return twist_by_zeta(f, f.D, a);
}

QSeries<mpq_class> substitute_root_of_unity(const QSeries<mpq_class>& f, long a) {
  // Q contains only the roots of unity of order 1 and 2.
  if (f.D == 1) return f;
  if (f.D != 2)
    throw DomainLacksRoot("substitute_root_of_unity: rational domain has no zeta_" +
                          std::to_string(f.D));
  QSeries<mpq_class> r = f;
  for (long n = 0; n < f.N(); ++n)
    if ((a * n) % 2 != 0) r.a[(size_t)n] = -f.a[n];
  return r;
}

QSeries<mpq_class> to_rational(const QSeries<CycloElt>& f) {
  QSeries<mpq_class> r{f.D, std::vector<mpq_class>(), mpq_class(0)};
  r.a.reserve((size_t)f.N());
  for (long n = 0; n < f.N(); ++n) r.a.push_back(f.a[n].rational_part());
  return r;
}

QSeries<CycloElt> to_cyclotomic(const QSeries<mpq_class>& f, long conductor) {
  CycloElt proto = CycloElt::zero(conductor);
  QSeries<CycloElt> r{f.D, std::vector<CycloElt>(), proto};
  r.a.reserve((size_t)f.N());
  for (long n = 0; n < f.N(); ++n) r.a.push_back(CycloElt(conductor, f.a[n]));
  return r;
}

QSeries<PadicNum> to_padic(const QSeries<mpq_class>& f, long p, long M) {
  PadicNum proto = PadicNum::zero(p, M);
  QSeries<PadicNum> r{f.D, std::vector<PadicNum>(), proto};
  r.a.reserve((size_t)f.N());
  for (long n = 0; n < f.N(); ++n) r.a.push_back(PadicNum::from_rational(f.a[n], p, M));
  return r;
}

}  // namespace halfint
