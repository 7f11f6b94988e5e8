#include "orbifold/ramond.hpp"

namespace orbifold {

int ramond_vacuum() { return FockSpace::ramond().vacuum(); }

QVec ramond_mode(long n, const QVec& s) { return apply_psi(FockSpace::ramond(), static_cast<int>(2 * n), s); }

CVec ramond_mode(long n, const CVec& s) { return apply_psi_s(FockSpace::ramond(), static_cast<int>(2 * n), s); }

QVec sigma_virasoro(long n, const QVec& s) {
  return VertexEngine::shared(Sector::R).mode(omega_state(), FracExp(n + 1), s);
}

Field sigma_vertex_op(const QVec& v, const FracExp& lo, const FracExp& hi, int max_level2) {
  VertexEngine& E = VertexEngine::shared(Sector::R);
  Field f;
  f.sector = Sector::R;
  f.parity = state_parity(v);
  f.lo = lo;
  f.hi = hi;
  f.max_level2 = max_level2;
  const FracExp off = E.offset(f.parity);
  // exponent e = -t-1 with t in off + Z
  for (int w : FockSpace::ramond().basis_up_to(max_level2))
    for (FracExp e = FracExp((lo + off).ceil()) - off; e <= hi; e += 1) {
      QVec img = E.mode(v, -e - FracExp(1), QVec(w, 1));
      if (!img.empty()) f.terms[e][w] = to_cyc(img);
    }
  return f;
}

nlohmann::ordered_json QSeries::to_json() const {
  nlohmann::ordered_json j;
  j["offset"] = to_string(offset);
  if (step != 1) j["step"] = to_string(step);
  j["coeffs"] = coeffs;
  return j;
}

long QSeries::at(const Rational& lambda) const {
  Rational n = (lambda - offset) / step;
  if (n.get_den() != 1 || sgn(n) < 0) return 0;
  if (n.get_num() >= static_cast<long>(coeffs.size())) return 0;
  return coeffs[n.get_num().get_si()];
}

Rational sigma_L0_eigenvalue(int id) {
  QVec img = sigma_virasoro(0, QVec(id, 1));
  Rational d = img.coeff(id);
  if (!(img == QVec(id, d))) throw std::logic_error("L^sigma(0) is not diagonal on the mode basis");
  return d;
}

QSeries sigma_L0_spectrum(const Rational& cutoff) {
  QSeries s;
  s.offset = sigma_L0_eigenvalue(ramond_vacuum());
  Rational span = cutoff - s.offset;
  if (sgn(span) < 0) return s;
  mpz_class top = span.get_num() / span.get_den();
  const int max_level2 = static_cast<int>(2 * top.get_si());
  s.coeffs.assign(top.get_si() + 1, 0);
  for (int id : FockSpace::ramond().basis_up_to(max_level2)) {
    Rational n = sigma_L0_eigenvalue(id) - s.offset;
    if (n.get_den() != 1 || sgn(n) < 0) throw std::logic_error("L^sigma(0) spectrum leaves the offset lattice");
    if (n.get_num() < static_cast<long>(s.coeffs.size())) ++s.coeffs[n.get_num().get_si()];
  }
  return s;
}

std::vector<CVec> parity_unstable_basis(int sign, int max_level2) {
  FockSpace& F = FockSpace::ramond();
  const CycScalar r2 = cyc_sqrt_k(2);
  std::vector<CVec> out;
  for (int id : F.basis_up_to(max_level2)) {
    const auto& m = F.modes(id);
    if (!m.empty() && m.back() == 0) continue;
    CVec v(id, CycScalar(1));
    CycScalar c = r2 * CycScalar(static_cast<long>(((m.size() & 1) ? -sign : sign)));
    v += apply_psi_s(F, 0, CVec(id, CycScalar(1))) * c;
    out.push_back(v);
  }
  return out;
}

}  // namespace orbifold
