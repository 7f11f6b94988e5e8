#pragma once

#include "orbifold/fermion.hpp"

namespace orbifold {

// Ground vector v_R of M_sigma; its L^sigma(0) eigenvalue comes out of the iterate, not a constant.
int ramond_vacuum();

// psi_n on Ramond states, n in Z. psi_0^2 = 1/2.
QVec ramond_mode(long n, const QVec& s);
CVec ramond_mode(long n, const CVec& s);

// L^sigma(n) = omega^sigma_(n+1).
QVec sigma_virasoro(long n, const QVec& s);

// Y_sigma(v,x) materialized on Ramond sources of twice-level <= max_level2.
// Exponents run over [lo, hi] on the |v|/2 + Z lattice.
Field sigma_vertex_op(const QVec& v, const FracExp& lo, const FracExp& hi, int max_level2);

// Truncated graded dimension sum_n coeffs[n] q^{offset + n*step}.
struct QSeries {
  Rational offset;
  Rational step = 1;
  std::vector<long> coeffs;

  nlohmann::ordered_json to_json() const;
  long at(const Rational& lambda) const;  // 0 off the lattice or beyond the truncation
};

// Diagonal entry of L^sigma(0) on a Ramond basis vector, computed through the engine.
Rational sigma_L0_eigenvalue(int id);
// Graded dimension over L^sigma(0) eigenvalues lambda <= cutoff.
QSeries sigma_L0_spectrum(const Rational& cutoff);

// The two parity-unstable invariant subspaces W+ and W- (sign = +1 / -1): for each basis vector b
// without the zero mode, b + sign (-1)^{len b} sqrt(2) psi_0 b. Their direct sum is M_sigma.
std::vector<CVec> parity_unstable_basis(int sign, int max_level2);

}  // namespace orbifold
