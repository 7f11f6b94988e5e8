#pragma once

#include <map>
#include <string>
#include <vector>

#include "orbifold/fermion.hpp"
#include "orbifold/formal.hpp"
#include "orbifold/report.hpp"

namespace orbifold {

// Coefficients a_1..a_J defined by exp(-sum a_j x^{j+1} d/dx) x = ((1+x)^k - 1)/k.
struct AjTable {
  int k = 1;
  int J = 0;
  std::vector<Rational> a;  // a[0] unused

  const Rational& operator()(int j) const { return a.at(j); }
  std::string to_csv() const;
};

// Memoized per (k, J); the cache is mutex-guarded.
const AjTable& solve_aj(int k, int J);

// Coefficients c_0..c_order of exp(sign * D) x for D = sum_j a_j x^{j+1} d/dx.
std::vector<Rational> exp_derivation_x(const AjTable& t, int sign, int order);
// (1 + kx)^{1/k} - 1 through x^order by the binomial series.
std::vector<Rational> compositional_inverse_oracle(int k, int order);

// Series in (x, z). With with_z false the variable z is set to 1.
ScalarSeries f_series(int k, bool with_z);
ScalarSeries f_inverse_series(int k, bool with_z, int order);
// f(f^{-1}(x)) through x^order.
ScalarSeries compose_f_finv(int k, bool with_z, int order);
CheckReport check_f_inverse(int k, int order);

enum class Direction { Forward, Inverse };

struct DeltaOp {
  int k = 1;
  int depth = 0;  // 0 picks the smallest depth covering the state
  Direction direction = Direction::Forward;
};

// Forward: u(j) at exponent p/k - p - j/k. Inverse: u[j] at exponent p - p/k - j.
struct DeltaTerm {
  int j;
  FracExp exponent;
  CVec state;
};

// u must be homogeneous; throws std::invalid_argument otherwise.
std::vector<DeltaTerm> apply_delta(const DeltaOp& op, const QVec& u);

// z-exponent -> state. Linear extension of apply_delta to arbitrary states.
using ZSeries = std::map<FracExp, CVec>;
ZSeries apply_delta_series(int k, Direction dir, const CVec& u);
ZSeries apply_delta_series(int k, Direction dir, const ZSeries& u);
nlohmann::ordered_json zseries_to_json(const ZSeries& s, Sector sector = Sector::NS);

CheckReport check_delta_roundtrip(int k, int max_level2);
// Both sides coefficientwise in z0^c for c <= depth on NS targets of twice-level <= max_level2.
CheckReport check_conjugation(int k, const QVec& u, const std::string& uname, int max_level2, int depth);
CheckReport check_L_minus1_identities(int k, int max_level2);

}  // namespace orbifold
