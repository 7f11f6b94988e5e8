#pragma once

#include <map>
#include <stdexcept>
#include <unordered_map>

#include "orbifold/deltak.hpp"
#include "orbifold/ramond.hpp"

namespace orbifold {

// Raised when U is asked to take (x^k)^{1/k} = eta^j x with j != 0.
class BranchViolation : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class OddOrderError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Twisted operators on M_sigma for g = (1 2 ... k). Mode index n means the coefficient of x^{-n-1}.
// Ybar(u)_n = sum over Delta_k(x)u components u_f x^f of u_f^sigma_(k(n+1+f)-1).
// Y_g(u^j)_n = eta^{-(j-1)kn} Ybar(u)_n with eta = exp(2 pi i/k) = zeta_{4k}^4.
// Any k >= 1 evaluates; only even k yields a twisted module (odd k is for the obstruction check).
// Memo tables make an instance single-threaded.
class TwistContext {
 public:
  // peel_last selects the last non-vacuum slot in the iterate instead of the first (cross-check path).
  explicit TwistContext(int k, bool peel_last = false);
  int k() const { return k_; }
  int conductor() const { return 4 * k_; }
  // eta^e for e in (1/4)Z
  CycScalar eta_pow(const FracExp& e) const;

  CVec ybar_mode(int u, const FracExp& n, int w);
  CVec ybar_mode(const QVec& u, const FracExp& n, const CVec& w);
  CVec ybar_mode(const CVec& u, const FracExp& n, const CVec& w);
  // Y_g(u^j)_n, j in 1..k
  CVec factor_mode(const QVec& u, int j, const FracExp& n, const CVec& w);
  // Y_g(P)_n for a pure tensor through the eigencomponent iterate.
  const CVec& yg_mode(const Pure& P, const FracExp& n, int w);
  CVec yg_mode(const Pure& P, const FracExp& n, const CVec& w);
  CVec yg_mode(const TCVec& P, const FracExp& n, const CVec& w);
  // L^g(0) = sum_j Y_g(omega^j)_1
  CVec lg0(const CVec& w);
  // U: Y_sigma(u)_(m) = sum_j Y_g(u[j]^1)_{((k-1)p - jk - k + m + 1)/k}, branch must be 0.
  CVec u_sigma_mode(const QVec& u, const FracExp& m, const CVec& w, int branch = 0);
  // T after U: Ybar rebuilt from the U-side sigma modes.
  CVec tu_ybar_mode(const QVec& u, const FracExp& n, const CVec& w);

  // T-grade of a Ramond basis vector: its level divided by k.
  FracExp t_grade(int w) const;

 private:
  int k_;
  bool peel_last_;
  struct Key {
    Pure p;
    FracExp n;
    int w;
    bool operator<(const Key& o) const { return std::tie(p, n, w) < std::tie(o.p, o.n, o.w); }
  };
  std::map<std::tuple<int, FracExp, int>, CVec> ybar_memo_;
  std::map<Key, CVec> yg_memo_;
  CVec yg_compute(const Pure& P, const FracExp& n, int w);
};

// Matrices of twisted operators on Ramond sources of twice-level <= max_level2. Exponents step by 1/2k.
Field ybar_field(TwistContext& T, const QVec& u, const FracExp& lo, const FracExp& hi, int max_level2);
Field yg_tensor_factor(TwistContext& T, const QVec& u, int j, const FracExp& lo, const FracExp& hi, int max_level2);
Field yg_general(TwistContext& T, const Pure& P, const FracExp& lo, const FracExp& hi, int max_level2);
std::map<int, CVec> twisted_mode(TwistContext& T, const QVec& u, const FracExp& m, int max_level2);
Field u_functor_sigma_op(TwistContext& T, const QVec& u, const FracExp& lo, const FracExp& hi, int max_level2,
                         int branch = 0);

// T_g^k(M_sigma) up to a sigma-level cutoff. Construction rejects odd k.
class TwistedModuleView {
 public:
  TwistedModuleView(int k, int max_level);
  int k() const { return k_; }
  int max_level() const { return max_level_; }
  const std::vector<int>& basis() const { return basis_; }
  FracExp t_grade(int w) const;
  // diagonal entry of L^g(0) computed through the twisted modes
  CycScalar lg0_eigenvalue(int w);
  // (1/k) L^sigma(0) + (k^2-1)c/(24k)
  Rational predicted_lg0(int w) const;
  nlohmann::ordered_json summary();
  TwistContext& context() { return ctx_; }

 private:
  int k_, max_level_;
  TwistContext ctx_;
  std::vector<int> basis_;
};

void require_even_order(int k);

}  // namespace orbifold
