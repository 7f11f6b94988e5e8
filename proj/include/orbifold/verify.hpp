#pragma once

#include <string>
#include <vector>

#include "orbifold/twist.hpp"

namespace orbifold {

// Mode window: modes a, b range over [-depth, depth] on the (1/2k)Z lattice; Ramond sources have
// sigma-level <= max_level.
struct ModeWindow {
  int depth = 2;
  int max_level = 3;
  nlohmann::ordered_json to_json() const;
};

// Named generators of V: "1", "psi", "omega", or a basis label such as "psi(-3/2)|0>".
QVec named_state(const std::string& name);

// [Ybar(u)_a, Ybar(v)_b] against (1/k) sum_q C(a,q) Ybar(u_(q)v)_{a+b-q}, kept where k(a+s) is integral.
// factor_exp s = 0 is the even-k identity; s = |u|/2k carries the extra ((x1-x0)/x2)^s factor.
CheckReport check_supercommutator(TwistContext& T, const std::string& u, const std::string& v, const ModeWindow& w,
                                  const FracExp& factor_exp, const std::string& name);
CheckReport check_even_supercommutator(TwistContext& T, const std::string& u, const std::string& v,
                                       const ModeWindow& w);
// Report A: the even identity, expected to fail for odd u. Report B: the odd-k identity, expected to pass.
std::pair<CheckReport, CheckReport> check_odd_obstruction(TwistContext& T, const std::string& u, const std::string& v,
                                                          const ModeWindow& w);
// [Y_g(u^j)_a, Y_g(v^m)_b] with the eta^{j-m} kernel.
CheckReport check_factor_commutator(TwistContext& T, const std::string& u, int j, const std::string& v, int m,
                                    const ModeWindow& w);
// Full three-term identity for Y_g(u^i, x1), Y_g(v^l, x2) at x0^{-l-1} for |l| <= w.depth.
CheckReport check_twisted_jacobi(TwistContext& T, const std::string& u, int i, const std::string& v, int l,
                                 const ModeWindow& w);
// Smallest N <= max_n with (x1-x2)^N [Y_g(u^j,x1), Y_g(v^m,x2)] = 0 on the window; the report stores N.
CheckReport check_locality(TwistContext& T, const std::string& u, int j, const std::string& v, int m,
                           const ModeWindow& w, int max_n, int* found = nullptr);
// Y_g(gP)_n = eta^{kn} Y_g(P)_n, and g^k acts trivially.
CheckReport check_limit_axiom(TwistContext& T, const Pure& P, const ModeWindow& w);
// Ybar(L(-1)u)_n = -n Ybar(u)_{n-1}.
CheckReport check_ybar_derivative(TwistContext& T, const std::string& u, const ModeWindow& w);
// Ybar(omega)_1 - k^{-2} L^sigma(0) = (k^2-1)c/(24k^2), and the sum over the k factors.
CheckReport check_central_term(TwistContext& T, const ModeWindow& w);
// Every L^g(0) eigenvalue equals (1/k) L^sigma(0) + (k^2-1)c/(24k), computed through the twisted modes.
CheckReport check_L0_shift(TwistedModuleView& M);
// dim_q T(M) with q^{-kc/24} against dim_{q^{1/k}} M_sigma with q^{-c/24}, graded piece by graded piece.
CheckReport check_character_correspondence(TwistedModuleView& M, QSeries* twisted_series = nullptr);
// twisted_mode(u, m) maps grade n into grade (wt u - m - 1 + n).
CheckReport check_grading(TwistContext& T, const std::string& u, const ModeWindow& w);
// U after T and T after U against the direct fields; branch j != 0 must be rejected.
CheckReport check_round_trip(TwistContext& T, const std::string& u, const ModeWindow& w);
// [Y_sigma(u)_a, Y_sigma(v)_b] = sum_q C(a,q) Y_sigma(u_(q)v)_{a+b-q} for the fields rebuilt by U.
CheckReport check_sigma_commutator_after_U(TwistContext& T, const std::string& u, const std::string& v,
                                           const ModeWindow& w);
// Modes of the U-rebuilt Y_sigma(omega, x) satisfy Virasoro with c = 1/2 for |m|, |n| <= 2.
CheckReport check_sigma_virasoro_after_U(TwistContext& T, const ModeWindow& w);
// Virasoro relations and psi anticommutators on M_sigma itself.
CheckReport check_ramond_module(int max_level);

struct RunConfig {
  int k = 2;
  int cutoff = 4;  // sigma-level cutoff of the twisted module view
  int depth = 4;   // z0 depth of the conjugation check, radius of the delta identities
  ModeWindow modes;
  bool expect_obstruction = false;
};

// Deterministic: identical configs give identical reports. Reports are ordered by name.
std::vector<CheckReport> run_suite(const RunConfig& cfg);

}  // namespace orbifold
