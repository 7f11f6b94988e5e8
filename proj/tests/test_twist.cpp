#include "doctest.h"
#include "orbifold/verify.hpp"

using namespace orbifold;

namespace {

ModeWindow window(int depth, int max_level) {
  ModeWindow w;
  w.depth = depth;
  w.max_level = max_level;
  return w;
}

}  // namespace

TEST_SUITE("twist") {
  TEST_CASE("odd order is rejected for module building") {
    CHECK_THROWS_AS(require_even_order(3), OddOrderError);
    CHECK_THROWS_AS(TwistedModuleView(5, 1), OddOrderError);
    try {
      require_even_order(3);
    } catch (const OddOrderError& e) {
      CHECK(std::string(e.what()).find("even") != std::string::npos);
    }
    CHECK_NOTHROW(require_even_order(2));
    // bare evaluation stays available for the obstruction check
    CHECK_NOTHROW(TwistContext(3));
  }

  TEST_CASE("eta powers") {
    for (int k : {2, 3, 4, 6}) {
      TwistContext T(k);
      CHECK(T.eta_pow(FracExp(k)) == CycScalar(1).lifted(4 * k));
      CHECK(T.eta_pow(FracExp(1, 4)) == cyc_root_of_unity(4 * k, 1));
      CHECK(T.eta_pow(FracExp(1)) * T.eta_pow(FracExp(-1)) == CycScalar(1).lifted(4 * k));
      CHECK_THROWS(T.eta_pow(FracExp(1, 3)));
    }
  }

  TEST_CASE("vacuum field is the identity") {
    TwistContext T(2);
    for (int w : FockSpace::ramond().basis_up_to(4))
      for (int n4 = -8; n4 <= 8; ++n4) {
        const FracExp n(n4, 4);
        CVec r = T.ybar_mode(QVec(vacuum_state(), 1), n, CVec(w, CycScalar(1)));
        CHECK(r == (n == FracExp(-1) ? CVec(w, CycScalar(1)) : CVec()));
      }
  }

  TEST_CASE("one-slot tensors reduce to factor modes") {
    TwistContext T(4);
    const int om = FockSpace::ns().intern({-3, -1});
    for (int j = 1; j <= 4; ++j)
      for (int w : FockSpace::ramond().basis_up_to(2))
        for (int n8 = -8; n8 <= 8; ++n8) {
          const FracExp n(n8, 8);
          CHECK(T.yg_mode(slot_vector(4, j, om), n, CVec(w, CycScalar(1))) ==
                T.factor_mode(QVec(om, 1), j, n, CVec(w, CycScalar(1))));
        }
  }

  TEST_CASE("iterate is independent of the peeled slot") {
    const int psi = psi_state(), vac = vacuum_state(), om = FockSpace::ns().intern({-3, -1});
    struct Case {
      int k;
      Pure P;
    };
    for (const Case& c : {Case{2, {psi, psi}}, Case{2, {psi, om}}, Case{2, {om, psi}}, Case{4, {psi, vac, psi, vac}},
                          Case{4, {psi, psi, psi, vac}}}) {
      TwistContext first(c.k, false), last(c.k, true);
      long compared = 0;
      for (int w : FockSpace::ramond().basis_up_to(2))
        for (int n = -4 * c.k; n <= 4 * c.k; ++n) {
          const FracExp t(n, 2 * c.k);
          const CVec& a = first.yg_mode(c.P, t, w);
          const CVec& b = last.yg_mode(c.P, t, w);
          CHECK(a == b);
          compared += !a.empty();
        }
      INFO(tensor_label(c.P));
      CHECK(compared > 0);
    }
  }

  TEST_CASE("central term for k = 2, 4, 6") {
    for (int k : {2, 4, 6}) {
      TwistContext T(k);
      CheckReport rep = check_central_term(T, window(1, 2));
      INFO("k=", k, " ", rep.verdict());
      CHECK(rep.passed());
    }
  }

  TEST_CASE("L^g(0) spectrum") {
    TwistedModuleView M(2, 4);
    CHECK(M.lg0_eigenvalue(ramond_vacuum()) == CycScalar(Rational(1, 16)));
    CHECK(M.predicted_lg0(ramond_vacuum()) == Rational(1, 16));
    CheckReport rep = check_L0_shift(M);
    CHECK(rep.passed());
    TwistedModuleView M4(4, 2);
    CHECK(M4.predicted_lg0(ramond_vacuum()) == Rational(1, 64) + Rational(15) / 192);
    CHECK(check_L0_shift(M4).passed());
  }

  TEST_CASE("character of the k = 2 twisted module") {
    TwistedModuleView M(2, 7);
    QSeries s;
    CheckReport rep = check_character_correspondence(M, &s);
    INFO(rep.verdict());
    CHECK(rep.passed());
    CHECK(s.offset == Rational(1, 48));
    CHECK(s.step == Rational(1, 2));
    CHECK(s.coeffs == std::vector<long>{2, 2, 2, 4, 4, 6, 8, 10});
  }

  TEST_CASE("module summary") {
    TwistedModuleView M(2, 2);
    auto j = M.summary();
    CHECK(j["k"] == 2);
    CHECK(j["dimension"] == 6);
    CHECK(j["grading"][0]["L0"] == "1/16");
    CHECK(j["grading"][2]["grade"] == "1");
  }

  TEST_CASE("round trip through U and T") {
    TwistContext T(2);
    for (const char* u : {"1", "psi", "omega"}) {
      CheckReport rep = check_round_trip(T, u, window(2, 2));
      INFO(rep.name, " ", rep.verdict());
      CHECK(rep.passed());
    }
    TwistContext T4(4);
    CHECK(check_round_trip(T4, "psi", window(1, 1)).passed());
  }

  TEST_CASE("non-principal branches are rejected") {
    TwistContext T(2);
    CHECK_THROWS_AS(T.u_sigma_mode(omega_state(), 0, CVec(ramond_vacuum(), CycScalar(1)), 1), BranchViolation);
    CHECK_THROWS_AS(u_functor_sigma_op(T, omega_state(), -2, 2, 0, 1), BranchViolation);
    CHECK_NOTHROW(u_functor_sigma_op(T, omega_state(), -2, 2, 0, 2));
  }

  TEST_CASE("limit axiom and grading") {
    TwistContext T(2);
    CHECK(check_limit_axiom(T, slot_vector(2, 1, psi_state()), window(2, 2)).passed());
    CHECK(check_limit_axiom(T, Pure{psi_state(), psi_state()}, window(2, 2)).passed());
    CHECK(check_grading(T, "omega", window(2, 2)).passed());
    CHECK(check_ybar_derivative(T, "omega", window(2, 2)).passed());
  }

  TEST_CASE("field materializers") {
    TwistContext T(2);
    Field f = ybar_field(T, QVec(psi_state(), 1), -2, 2, 2);
    CHECK(f.sector == Sector::R);
    CHECK(f.parity == 1);
    CHECK_FALSE(f.terms.empty());
    for (const auto& [e, m] : f.terms) CHECK(e.on_lattice(4));
    Field g = yg_tensor_factor(T, QVec(psi_state(), 1), 2, -2, 2, 2);
    // slot 2 differs from slot 1 by eta^{-kn}: equal magnitudes, same support
    CHECK(g.terms.size() == f.terms.size());
    TwistContext T3(3);
    CHECK_THROWS_AS(yg_general(T3, Pure(3, vacuum_state()), -1, 1, 0), OddOrderError);
  }
}
