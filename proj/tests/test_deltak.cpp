#include "doctest.h"
#include "orbifold/deltak.hpp"

using namespace orbifold;

TEST_SUITE("deltak") {
  TEST_CASE("a_1 and a_2 closed forms") {
    for (int k : {1, 2, 3, 4, 6}) {
      const AjTable& t = solve_aj(k, 6);
      CHECK(t(1) == Rational(1 - k) / 2);
      CHECK(t(2) == Rational(k * k - 1) / 12);
    }
  }

  TEST_CASE("frozen a_j values") {
    const AjTable& t = solve_aj(2, 6);
    const std::vector<Rational> want = {Rational(-1, 2), Rational(1, 4), Rational(-3, 16),
                                        Rational(1, 6),  Rational(-31, 192), Rational(157, 960)};
    for (int j = 1; j <= 6; ++j) CHECK(t(j) == want[j - 1]);
    CHECK(solve_aj(4, 3)(3) == Rational(-25, 16));
    for (int j = 1; j <= 5; ++j) CHECK(solve_aj(1, 5)(j) == 0);
  }

  TEST_CASE("coefficients do not depend on the truncation") {
    for (int k : {2, 3, 4})
      for (int j = 1; j <= 4; ++j) CHECK(solve_aj(k, 4)(j) == solve_aj(k, 9)(j));
  }

  TEST_CASE("exp(+D)x is the compositional inverse (1+kx)^{1/k} - 1") {
    for (int k : {1, 2, 3, 4, 6}) {
      const AjTable& t = solve_aj(k, 6);
      auto fwd = exp_derivation_x(t, 1, 7);
      auto orc = compositional_inverse_oracle(k, 7);
      for (int d = 0; d <= 7; ++d) CHECK(fwd[d] == orc[d]);
      auto bwd = exp_derivation_x(t, -1, 7);
      for (int d = 1; d <= 7; ++d) CHECK(bwd[d] == binom(Rational(k), d) / k);
    }
  }

  TEST_CASE("CSV export") {
    CHECK(solve_aj(2, 2).to_csv() == "j,a_j\n1,-1/2\n2,1/4\n");
  }

  TEST_CASE("f composed with its inverse") {
    for (int k : {1, 2, 4}) {
      CheckReport rep = check_f_inverse(k, 10);
      INFO(rep.verdict());
      CHECK(rep.passed());
    }
  }

  TEST_CASE("Delta on the vacuum, psi and omega") {
    DeltaOp op;
    op.k = 2;
    auto vac = apply_delta(op, QVec(vacuum_state(), 1));
    REQUIRE(vac.size() == 1);
    CHECK(vac[0].exponent == FracExp(0));
    CHECK(vac[0].state == CVec(vacuum_state(), CycScalar(1)));

    auto psi = apply_delta(op, QVec(psi_state(), 1));
    REQUIRE(psi.size() == 1);
    CHECK(psi[0].exponent == FracExp(-1, 4));
    CHECK(psi[0].state == CVec(psi_state(), cyc_k_power(2, Rational(-1, 2))));

    auto om = apply_delta(op, omega_state());
    REQUIRE(om.size() == 2);
    CHECK(om[0].exponent == FracExp(-1));
    CHECK(om[0].state == to_cyc(omega_state()) * CycScalar(Rational(1, 4)));
    CHECK(om[1].j == 2);
    CHECK(om[1].exponent == FracExp(-2));
    CHECK(om[1].state == CVec(vacuum_state(), CycScalar(Rational(1, 64))));
  }

  TEST_CASE("central coefficient of Delta_k omega") {
    for (int k : {2, 4, 6}) {
      DeltaOp op;
      op.k = k;
      bool seen = false;
      for (const DeltaTerm& t : apply_delta(op, omega_state()))
        if (t.j == 2) {
          seen = true;
          CHECK(t.state == CVec(vacuum_state(), CycScalar(Rational(k * k - 1) / (48 * k * k))));
        }
      CHECK(seen);
    }
  }

  TEST_CASE("inverse on psi") {
    DeltaOp op;
    op.k = 2;
    op.direction = Direction::Inverse;
    auto t = apply_delta(op, QVec(psi_state(), 1));
    REQUIRE(t.size() == 1);
    CHECK(t[0].exponent == FracExp(1, 4));
    CHECK(t[0].state == CVec(psi_state(), cyc_sqrt_k(2)));
  }

  TEST_CASE("depth below the state weight is a window error") {
    DeltaOp op;
    op.k = 2;
    op.depth = 1;
    CHECK_THROWS_AS(apply_delta(op, QVec(FockSpace::ns().intern({-5, -3, -1}), 1)), window_error);
    QVec mixed = omega_state();
    mixed += QVec(psi_state(), 1);
    CHECK_THROWS_AS(apply_delta(DeltaOp{2, 0, Direction::Forward}, mixed), std::invalid_argument);
  }

  TEST_CASE("round trip on weight <= 4") {
    for (int k : {1, 2, 3, 4}) {
      CheckReport rep = check_delta_roundtrip(k, 8);
      INFO("k=", k, " ", rep.verdict());
      CHECK(rep.passed());
    }
  }

  TEST_CASE("conjugation identity") {
    for (int k : {2, 4})
      for (const char* name : {"psi", "omega"}) {
        const QVec u = std::string(name) == "psi" ? QVec(psi_state(), 1) : omega_state();
        CheckReport rep = check_conjugation(k, u, name, 5, 4);
        INFO("k=", k, " u=", name, " ", rep.verdict());
        CHECK(rep.passed());
      }
  }

  TEST_CASE("L(-1) identities") {
    for (int k : {2, 4}) {
      CheckReport rep = check_L_minus1_identities(k, 4);
      INFO(rep.verdict());
      CHECK(rep.passed());
    }
  }

  TEST_CASE("series form agrees with the term list") {
    for (int w : FockSpace::ns().basis_up_to(5)) {
      DeltaOp op;
      op.k = 4;
      ZSeries direct;
      for (const DeltaTerm& t : apply_delta(op, QVec(w, 1))) direct[t.exponent] += t.state;
      ZSeries s = apply_delta_series(4, Direction::Forward, CVec(w, CycScalar(1)));
      CHECK(s == direct);
    }
  }
}
