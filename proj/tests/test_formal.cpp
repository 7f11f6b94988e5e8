#include "doctest.h"
#include "orbifold/formal.hpp"

using namespace orbifold;

TEST_SUITE("formal") {
  TEST_CASE("exponents are reduced fractions") {
    CHECK(FracExp(6, 24) == FracExp(1, 4));
    CHECK(FracExp(3, -6) == FracExp(-1, 2));
    CHECK(FracExp(-1, 2).floor() == -1);
    CHECK(FracExp(-1, 2).ceil() == 0);
    CHECK(FracExp(7, 3).floor() == 2);
    CHECK(FracExp(1, 4).on_lattice(8));
    CHECK_FALSE(FracExp(1, 3).on_lattice(8));
    CHECK(FracExp(3, 4).scaled(8) == 6);
    CHECK(FracExp(1, 2) + FracExp(1, 3) == FracExp(5, 6));
    CHECK(FracExp(-1, 3) < FracExp(-1, 4));
    CHECK(FracExp::from_rational(Rational(-9) / 12) == FracExp(-3, 4));
  }

  TEST_CASE("binomial expansion in the second variable") {
    Window w = Window::box(2, 2, FracExp(-6), FracExp(6));
    ScalarSeries s = binom_expand(0, 1, -1, FracExp(1, 2), w);
    for (int n = 0; n <= 5; ++n) {
      Rational want = binom(Rational(1, 2), n) * (n % 2 ? -1 : 1);
      auto c = s.coeff({FracExp(1, 2) - FracExp(n), FracExp(n)});
      REQUIRE(c.has_value());
      CHECK(*c == CycScalar(want));
    }
    // no negative powers of the second variable at all
    for (const auto& [e, c] : s.terms()) CHECK(e[1] >= FracExp(0));
  }

  TEST_CASE("integral binomial powers are polynomials") {
    Window w = Window::box(2, 1, FracExp(-5), FracExp(5));
    ScalarSeries s = binom_expand(0, 1, 1, FracExp(3), w);
    CHECK(s.terms().size() == 4);
    CHECK(*s.coeff({FracExp(1), FracExp(2)}) == CycScalar(3));
  }

  TEST_CASE("series window bookkeeping") {
    Window w = Window::box(1, 1, FracExp(-2), FracExp(2));
    ScalarSeries s(w);
    s.add({FracExp(1)}, CycScalar(5));
    CHECK(*s.coeff({FracExp(1)}) == CycScalar(5));
    CHECK(s.coeff({FracExp(0)})->is_zero());
    CHECK_FALSE(s.coeff({FracExp(3)}).has_value());
    // a monomial is exact: known everywhere
    CHECK(monomial(w, {FracExp(1)}).coeff({FracExp(3)}).has_value());
  }

  TEST_CASE("residue and derivative") {
    Window w = Window::box(2, 1, FracExp(-4), FracExp(4));
    ScalarSeries s = monomial(w, {FracExp(-1), FracExp(2)}, CycScalar(7));
    s += monomial(w, {FracExp(-2), FracExp(1)}, CycScalar(3));
    ScalarSeries r = residue(s, 0);
    CHECK(r.nvars() == 1);
    CHECK(*r.coeff({FracExp(2)}) == CycScalar(7));
    CHECK(r.coeff({FracExp(1)})->is_zero());
    // a total derivative has no residue
    ScalarSeries d = derivative(s, 0);
    for (const auto& [e, c] : residue(d, 0).terms()) CHECK(c.is_zero());
    CHECK(*d.coeff({FracExp(-3), FracExp(1)}) == CycScalar(-6));
  }

  TEST_CASE("root-of-unity exponent scaling") {
    Window w = Window::box(1, 2, FracExp(-3), FracExp(3));
    ScalarSeries s = monomial(w, {FracExp(1, 2)});
    ScalarSeries t = scale_exponents_root(s, 0, 8, 2);  // (zeta_8^2)^{1/2} read as zeta_8
    CHECK(*t.coeff({FracExp(1, 2)}) == cyc_root_of_unity(8, 1));
  }

  TEST_CASE("delta identities hold on radius-4 windows") {
    for (int k : {1, 2, 3})
      for (DeltaIdentity id : {DeltaIdentity::DF1, DeltaIdentity::DF2, DeltaIdentity::DF3, DeltaIdentity::ThreeTerm})
        for (FracExp r : {FracExp(0), FracExp(1, 2), FracExp(-1, 2)}) {
          CheckReport rep = verify_delta_identity(id, k, r, FracExp(4));
          INFO(rep.name, " k=", k, " r=", r.to_string(), " ", rep.verdict());
          CHECK(rep.passed());
          CHECK(rep.compared > 0);
        }
  }

  TEST_CASE("comparison catches a perturbed coefficient") {
    Window w = Window::box(1, 1, FracExp(-2), FracExp(2));
    ScalarSeries a = monomial(w, {FracExp(1)}), b = monomial(w, {FracExp(1)}, CycScalar(2));
    CheckReport rep;
    compare_series(a, b, rep, {"x"});
    CHECK(rep.mismatch_count == 1);
    CHECK_FALSE(rep.passed());
  }
}
