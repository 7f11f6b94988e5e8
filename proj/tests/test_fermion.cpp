#include "doctest.h"
#include "orbifold/fermion.hpp"

using namespace orbifold;

namespace {

// L(n) = 1/2 sum_r (r + n/2) :psi_{-r} psi_{n+r}: built directly from Clifford modes.
QVec bilinear_virasoro(long n, const QVec& v, int reach) {
  QVec out;
  for (int r2 = -2 * reach - 1; r2 <= 2 * reach + 1; r2 += 2) {
    const FracExp r(r2, 2), a = -r, b = FracExp(n) + r;
    const Rational c = (r + FracExp(n, 2)).to_rational() / 2;
    if (b > FracExp(0)) out.add_scaled(fermion_mode(a, fermion_mode(b, v)), c);
    else out.add_scaled(fermion_mode(b, fermion_mode(a, v)), -c);
  }
  return out;
}

}  // namespace

TEST_SUITE("fermion") {
  TEST_CASE("canonical anticommutation relations") {
    for (int w : FockSpace::ns().basis_up_to(6))
      for (int m2 = -5; m2 <= 5; m2 += 2)
        for (int n2 = -5; n2 <= 5; n2 += 2) {
          const QVec x(w, 1);
          QVec ac = fermion_mode(FracExp(m2, 2), fermion_mode(FracExp(n2, 2), x));
          ac += fermion_mode(FracExp(n2, 2), fermion_mode(FracExp(m2, 2), x));
          CHECK(ac == (m2 + n2 == 0 ? x : QVec()));
        }
  }

  TEST_CASE("vacuum and conformal vector") {
    const QVec vac(vacuum_state(), 1);
    CHECK(virasoro(-1, vac).empty());
    CHECK(virasoro(0, vac).empty());
    CHECK(virasoro(2, virasoro(-2, vac)) == vac * (central_charge() / 2));
    CHECK(virasoro(-2, vac) == omega_state());
    CHECK(virasoro(0, omega_state()) == omega_state() * Rational(2));
    CHECK(virasoro(2, omega_state()) == vac * (central_charge() / 2));
    CHECK(state_weight(omega_state()) == FracExp(2));
    CHECK(state_parity(QVec(psi_state(), 1)) == 1);
  }

  TEST_CASE("Y(psi) modes are the Clifford generators") {
    VertexEngine& E = VertexEngine::shared(Sector::NS);
    for (int w : FockSpace::ns().basis_up_to(6))
      for (int t = -4; t <= 4; ++t)
        CHECK(E.mode(QVec(psi_state(), 1), FracExp(t), QVec(w, 1)) == fermion_mode(FracExp(t) + FracExp(1, 2), QVec(w, 1)));
  }

  TEST_CASE("iterate Virasoro matches the bilinear formula") {
    for (int w : FockSpace::ns().basis_up_to(7))
      for (long n = -3; n <= 3; ++n) {
        const QVec x(w, 1);
        CHECK(virasoro(n, x) == bilinear_virasoro(n, x, 8));
      }
  }

  TEST_CASE("Virasoro bracket with c = 1/2") {
    for (int w : FockSpace::ns().basis_up_to(4))
      for (long m = -2; m <= 2; ++m)
        for (long n = -2; n <= 2; ++n) {
          const QVec x(w, 1);
          QVec lhs = virasoro(m, virasoro(n, x));
          lhs -= virasoro(n, virasoro(m, x));
          QVec rhs = virasoro(m + n, x) * Rational(m - n);
          if (m + n == 0) rhs.add(w, Rational(m * m * m - m) * central_charge() / 12);
          CHECK(lhs == rhs);
        }
  }

  TEST_CASE("L(0) is the level and L(-1) is the translation") {
    VertexEngine& E = VertexEngine::shared(Sector::NS);
    for (int w : FockSpace::ns().basis_up_to(8)) {
      CHECK(virasoro(0, QVec(w, 1)) == QVec(w, FockSpace::ns().level(w).to_rational()));
      // (L(-1)v)_(t) = -t v_(t-1)
      const QVec lv = virasoro(-1, QVec(w, 1));
      for (int u : FockSpace::ns().basis_up_to(3))
        for (int t = -2; t <= 3; ++t)
          CHECK(E.mode(lv, FracExp(t), QVec(u, 1)) == E.mode(QVec(w, 1), FracExp(t - 1), QVec(u, 1)) * Rational(-t));
    }
  }

  TEST_CASE("state labels parse back") {
    FockSpace& F = FockSpace::ns();
    for (int w : F.basis_up_to(8)) CHECK(F.parse(F.label(w)) == w);
    CHECK(F.label(psi_state()) == "psi(-1/2)|0>");
    CHECK_THROWS(F.parse("psi(-1/2)|R>"));
  }

  TEST_CASE("tensor modes carry Koszul signs") {
    const int psi = psi_state(), vac = vacuum_state();
    const Pure a = slot_vector(2, 1, psi), b = slot_vector(2, 2, psi);
    CHECK(tensor_mode(a, -1, b) == TQVec(Pure{psi, psi}, 1));
    CHECK(tensor_mode(b, -1, a) == TQVec(Pure{psi, psi}, -1));
    CHECK(tensor_mode(Pure{vac, vac}, -1, b) == TQVec(b, 1));
    CHECK(tensor_mode(a, 0, a) == TQVec(Pure{vac, vac}, 1));
    CHECK(tensor_weight(Pure{psi, psi}) == FracExp(1));
    CHECK(tensor_parity(Pure{psi, psi}) == 0);
    CHECK(tensor_label(a) == "psi(-1/2)|0> (x) |0>");
  }

  TEST_CASE("tensor vacuum is a two-sided unit") {
    const int om = FockSpace::ns().intern({-3, -1});
    const Pure vac3(3, vacuum_state());
    for (const Pure& v : {slot_vector(3, 2, om), Pure{psi_state(), om, psi_state()}}) {
      CHECK(tensor_mode(vac3, -1, v) == TQVec(v, 1));
      CHECK(tensor_mode(v, -1, vac3) == TQVec(v, 1));
      CHECK(tensor_mode(v, 0, vac3).empty());
    }
  }

  TEST_CASE("permutation action") {
    const int psi = psi_state(), vac = vacuum_state(), om = FockSpace::ns().intern({-3, -1});
    CHECK(cycle_permutation(3) == std::vector<int>{1, 2, 0});
    auto [s, v] = permutation_action(cycle_permutation(2), Pure{psi, psi});
    CHECK(s == -1);
    CHECK(v == Pure{psi, psi});
    auto [s2, v2] = permutation_action(cycle_permutation(3), Pure{om, vac, psi});
    CHECK(s2 == 1);
    CHECK(v2 == Pure{vac, psi, om});
    std::vector<int> g = cycle_permutation(4), h = g;
    for (int i = 1; i < 4; ++i) h = compose(h, g);
    CHECK(h == std::vector<int>{0, 1, 2, 3});
  }
}
