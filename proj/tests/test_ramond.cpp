#include "doctest.h"
#include "orbifold/ramond.hpp"
#include "orbifold/verify.hpp"

using namespace orbifold;

namespace {

// 2 * (number of partitions of n into distinct positive parts): the psi_0 doublet times strict partitions.
std::vector<long> ramond_dims(int N) {
  std::vector<long> q(N + 1, 0);
  q[0] = 1;
  for (int part = 1; part <= N; ++part)
    for (int n = N; n >= part; --n) q[n] += q[n - part];
  for (auto& x : q) x *= 2;
  return q;
}

QVec bilinear_sigma_virasoro(long n, const QVec& v, int reach) {
  QVec out;
  for (long m = -reach; m <= reach; ++m) {
    const long a = -m, b = n + m;
    const Rational c = (Rational(m) + Rational(n) / 2) / 2;
    if (b > 0 || (b == 0 && a < 0)) out.add_scaled(ramond_mode(a, ramond_mode(b, v)), c);
    else out.add_scaled(ramond_mode(b, ramond_mode(a, v)), -c);
  }
  if (n == 0) out.add_scaled(v, Rational(1, 16));
  return out;
}

}  // namespace

TEST_SUITE("ramond") {
  TEST_CASE("zero mode squares to one half") {
    const QVec R(ramond_vacuum(), 1);
    CHECK(ramond_mode(0, ramond_mode(0, R)) == R * Rational(1, 2));
    for (long n = 1; n <= 3; ++n) CHECK(ramond_mode(n, R).empty());
  }

  TEST_CASE("ground weight and low spectrum") {
    CHECK(sigma_L0_eigenvalue(ramond_vacuum()) == Rational(1, 16));
    FockSpace& F = FockSpace::ramond();
    CHECK(sigma_L0_eigenvalue(F.parse("psi(-1)|R>")) == Rational(17, 16));
    CHECK(sigma_L0_eigenvalue(F.parse("psi(-2)psi(0)|R>")) == Rational(33, 16));
  }

  TEST_CASE("graded dimension agrees with strict-partition count") {
    const QSeries s = sigma_L0_spectrum(Rational(1, 16) + 9);
    CHECK(s.offset == Rational(1, 16));
    const auto want = ramond_dims(9);
    REQUIRE(s.coeffs.size() == want.size());
    for (size_t n = 0; n < want.size(); ++n) CHECK(s.coeffs[n] == want[n]);
    CHECK(s.at(Rational(1, 16) + 7) == 10);
    CHECK(s.at(Rational(1, 8)) == 0);
  }

  TEST_CASE("sigma Virasoro matches the bilinear formula") {
    for (int w : FockSpace::ramond().basis_up_to(6))
      for (long n = -3; n <= 3; ++n) CHECK(sigma_virasoro(n, QVec(w, 1)) == bilinear_sigma_virasoro(n, QVec(w, 1), 8));
  }

  TEST_CASE("Y_sigma(psi) modes are the integral Clifford generators") {
    VertexEngine& E = VertexEngine::shared(Sector::R);
    for (int w : FockSpace::ramond().basis_up_to(6))
      for (int t2 = -7; t2 <= 7; t2 += 2)
        CHECK(E.mode(QVec(psi_state(), 1), FracExp(t2, 2), QVec(w, 1)) ==
              ramond_mode(FracExp(t2, 2).ceil(), QVec(w, 1)));
  }

  TEST_CASE("parity-unstable halves") {
    const size_t dim = FockSpace::ramond().basis_up_to(8).size();
    CHECK(parity_unstable_basis(1, 8).size() * 2 == dim);
    CHECK(parity_unstable_basis(-1, 8).size() * 2 == dim);
    // psi_0 acts on W+ as +1/sqrt(2): b + sqrt2 psi_0 b is an eigenvector when len b is even
    const CVec v = parity_unstable_basis(1, 0).front();
    CHECK(ramond_mode(0, v) == v * (cyc_sqrt_k(2) * CycScalar(Rational(1, 2))));
  }

  TEST_CASE("module relations on M_sigma") {
    CheckReport rep = check_ramond_module(3);
    INFO(rep.verdict());
    CHECK(rep.passed());
  }
}
