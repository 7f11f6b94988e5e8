#include <set>

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

TEST_SUITE("verify") {
  TEST_CASE("named states") {
    CHECK(named_state("1") == QVec(vacuum_state(), 1));
    CHECK(named_state("omega") == omega_state());
    CHECK(named_state("psi(-3/2)psi(-1/2)|0>") == QVec(FockSpace::ns().intern({-3, -1}), 1));
    CHECK_THROWS(named_state("phi"));
  }

  TEST_CASE("report verdicts") {
    CheckReport r;
    r.name = "x";
    r.finalize();
    CHECK(r.error == "no coefficients compared");
    CHECK_FALSE(r.passed());
    CheckReport f;
    f.record("a", "1", "2", false);
    f.expect_fail = true;
    CHECK(f.as_expected());
    f.expect_fail = false;
    CHECK_FALSE(f.as_expected());
    CheckReport p;
    p.record("a", "1", "1", true);
    CHECK(p.passed());
    CHECK(p.to_json()["verdict"] == "pass");
  }

  TEST_CASE("empty window is not a pass") {
    TwistContext T(2);
    CheckReport rep = check_even_supercommutator(T, "psi", "psi", window(2, -1));
    rep.finalize();
    CHECK(rep.compared == 0);
    CHECK(rep.error == "no coefficients compared");
    CHECK_FALSE(rep.passed());
  }

  TEST_CASE("even-k supercommutator") {
    TwistContext T(2);
    for (const char* u : {"psi", "omega"})
      for (const char* v : {"psi", "omega"}) {
        CheckReport rep = check_even_supercommutator(T, u, v, window(2, 2));
        INFO(rep.name, " ", rep.verdict());
        CHECK(rep.passed());
      }
    CHECK(check_even_supercommutator(T, "omega", "1", window(2, 2)).passed());
    TwistContext T4(4);
    CHECK(check_even_supercommutator(T4, "psi", "psi", window(1, 1)).passed());
  }

  TEST_CASE("odd-k obstruction pair") {
    for (int k : {1, 3}) {
      TwistContext T(k);
      auto [a, b] = check_odd_obstruction(T, "psi", "psi", window(2, 2));
      INFO("k=", k);
      CHECK(a.expect_fail);
      CHECK(a.error.empty());
      CHECK(a.mismatch_count >= 1);
      CHECK(a.as_expected());
      CHECK(b.passed());
    }
    TwistContext T3(3);
    auto [a, b] = check_odd_obstruction(T3, "omega", "psi", window(2, 2));
    CHECK_FALSE(a.expect_fail);
    CHECK(a.passed());
    CHECK(b.passed());
  }

  TEST_CASE("factor commutator with the eta kernel") {
    TwistContext T(2);
    for (auto [j, m] : std::vector<std::pair<int, int>>{{1, 1}, {1, 2}, {2, 1}, {2, 2}})
      CHECK(check_factor_commutator(T, "psi", j, "omega", m, window(2, 2)).passed());
  }

  TEST_CASE("twisted Jacobi identity") {
    TwistContext T(2);
    CHECK(check_twisted_jacobi(T, "psi", 1, "psi", 1, window(2, 1)).passed());
    CHECK(check_twisted_jacobi(T, "psi", 2, "psi", 1, window(2, 1)).passed());
    CHECK(check_twisted_jacobi(T, "1", 1, "omega", 2, window(2, 1)).passed());
  }

  TEST_CASE("locality order of psi with psi") {
    TwistContext T(2);
    int N = -1;
    CheckReport rep = check_locality(T, "psi", 1, "psi", 1, window(2, 2), 4, &N);
    CHECK(rep.passed());
    CHECK(N == 1);
    CHECK(rep.window["N"] == 1);
  }

  TEST_CASE("sigma structure rebuilt by U") {
    TwistContext T(2);
    CHECK(check_sigma_commutator_after_U(T, "psi", "psi", window(2, 2)).passed());
    CHECK(check_sigma_virasoro_after_U(T, window(2, 1)).passed());
  }

  TEST_CASE("default suite passes and is deterministic") {
    RunConfig cfg;
    const auto a = run_suite(cfg);
    std::set<std::string> names;
    for (const auto& r : a) {
      INFO(r.name, " ", r.verdict(), " ", r.error);
      CHECK(r.passed());
      CHECK(r.compared > 0);
      names.insert(r.name);
    }
    CHECK(names.size() == a.size());
    CHECK(std::is_sorted(a.begin(), a.end(), [](const CheckReport& x, const CheckReport& y) { return x.name < y.name; }));
    CHECK(render_json(a).dump() == render_json(run_suite(cfg)).dump());
    CHECK(render_table(a).find("twist.character") != std::string::npos);
  }

  TEST_CASE("odd-k suite") {
    RunConfig cfg;
    cfg.k = 3;
    cfg.expect_obstruction = true;
    bool saw_expected_failure = false;
    for (const auto& r : run_suite(cfg)) {
      INFO(r.name, " ", r.verdict());
      CHECK(r.as_expected());
      saw_expected_failure = saw_expected_failure || (r.expect_fail && !r.passed());
    }
    CHECK(saw_expected_failure);
    cfg.expect_obstruction = false;
    bool all = true;
    for (const auto& r : run_suite(cfg)) all = all && r.as_expected();
    CHECK_FALSE(all);
  }
}
