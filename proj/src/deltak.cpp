#include "orbifold/deltak.hpp"

#include <mutex>
#include <sstream>
#include <tuple>

namespace orbifold {

std::string AjTable::to_csv() const {
  std::ostringstream os;
  os << "j,a_j\n";
  for (int j = 1; j <= J; ++j) os << j << "," << to_string(a[j]) << "\n";
  return os.str();
}

namespace {

// D p = sum_j a_j x^{j+1} p'(x), truncated at degree order
std::vector<Rational> apply_D(const AjTable& t, const std::vector<Rational>& p, int order) {
  std::vector<Rational> r(order + 1, Rational(0));
  for (int d = 1; d < static_cast<int>(p.size()); ++d) {
    if (sgn(p[d]) == 0) continue;
    for (int j = 1; j <= t.J && d + j <= order; ++j) r[d + j] += t.a[j] * d * p[d];
  }
  return r;
}

std::vector<Rational> exp_D_x(const AjTable& t, int sign, int order) {
  std::vector<Rational> term(order + 1, Rational(0)), total;
  if (order >= 1) term[1] = 1;
  total = term;
  for (int n = 1; n <= order; ++n) {
    term = apply_D(t, term, order);
    for (auto& c : term) c *= Rational(sign) / n;
    for (int d = 0; d <= order; ++d) total[d] += term[d];
  }
  return total;
}

}  // namespace

const AjTable& solve_aj(int k, int J) {
  if (k < 1 || J < 1) throw std::invalid_argument("solve_aj needs k >= 1 and J >= 1");
  static std::mutex mu;
  static std::map<std::pair<int, int>, AjTable> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find({k, J});
  if (it != cache.end()) return it->second;
  AjTable t;
  t.k = k;
  t.J = J;
  t.a.assign(J + 1, Rational(0));
  for (int n = 1; n <= J; ++n) {
    // a_n enters the x^{n+1} coefficient only through the linear term -a_n x^{n+1}
    Rational e = exp_D_x(t, -1, n + 1)[n + 1];
    t.a[n] = e - binom(Rational(k), n + 1) / k;
  }
  return cache.emplace(std::make_pair(k, J), std::move(t)).first->second;
}

std::vector<Rational> exp_derivation_x(const AjTable& t, int sign, int order) { return exp_D_x(t, sign, order); }

std::vector<Rational> compositional_inverse_oracle(int k, int order) {
  std::vector<Rational> r(order + 1, Rational(0));
  Rational kp = 1;
  for (int m = 1; m <= order; ++m) {
    kp *= k;
    r[m] = binom(Rational(1) / k, m) * kp;
  }
  return r;
}

namespace {
Window xz_window(int k, Interval x) {
  Window w;
  w.lattice = k;
  w.vars = {x, Interval::exact()};
  return w;
}
}  // namespace

ScalarSeries f_series(int k, bool with_z) {
  Window w = xz_window(k, Interval::exact());
  ScalarSeries s(w);
  const FracExp ze = with_z ? FracExp(1, k) : FracExp(0);
  for (int m = 1; m <= k; ++m) s.add({FracExp(m), ze}, CycScalar(binom(Rational(k), m) / k));
  return s;
}

ScalarSeries f_inverse_series(int k, bool with_z, int order) {
  ScalarSeries s(xz_window(k, Interval::from(0, order)));
  auto c = compositional_inverse_oracle(k, order);
  for (int m = 1; m <= order; ++m) s.add({FracExp(m), with_z ? FracExp(-m, k) : FracExp(0)}, CycScalar(c[m]));
  return s;
}

ScalarSeries compose_f_finv(int k, bool with_z, int order) {
  ScalarSeries g = f_inverse_series(k, with_z, order);
  ScalarSeries one_plus = monomial(xz_window(k, Interval::exact()), {0, 0}) + g;
  ScalarSeries p = one_plus;
  for (int i = 1; i < k; ++i) p = p * one_plus;
  const FracExp ze = with_z ? FracExp(1, k) : FracExp(0);
  ScalarSeries shifted = mul_monomial(p, {0, ze}) * CycScalar(Rational(1) / k);
  return shifted - monomial(xz_window(k, Interval::exact()), {0, ze}, CycScalar(Rational(1) / k));
}

CheckReport check_f_inverse(int k, int order) {
  CheckReport rep;
  rep.name = "deltak.f_inverse";
  rep.k = k;
  rep.window = {{"x", {"0", std::to_string(order)}}};
  try {
    for (bool with_z : {false, true}) {
      ScalarSeries h = compose_f_finv(k, with_z, order);
      std::map<Exps, int> keys;
      for (int m = 0; m <= order; ++m) keys[{FracExp(m), FracExp(0)}];
      for (const auto& [e, c] : h.terms()) keys[e];
      for (const auto& [e, unused] : keys) {
        auto got = h.coeff(e);
        if (!got) continue;
        CycScalar want = (e[0] == FracExp(1) && e[1] == FracExp(0)) ? CycScalar(1) : CycScalar(0);
        rep.record(std::string(with_z ? "z " : "z=1 ") + "x^" + e[0].to_string() + " z^" + e[1].to_string(),
                   got->to_string(), want.to_string(), *got == want);
      }
    }
  } catch (const std::exception& ex) {
    rep.error = ex.what();
  }
  return rep;
}

namespace {

// exp(sign * sum_j a_j y^j L(j)) u as y-degree -> state
std::map<int, QVec> exp_virasoro(int k, int sign, const QVec& u, int J) {
  std::map<int, QVec> total{{0, u}}, term{{0, u}};
  if (J < 1) return total;
  const AjTable& a = solve_aj(k, J);
  FockSpace& F = FockSpace::ns();
  for (int n = 1; !term.empty(); ++n) {
    std::map<int, QVec> next;
    for (const auto& [j, v] : term) {
      const int lvl2 = F.level2(v.terms().begin()->first);
      for (int jj = 1; jj <= J && 2 * jj <= lvl2; ++jj) {
        if (sgn(a(jj)) == 0) continue;
        QVec w = virasoro(jj, v) * (a(jj) * sign / n);
        if (w.empty()) continue;
        next[j + jj] += w;
        if (next[j + jj].empty()) next.erase(j + jj);
      }
    }
    for (const auto& [j, v] : next) total[j] += v;
    term = std::move(next);
  }
  for (auto it = total.begin(); it != total.end();) it = it->second.empty() ? total.erase(it) : std::next(it);
  return total;
}

const std::vector<DeltaTerm>& delta_of_basis(int k, Direction dir, int id) {
  static std::mutex mu;
  static std::map<std::tuple<int, int, int>, std::vector<DeltaTerm>> cache;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find({k, static_cast<int>(dir), id});
    if (it != cache.end()) return it->second;
  }
  std::vector<DeltaTerm> terms = apply_delta(DeltaOp{k, 0, dir}, QVec(id, 1));
  std::lock_guard<std::mutex> lock(mu);
  return cache.emplace(std::make_tuple(k, static_cast<int>(dir), id), std::move(terms)).first->second;
}

}  // namespace

std::vector<DeltaTerm> apply_delta(const DeltaOp& op, const QVec& u) {
  if (u.empty()) return {};
  const FracExp p = state_weight(u);
  const int need = static_cast<int>(p.floor());
  if (op.depth > 0 && op.depth < need) throw window_error("delta depth does not cover the state weight");
  const int sign = op.direction == Direction::Forward ? 1 : -1;
  std::vector<DeltaTerm> out;
  const FracExp inv_k(1, op.k);
  for (const auto& [j, v] : exp_virasoro(op.k, sign, u, need)) {
    DeltaTerm t;
    t.j = j;
    if (op.direction == Direction::Forward) {
      t.exponent = p * inv_k - p - FracExp(j) * inv_k;
      t.state = to_cyc(v) * cyc_k_power(op.k, -p.to_rational());
    } else {
      t.exponent = p - p * inv_k - FracExp(j);
      t.state = to_cyc(v) * cyc_k_power(op.k, (p - FracExp(j)).to_rational());
    }
    out.push_back(std::move(t));
  }
  return out;
}

ZSeries apply_delta_series(int k, Direction dir, const CVec& u) {
  ZSeries out;
  for (const auto& [id, c] : u.terms())
    for (const DeltaTerm& t : delta_of_basis(k, dir, id)) {
      CVec& slot = out[t.exponent];
      slot.add_scaled(t.state, c);
      if (slot.empty()) out.erase(t.exponent);
    }
  return out;
}

ZSeries apply_delta_series(int k, Direction dir, const ZSeries& u) {
  ZSeries out;
  for (const auto& [e, v] : u)
    for (const auto& [e2, w] : apply_delta_series(k, dir, v)) {
      CVec& slot = out[e + e2];
      slot += w;
      if (slot.empty()) out.erase(e + e2);
    }
  return out;
}

nlohmann::ordered_json zseries_to_json(const ZSeries& s, Sector sector) {
  FockSpace& F = FockSpace::of(sector);
  auto arr = nlohmann::ordered_json::array();
  for (const auto& [e, v] : s) {
    auto st = nlohmann::ordered_json::array();
    for (const auto& [id, c] : v.terms()) st.push_back({{"basis", F.label(id)}, {"coeff", c.to_string()}});
    arr.push_back({{"exp", e.to_string()}, {"state", st}});
  }
  return arr;
}

namespace {

std::string zfmt(const FracExp& e) { return "z^" + e.to_string(); }

ZSeries shift(const ZSeries& s, const FracExp& by, const CycScalar& c) {
  ZSeries r;
  for (const auto& [e, v] : s) r[e + by] = v * c;
  return r;
}

ZSeries zderiv(const ZSeries& s) {
  ZSeries r;
  for (const auto& [e, v] : s)
    if (e != FracExp(0)) r[e - FracExp(1)] = v * CycScalar(e.to_rational());
  return r;
}

ZSeries apply_L(long n, const ZSeries& s) {
  ZSeries r;
  for (const auto& [e, v] : s) {
    CVec w = virasoro(n, v);
    if (!w.empty()) r[e] = w;
  }
  return r;
}

ZSeries minus(ZSeries a, const ZSeries& b) {
  for (const auto& [e, v] : b) {
    a[e] -= v;
    if (a[e].empty()) a.erase(e);
  }
  return a;
}

}  // namespace

CheckReport check_delta_roundtrip(int k, int max_level2) {
  CheckReport rep;
  rep.name = "deltak.roundtrip";
  rep.k = k;
  rep.window = {{"max_weight", FracExp(max_level2, 2).to_string()}};
  try {
    FockSpace& F = FockSpace::ns();
    for (int id : F.basis_up_to(max_level2)) {
      ZSeries want{{FracExp(0), CVec(id, CycScalar(1))}};
      ZSeries one = apply_delta_series(k, Direction::Inverse, CVec(id, CycScalar(1)));
      ZSeries fi = apply_delta_series(k, Direction::Forward, one);
      ZSeries two = apply_delta_series(k, Direction::Forward, CVec(id, CycScalar(1)));
      ZSeries iff = apply_delta_series(k, Direction::Inverse, two);
      auto fmt = [&](const std::string& tag) {
        return [&, tag](const FracExp& e) { return tag + " on " + F.label(id) + " " + zfmt(e); };
      };
      compare_state_maps(fi, want, F, fmt("fwd.inv"), rep);
      compare_state_maps(iff, want, F, fmt("inv.fwd"), rep);
    }
  } catch (const std::exception& ex) {
    rep.error = ex.what();
  }
  return rep;
}

namespace {

// (1 + rho)^s through w^L with rho = sum_{l>=1} k C(1/k, l+1) w^l.
const std::vector<Rational>& gamma_series(int k, long s, int L) {
  static std::mutex mu;
  static std::map<std::tuple<int, long, int>, std::vector<Rational>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_tuple(k, s, L);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  std::vector<Rational> rho(L + 1, Rational(0));
  for (int l = 1; l <= L; ++l) rho[l] = binom(Rational(1) / k, l + 1) * k;
  std::vector<Rational> out(L + 1, Rational(0)), pw(L + 1, Rational(0));
  pw[0] = 1;
  for (int i = 0; i <= L; ++i) {
    Rational c = binom(Rational(s), i);
    for (int d = 0; d <= L; ++d) out[d] += c * pw[d];
    std::vector<Rational> nx(L + 1, Rational(0));
    for (int a = 0; a <= L; ++a)
      if (sgn(pw[a]) != 0)
        for (int b = 1; a + b <= L; ++b) nx[a + b] += pw[a] * rho[b];
    pw = std::move(nx);
  }
  return cache.emplace(key, std::move(out)).first->second;
}

Rational rpow(const Rational& b, long e) {
  Rational r = 1;
  for (long i = 0; i < (e < 0 ? -e : e); ++i) r *= b;
  return e < 0 ? Rational(1) / r : r;
}

}  // namespace

CheckReport check_conjugation(int k, const QVec& u, const std::string& uname, int max_level2, int depth) {
  CheckReport rep;
  rep.name = "deltak.conjugation";
  rep.k = k;
  rep.window = {{"u", uname}, {"max_weight", FracExp(max_level2, 2).to_string()}, {"z0_max", depth}};
  try {
    FockSpace& F = FockSpace::ns();
    VertexEngine& E = VertexEngine::shared(Sector::NS);
    const FracExp pu = state_weight(u);
    const FracExp inv_k(1, k);
    const std::vector<DeltaTerm> du = apply_delta(DeltaOp{k, 0, Direction::Forward}, u);
    using Key = std::pair<std::int64_t, FracExp>;
    auto fmt = [](const Key& key) { return "z0^" + std::to_string(key.first) + " " + zfmt(key.second); };
    for (int w : F.basis_up_to(max_level2)) {
      const FracExp pw = F.level(w);
      std::map<Key, CVec> lhs, rhs;
      // LHS: Delta(z) u_(t) Delta(z)^{-1} w at z0^{-t-1}
      const ZSeries winv = apply_delta_series(k, Direction::Inverse, CVec(w, CycScalar(1)));
      for (std::int64_t c = (-(pu + pw)).floor(); c <= depth; ++c)
        for (const auto& [e1, w1] : winv) {
          CVec s = E.mode(u, FracExp(-c - 1), w1);
          if (s.empty()) continue;
          for (const auto& [e2, s2] : apply_delta_series(k, Direction::Forward, s)) lhs[{c, e1 + e2}] += s2;
        }
      // RHS: Y(Delta(z+z0)u, (z+z0)^{1/k} - z^{1/k}) w
      for (const DeltaTerm& dt : du) {
        const FracExp wj = pu - FracExp(dt.j);
        for (std::int64_t s = (-(wj + pw)).floor(); s <= depth; ++s) {
          CVec r = E.mode(dt.state, FracExp(-s - 1), CVec(w, CycScalar(1)));
          if (r.empty()) continue;
          const int L = static_cast<int>(depth - s);
          const std::vector<Rational>& g = gamma_series(k, s, L);
          const Rational ks = rpow(Rational(1) / k, s);
          for (int a = 0; a <= L; ++a) {
            Rational ca = binom(dt.exponent, a) * ks;
            if (sgn(ca) == 0) continue;
            for (int l = 0; a + l <= L; ++l) {
              if (sgn(g[l]) == 0) continue;
              FracExp ze = dt.exponent - FracExp(a) + FracExp(s) * (inv_k - FracExp(1)) - FracExp(l);
              rhs[{s + a + l, ze}].add_scaled(r, CycScalar(ca * g[l]));
            }
          }
        }
      }
      for (auto* m : {&lhs, &rhs})
        for (auto it = m->begin(); it != m->end();) it = it->second.empty() ? m->erase(it) : std::next(it);
      auto tf = [&](const Key& key) { return F.label(w) + " " + fmt(key); };
      compare_state_maps(lhs, rhs, F, tf, rep);
    }
  } catch (const std::exception& ex) {
    rep.error = ex.what();
  }
  return rep;
}

CheckReport check_L_minus1_identities(int k, int max_level2) {
  CheckReport rep;
  rep.name = "deltak.L_minus1";
  rep.k = k;
  rep.window = {{"max_weight", FracExp(max_level2, 2).to_string()}};
  try {
    FockSpace& F = FockSpace::ns();
    const FracExp inv_k(1, k);
    for (int id : F.basis_up_to(max_level2)) {
      const CVec u(id, CycScalar(1));
      const CVec lu = virasoro(-1, u);
      {
        ZSeries d = apply_delta_series(k, Direction::Forward, u);
        ZSeries lhs = minus(apply_delta_series(k, Direction::Forward, lu),
                            shift(apply_L(-1, d), inv_k - FracExp(1), CycScalar(Rational(1) / k)));
        ZSeries rhs = zderiv(d);
        compare_state_maps(lhs, rhs, F, [&](const FracExp& e) { return "first on " + F.label(id) + " " + zfmt(e); },
                           rep);
      }
      {
        ZSeries d = apply_delta_series(k, Direction::Inverse, u);
        ZSeries lhs = minus(apply_delta_series(k, Direction::Inverse, lu),
                            shift(apply_L(-1, d), FracExp(1) - inv_k, CycScalar(k)));
        ZSeries rhs = shift(zderiv(d), FracExp(1) - inv_k, CycScalar(k));
        compare_state_maps(lhs, rhs, F, [&](const FracExp& e) { return "second on " + F.label(id) + " " + zfmt(e); },
                           rep);
      }
    }
  } catch (const std::exception& ex) {
    rep.error = ex.what();
  }
  return rep;
}

}  // namespace orbifold
