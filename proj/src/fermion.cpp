#include "orbifold/fermion.hpp"

#include <functional>

namespace orbifold {

int vacuum_state() { return FockSpace::ns().vacuum(); }

int psi_state() { return FockSpace::ns().intern({-1}); }

QVec omega_state() { return QVec(FockSpace::ns().intern({-3, -1}), Rational(1, 2)); }

QVec fermion_mode(const FracExp& n, const QVec& s) {
  return apply_psi(FockSpace::ns(), static_cast<int>((n * FracExp(2)).num()), s);
}

QVec virasoro(long n, const QVec& s, VertexEngine& E) { return E.mode(omega_state(), FracExp(n + 1), s); }

CVec virasoro(long n, const CVec& s, VertexEngine& E) { return E.mode(omega_state(), FracExp(n + 1), s); }

FracExp state_weight(const QVec& v) {
  if (v.empty()) throw std::invalid_argument("zero state has no weight");
  FockSpace& F = FockSpace::ns();
  FracExp w = F.level(v.terms().begin()->first);
  for (const auto& [id, c] : v.terms())
    if (F.level(id) != w) throw std::invalid_argument("state is not homogeneous");
  return w;
}

int state_parity(const QVec& v) {
  if (v.empty()) return 0;
  FockSpace& F = FockSpace::ns();
  int p = F.parity(v.terms().begin()->first);
  for (const auto& [id, c] : v.terms())
    if (F.parity(id) != p) throw std::invalid_argument("state is not parity-homogeneous");
  return p;
}

Field vertex_op(const QVec& v, const FracExp& lo, const FracExp& hi, int max_level2) {
  VertexEngine& E = VertexEngine::shared(Sector::NS);
  Field f;
  f.sector = Sector::NS;
  f.parity = state_parity(v);
  f.lo = lo;
  f.hi = hi;
  f.max_level2 = max_level2;
  for (int w : FockSpace::ns().basis_up_to(max_level2))
    for (std::int64_t e = lo.ceil(); FracExp(e) <= hi; ++e) {
      QVec img = E.mode(v, FracExp(-e - 1), QVec(w, 1));
      if (!img.empty()) f.terms[FracExp(e)][w] = to_cyc(img);
    }
  return f;
}

Pure slot_vector(int k, int j, int id) {
  if (j < 1 || j > k) throw std::out_of_range("slot index");
  Pure p(k, vacuum_state());
  p[j - 1] = id;
  return p;
}

int tensor_parity(const Pure& v) {
  int p = 0;
  for (int id : v) p ^= FockSpace::ns().parity(id);
  return p;
}

FracExp tensor_weight(const Pure& v) {
  FracExp w = 0;
  for (int id : v) w += FockSpace::ns().level(id);
  return w;
}

std::string tensor_label(const Pure& v) {
  std::string s;
  for (size_t i = 0; i < v.size(); ++i) s += (i ? " (x) " : "") + FockSpace::ns().label(v[i]);
  return s;
}

TQVec tensor_mode(const Pure& u, const FracExp& t, const Pure& v, VertexEngine& E) {
  const int k = static_cast<int>(u.size());
  FockSpace& F = FockSpace::ns();
  int sign = 1, seen = 0;
  for (int j = 0; j < k; ++j) {
    if (F.parity(u[j]) && seen) sign = -sign;
    seen ^= F.parity(v[j]);
  }
  // factor j contributes x^{-t_j-1}; need sum of (-t_j - 1) = -t - 1
  std::vector<FracExp> top(k);
  for (int j = 0; j < k; ++j) top[j] = F.level(u[j]) + F.level(v[j]) - 1;
  std::vector<FracExp> suffix_top(k + 1, FracExp(0));
  for (int j = k - 1; j >= 0; --j) suffix_top[j] = suffix_top[j + 1] + (F.modes(u[j]).empty() ? FracExp(-1) : top[j]);
  TQVec out;
  Pure cur(k);
  std::function<void(int, FracExp, Rational)> rec = [&](int j, FracExp need, Rational coef) {
    // need = sum over remaining factors of t_j, where sum t_j = t - (k-1)
    if (j == k - 1) {
      if (need > top[j]) return;
      const QVec& img = E.mode(u[j], need, v[j]);
      for (const auto& [id, c] : img.terms()) {
        cur[j] = id;
        out.add(cur, coef * c);
      }
      return;
    }
    const bool vac = F.modes(u[j]).empty();
    FracExp t_lo = vac ? FracExp(-1) : FracExp((need - suffix_top[j + 1]).ceil());
    FracExp t_hi = vac ? FracExp(-1) : top[j];
    for (FracExp tj = t_lo; tj <= t_hi; tj += 1) {
      const QVec& img = E.mode(u[j], tj, v[j]);
      for (const auto& [id, c] : img.terms()) {
        cur[j] = id;
        rec(j + 1, need - tj, coef * c);
      }
    }
  };
  rec(0, t - FracExp(k - 1), Rational(sign));
  return out;
}

std::map<FracExp, TQVec> tensor_vertex_op(const Pure& u, const Pure& v, const FracExp& lo, const FracExp& hi) {
  std::map<FracExp, TQVec> out;
  for (std::int64_t e = lo.ceil(); FracExp(e) <= hi; ++e) {
    TQVec r = tensor_mode(u, FracExp(-e - 1), v);
    if (!r.empty()) out[FracExp(e)] = r;
  }
  return out;
}

std::pair<int, Pure> permutation_action(const std::vector<int>& g, const Pure& v) {
  const int k = static_cast<int>(v.size());
  Pure r(k);
  for (int i = 0; i < k; ++i) r[i] = v[g[i]];
  int sign = 1;
  FockSpace& F = FockSpace::ns();
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j)
      if (g[i] > g[j] && F.parity(v[g[i]]) && F.parity(v[g[j]])) sign = -sign;
  return {sign, r};
}

std::vector<int> cycle_permutation(int k) {
  std::vector<int> g(k);
  for (int i = 0; i < k; ++i) g[i] = (i + 1) % k;
  return g;
}

std::vector<int> compose(const std::vector<int>& g1, const std::vector<int>& g2) {
  std::vector<int> r(g1.size());
  for (size_t i = 0; i < g1.size(); ++i) r[i] = g1[g2[i]];
  return r;
}

}  // namespace orbifold
