#include "orbifold/twist.hpp"

namespace orbifold {

void require_even_order(int k) {
  if (k < 2 || k % 2 != 0)
    throw OddOrderError("k = " + std::to_string(k) +
                        ": the (1 2 ... k)-twisted module on the Ramond sector needs the permutation order k to be even");
}

TwistContext::TwistContext(int k, bool peel_last) : k_(k), peel_last_(peel_last) {
  if (k < 1) throw std::invalid_argument("k must be positive");
}

CycScalar TwistContext::eta_pow(const FracExp& e) const {
  FracExp q = e * FracExp(4);
  if (!q.is_integer()) throw std::domain_error("eta power off the (1/4)Z lattice: " + e.to_string());
  const std::int64_t N = 4 * k_;
  std::int64_t m = ((q.num() % N) + N) % N;
  return cyc_root_of_unity(static_cast<int>(N), m);
}

FracExp TwistContext::t_grade(int w) const { return FracExp(FockSpace::ramond().level2(w), 2 * k_); }

CVec TwistContext::ybar_mode(int u, const FracExp& n, int w) {
  auto key = std::make_tuple(u, n, w);
  auto it = ybar_memo_.find(key);
  if (it != ybar_memo_.end()) return it->second;
  VertexEngine& E = VertexEngine::shared(Sector::R);
  CVec out;
  const CVec src(w, CycScalar(1));
  for (const auto& [f, uf] : apply_delta_series(k_, Direction::Forward, CVec(u, CycScalar(1))))
    out += E.mode(uf, FracExp(k_) * (n + FracExp(1) + f) - FracExp(1), src);
  return ybar_memo_.emplace(key, std::move(out)).first->second;
}

CVec TwistContext::ybar_mode(const CVec& u, const FracExp& n, const CVec& w) {
  CVec out;
  for (const auto& [uid, uc] : u.terms())
    for (const auto& [wid, wc] : w.terms()) out.add_scaled(ybar_mode(uid, n, wid), uc * wc);
  return out;
}

CVec TwistContext::ybar_mode(const QVec& u, const FracExp& n, const CVec& w) { return ybar_mode(to_cyc(u), n, w); }

CVec TwistContext::factor_mode(const QVec& u, int j, const FracExp& n, const CVec& w) {
  if (j < 1 || j > k_) throw std::out_of_range("tensor slot");
  CVec r = ybar_mode(u, n, w);
  if (j == 1 || r.empty()) return r;
  return r * eta_pow(-FracExp(j - 1) * FracExp(k_) * n);
}

const CVec& TwistContext::yg_mode(const Pure& P, const FracExp& n, int w) {
  Key key{P, n, w};
  auto it = yg_memo_.find(key);
  if (it != yg_memo_.end()) return it->second;
  CVec r = yg_compute(P, n, w);
  return yg_memo_.emplace(std::move(key), std::move(r)).first->second;
}

CVec TwistContext::yg_mode(const Pure& P, const FracExp& n, const CVec& w) {
  CVec out;
  for (const auto& [id, c] : w.terms()) out.add_scaled(yg_mode(P, n, id), c);
  return out;
}

CVec TwistContext::yg_mode(const TCVec& P, const FracExp& n, const CVec& w) {
  CVec out;
  for (const auto& [p, c] : P.terms()) out.add_scaled(yg_mode(p, n, w), c);
  return out;
}

CVec TwistContext::yg_compute(const Pure& P, const FracExp& t, int w) {
  if (static_cast<int>(P.size()) != k_) throw std::invalid_argument("tensor length differs from k");
  FockSpace& V = FockSpace::ns();
  std::vector<int> slots;
  for (int i = 0; i < k_; ++i)
    if (!V.modes(P[i]).empty()) slots.push_back(i);
  const CVec src(w, CycScalar(1));
  if (slots.empty()) return t == FracExp(-1) ? src : CVec();
  const FracExp tw = t_grade(w);
  if (tw + tensor_weight(P) - t - FracExp(1) < FracExp(0)) return {};
  if (slots.size() == 1) return factor_mode(QVec(P[slots[0]], 1), slots[0] + 1, t, src);

  // P = s (u^j)_(-1) b with s the Koszul sign of moving u past the earlier slots of b; u^j = (1/k) sum_r eta^{-rj} a_r with a_r = sum_j' eta^{rj'} u^{j'} in V^r,
  // and (a_r)_(s) = k eta^{ks} Ybar(u)_s on s in r/k + Z.
  const int slot = peel_last_ ? slots.back() : slots.front();
  const int j = slot + 1;
  const int u = P[slot];
  Pure b = P;
  b[slot] = V.vacuum();
  int before = 0;
  for (int i = 0; i < slot; ++i) before ^= V.parity(P[i]);
  const Rational koszul = (V.parity(u) && before) ? -1 : 1;
  const FracExp wu = V.level(u), wb = tensor_weight(b);
  const Rational eps = (V.parity(u) && tensor_parity(b)) ? -1 : 1;
  const QVec uq(u, 1);
  auto a_mode = [&](const FracExp& s, const CVec& x) {
    CVec r = ybar_mode(uq, s, x);
    return r.empty() ? r : r * (eta_pow(FracExp(k_) * s) * CycScalar(k_));
  };
  CVec out;
  for (int r = 0; r < k_; ++r) {
    const FracExp m(r, k_);
    const FracExp n = t - m;
    CVec Z;
    for (long i = 0; n + FracExp(i) <= tw + wb - FracExp(1); ++i) {
      const CVec& bw = yg_mode(b, n + FracExp(i), w);
      if (!bw.empty()) Z += a_mode(m - FracExp(1) - FracExp(i), bw);
    }
    for (long i = 0; m + FracExp(i) <= tw + wu - FracExp(1); ++i) {
      CVec aw = a_mode(m + FracExp(i), src);
      if (!aw.empty()) Z.add_scaled(yg_mode(b, n - FracExp(1) - FracExp(i), aw), CycScalar(eps));
    }
    if (r != 0) {
      for (long i = 1; FracExp(i - 1) <= wu + wb - FracExp(1); ++i) {
        Rational c = binom(m, i);
        if (sgn(c) == 0) continue;
        TCVec ab;
        for (int jp = 1; jp <= k_; ++jp) {
          TQVec x = tensor_mode(slot_vector(k_, jp, u), FracExp(i - 1), b);
          if (!x.empty()) ab.add_scaled(to_cyc(x), eta_pow(FracExp(static_cast<std::int64_t>(r) * jp)));
        }
        if (!ab.empty()) Z.add_scaled(yg_mode(ab, t - FracExp(i), src), CycScalar(-c));
      }
    }
    if (!Z.empty()) out.add_scaled(Z, eta_pow(FracExp(-static_cast<std::int64_t>(r) * j)));
  }
  return out * CycScalar(koszul / k_);
}

CVec TwistContext::lg0(const CVec& w) {
  CVec out;
  const QVec om = omega_state();
  for (int j = 1; j <= k_; ++j) out += factor_mode(om, j, FracExp(1), w);
  return out;
}

CVec TwistContext::u_sigma_mode(const QVec& u, const FracExp& m, const CVec& w, int branch) {
  if (branch % k_ != 0)
    throw BranchViolation("branch (x^k)^{1/k} = eta^" + std::to_string(branch) +
                          " x does not give a sigma-twisted module; only the principal branch is allowed");
  CVec out;
  const FracExp shift = (m + FracExp(1)) / FracExp(k_) - FracExp(1);
  for (const auto& [e, ue] : apply_delta_series(k_, Direction::Inverse, to_cyc(u))) out += ybar_mode(ue, e + shift, w);
  return out;
}

CVec TwistContext::tu_ybar_mode(const QVec& u, const FracExp& n, const CVec& w) {
  CVec out;
  for (const auto& [f, uf] : apply_delta_series(k_, Direction::Forward, to_cyc(u))) {
    const FracExp q = FracExp(k_) * (n + FracExp(1) + f) - FracExp(1);
    for (const auto& [id, c] : uf.terms()) out.add_scaled(u_sigma_mode(QVec(id, 1), q, w), c);
  }
  return out;
}

namespace {

template <class F>
Field materialize(int k, int parity, const FracExp& lo, const FracExp& hi, int max_level2, F mode) {
  Field f;
  f.sector = Sector::R;
  f.parity = parity;
  f.lo = lo;
  f.hi = hi;
  f.max_level2 = max_level2;
  const FracExp step(1, 2 * k);
  for (int w : FockSpace::ramond().basis_up_to(max_level2))
    for (FracExp e = FracExp((lo * FracExp(2 * k)).ceil(), 2 * k); e <= hi; e += step) {
      CVec img = mode(-e - FracExp(1), CVec(w, CycScalar(1)));
      if (!img.empty()) f.terms[e][w] = img;
    }
  return f;
}

}  // namespace

Field ybar_field(TwistContext& T, const QVec& u, const FracExp& lo, const FracExp& hi, int max_level2) {
  return materialize(T.k(), state_parity(u), lo, hi, max_level2,
                     [&](const FracExp& n, const CVec& w) { return T.ybar_mode(u, n, w); });
}

Field yg_tensor_factor(TwistContext& T, const QVec& u, int j, const FracExp& lo, const FracExp& hi, int max_level2) {
  require_even_order(T.k());
  return materialize(T.k(), state_parity(u), lo, hi, max_level2,
                     [&](const FracExp& n, const CVec& w) { return T.factor_mode(u, j, n, w); });
}

Field yg_general(TwistContext& T, const Pure& P, const FracExp& lo, const FracExp& hi, int max_level2) {
  require_even_order(T.k());
  return materialize(T.k(), tensor_parity(P), lo, hi, max_level2,
                     [&](const FracExp& n, const CVec& w) { return T.yg_mode(P, n, w); });
}

std::map<int, CVec> twisted_mode(TwistContext& T, const QVec& u, const FracExp& m, int max_level2) {
  require_even_order(T.k());
  std::map<int, CVec> out;
  for (int w : FockSpace::ramond().basis_up_to(max_level2)) {
    CVec img = T.ybar_mode(u, m, CVec(w, CycScalar(1)));
    if (!img.empty()) out[w] = img;
  }
  return out;
}

Field u_functor_sigma_op(TwistContext& T, const QVec& u, const FracExp& lo, const FracExp& hi, int max_level2,
                         int branch) {
  require_even_order(T.k());
  if (branch % T.k() != 0) T.u_sigma_mode(u, 0, {}, branch);  // throws
  return materialize(T.k(), state_parity(u), lo, hi, max_level2,
                     [&](const FracExp& m, const CVec& w) { return T.u_sigma_mode(u, m, w, branch); });
}

TwistedModuleView::TwistedModuleView(int k, int max_level) : k_(k), max_level_(max_level), ctx_((require_even_order(k), k)) {
  basis_ = FockSpace::ramond().basis_up_to(2 * max_level);
}

FracExp TwistedModuleView::t_grade(int w) const { return ctx_.t_grade(w); }

CycScalar TwistedModuleView::lg0_eigenvalue(int w) {
  CVec img = ctx_.lg0(CVec(w, CycScalar(1)));
  CycScalar d = img.coeff(w);
  if (!(img == CVec(w, d))) throw std::logic_error("L^g(0) is not diagonal on the mode basis");
  return d;
}

Rational TwistedModuleView::predicted_lg0(int w) const {
  return sigma_L0_eigenvalue(w) / k_ + Rational(k_ * k_ - 1) * central_charge() / (24 * k_);
}

nlohmann::ordered_json TwistedModuleView::summary() {
  std::map<FracExp, long> hist;
  for (int w : basis_) ++hist[t_grade(w)];
  nlohmann::ordered_json j;
  j["k"] = k_;
  j["cutoff"] = FracExp(max_level_, k_).to_string();
  j["dimension"] = basis_.size();
  auto h = nlohmann::ordered_json::array();
  for (const auto& [g, n] : hist) {
    Rational lg = sigma_L0_eigenvalue(0) / k_ + g.to_rational() + Rational(k_ * k_ - 1) * central_charge() / (24 * k_);
    h.push_back({{"grade", g.to_string()}, {"L0", to_string(lg)}, {"dim", n}});
  }
  j["grading"] = h;
  return j;
}

}  // namespace orbifold
