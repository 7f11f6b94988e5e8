#include "orbifold/formal.hpp"

#include <algorithm>
#include <numeric>

namespace orbifold {

namespace {
using i128 = __int128;

FracExp make(i128 n, i128 d) {
  if (d == 0) throw std::domain_error("zero denominator");
  if (d < 0) n = -n, d = -d;
  i128 a = n < 0 ? -n : n, b = d;
  while (b != 0) {
    i128 t = a % b;
    a = b;
    b = t;
  }
  if (a > 1) n /= a, d /= a;
  return FracExp(static_cast<std::int64_t>(n), static_cast<std::int64_t>(d));
}
}  // namespace

FracExp::FracExp(std::int64_t n, std::int64_t d) {
  if (d == 0) throw std::domain_error("zero denominator");
  if (d < 0) n = -n, d = -d;
  std::int64_t g = std::gcd(n < 0 ? -n : n, d);
  if (g > 1) n /= g, d /= g;
  num_ = n;
  den_ = d;
}

FracExp FracExp::from_rational(const Rational& q) {
  return FracExp(q.get_num().get_si(), q.get_den().get_si());
}

std::int64_t FracExp::floor() const {
  std::int64_t q = num_ / den_;
  if (num_ % den_ != 0 && num_ < 0) --q;
  return q;
}

std::int64_t FracExp::ceil() const { return -(-*this).floor(); }

std::int64_t FracExp::scaled(std::int64_t D) const {
  if (!on_lattice(D)) throw std::domain_error("exponent " + to_string() + " not on lattice 1/" + std::to_string(D));
  return num_ * (D / den_);
}

std::string FracExp::to_string() const {
  return den_ == 1 ? std::to_string(num_) : std::to_string(num_) + "/" + std::to_string(den_);
}

FracExp operator+(const FracExp& a, const FracExp& b) {
  if (a.den_ == b.den_) return make(static_cast<i128>(a.num_) + b.num_, a.den_);
  return make(static_cast<i128>(a.num_) * b.den_ + static_cast<i128>(b.num_) * a.den_,
              static_cast<i128>(a.den_) * b.den_);
}

FracExp operator*(const FracExp& a, const FracExp& b) {
  return make(static_cast<i128>(a.num_) * b.num_, static_cast<i128>(a.den_) * b.den_);
}

FracExp operator/(const FracExp& a, const FracExp& b) {
  return make(static_cast<i128>(a.num_) * b.den_, static_cast<i128>(a.den_) * b.num_);
}

std::strong_ordering operator<=>(const FracExp& a, const FracExp& b) {
  i128 l = static_cast<i128>(a.num_) * b.den_, r = static_cast<i128>(b.num_) * a.den_;
  return l < r ? std::strong_ordering::less : (l > r ? std::strong_ordering::greater : std::strong_ordering::equal);
}

Rational binom(const FracExp& r, long m) { return binom(r.to_rational(), m); }

bool Interval::contains(const FracExp& e) const { return (lo_inf || e >= lo) && (hi_inf || e <= hi); }

bool Interval::knows(const FracExp& e) const { return (hi_inf || e <= hi) && (lo_inf || zero_below || e >= lo); }

Window Window::box(int nvars, std::int64_t lattice, FracExp lo, FracExp hi) {
  Window w;
  w.lattice = lattice;
  w.vars.assign(nvars, Interval::closed(lo, hi));
  return w;
}

bool Window::contains(const Exps& e) const {
  for (int i = 0; i < nvars(); ++i)
    if (!vars[i].contains(e[i])) return false;
  return true;
}

bool Window::knows(const Exps& e) const {
  for (int i = 0; i < nvars(); ++i)
    if (!vars[i].knows(e[i])) return false;
  return true;
}

nlohmann::ordered_json Window::to_json(const std::vector<std::string>& names) const {
  nlohmann::ordered_json j;
  j["lattice"] = "1/" + std::to_string(lattice);
  for (int i = 0; i < nvars(); ++i) {
    const auto& v = vars[i];
    std::string nm = i < static_cast<int>(names.size()) ? names[i] : "v" + std::to_string(i);
    j[nm] = {v.lo_inf ? "-inf" : v.lo.to_string(), v.hi_inf ? "inf" : v.hi.to_string()};
  }
  return j;
}

void ScalarSeries::add(const Exps& e, const CycScalar& c) {
  if (c.is_zero() || !window_.contains(e)) return;
  auto it = terms_.find(e);
  if (it == terms_.end()) {
    terms_.emplace(e, c);
    return;
  }
  it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

std::optional<CycScalar> ScalarSeries::coeff(const Exps& e) const {
  if (!window_.knows(e)) return std::nullopt;
  auto it = terms_.find(e);
  return it == terms_.end() ? CycScalar(0) : it->second;
}

std::pair<FracExp, FracExp> ScalarSeries::support(int var) const {
  if (terms_.empty()) return {0, 0};
  FracExp lo = terms_.begin()->first[var], hi = lo;
  for (const auto& [e, c] : terms_) {
    lo = std::min(lo, e[var]);
    hi = std::max(hi, e[var]);
  }
  return {lo, hi};
}

namespace {

// Per-variable window of a sum: known where both summands are known.
Interval sum_interval(const Interval& I, const Interval& J, const ScalarSeries& a, const ScalarSeries& b, int var) {
  Interval r;
  r.hi_inf = I.hi_inf && J.hi_inf;
  if (!r.hi_inf) r.hi = I.hi_inf ? J.hi : (J.hi_inf ? I.hi : std::min(I.hi, J.hi));
  bool I_down = I.lo_inf || I.zero_below, J_down = J.lo_inf || J.zero_below;
  if (I.lo_inf && J.lo_inf) {
    r.lo_inf = true;
  } else if (I_down && J_down) {
    // zero below: take the lowest point where either summand may be nonzero
    std::optional<FracExp> lo;
    auto consider = [&](const Interval& K, const ScalarSeries& s) {
      FracExp cand = K.lo;
      if (K.lo_inf) {
        if (s.terms().empty()) return;
        cand = s.support(var).first;
      }
      lo = lo ? std::min(*lo, cand) : cand;
    };
    consider(I, a);
    consider(J, b);
    r.lo = lo.value_or(FracExp(0));
    r.zero_below = true;
  } else {
    FracExp lo = 0;
    bool have = false;
    for (const Interval* K : {&I, &J}) {
      if (K->lo_inf || K->zero_below) continue;
      lo = have ? std::max(lo, K->lo) : K->lo;
      have = true;
    }
    r.lo = lo;
  }
  return r;
}

Window sum_window(const ScalarSeries& a, const ScalarSeries& b) {
  if (a.nvars() != b.nvars()) throw std::invalid_argument("variable count mismatch");
  Window w;
  w.lattice = std::lcm(a.window().lattice, b.window().lattice);
  for (int i = 0; i < a.nvars(); ++i) w.vars.push_back(sum_interval(a.window().vars[i], b.window().vars[i], a, b, i));
  return w;
}

FracExp add_inf(const FracExp& a, const FracExp& b) { return a + b; }

Interval product_interval(const Interval& I, const Interval& J, const ScalarSeries& a, const ScalarSeries& b,
                          int var) {
  if (I.is_exact() && J.is_exact()) return Interval::exact();
  auto exact_times = [&](const ScalarSeries& ex, const Interval& K) {
    auto [mn, mx] = ex.support(var);
    Interval r;
    r.hi_inf = K.hi_inf;
    if (!K.hi_inf) r.hi = add_inf(K.hi, mn);
    r.lo_inf = K.lo_inf;
    if (!K.lo_inf) {
      if (K.zero_below) {
        r.lo = K.lo + mn;
        r.zero_below = true;
      } else {
        r.lo = K.lo + mx;
      }
    }
    return r;
  };
  if (I.is_exact()) return exact_times(a, J);
  if (J.is_exact()) return exact_times(b, I);
  if (I.zero_below && J.zero_below && !I.lo_inf && !J.lo_inf) {
    Interval r;
    r.zero_below = true;
    r.lo = I.lo + J.lo;
    if (I.hi_inf && J.hi_inf) {
      r.hi_inf = true;
    } else if (I.hi_inf) {
      r.hi = J.hi + I.lo;
    } else if (J.hi_inf) {
      r.hi = I.hi + J.lo;
    } else {
      r.hi = std::min(I.hi + J.lo, J.hi + I.lo);
    }
    return r;
  }
  throw window_error("product window cannot be determined in variable " + std::to_string(var));
}

}  // namespace

ScalarSeries& ScalarSeries::operator+=(const ScalarSeries& o) {
  Window w = sum_window(*this, o);
  ScalarSeries out(w);
  for (const auto& [e, c] : terms_) out.add(e, c);
  for (const auto& [e, c] : o.terms_) out.add(e, c);
  return *this = std::move(out);
}

ScalarSeries& ScalarSeries::operator-=(const ScalarSeries& o) { return *this += o * CycScalar(-1); }

ScalarSeries ScalarSeries::operator*(const CycScalar& c) const {
  ScalarSeries out(window_);
  for (const auto& [e, v] : terms_) out.add(e, v * c);
  return out;
}

nlohmann::ordered_json ScalarSeries::to_json() const {
  auto arr = nlohmann::ordered_json::array();
  for (const auto& [e, c] : terms_) {
    auto ex = nlohmann::ordered_json::array();
    for (const auto& x : e) ex.push_back(x.to_string());
    arr.push_back({{"exps", ex}, {"coeff", c.to_string()}});
  }
  return arr;
}

ScalarSeries operator+(ScalarSeries a, const ScalarSeries& b) { return a += b; }
ScalarSeries operator-(ScalarSeries a, const ScalarSeries& b) { return a -= b; }

ScalarSeries operator*(const ScalarSeries& a, const ScalarSeries& b) {
  if (a.nvars() != b.nvars()) throw std::invalid_argument("variable count mismatch");
  Window w;
  w.lattice = std::lcm(a.window().lattice, b.window().lattice);
  for (int i = 0; i < a.nvars(); ++i) w.vars.push_back(product_interval(a.window().vars[i], b.window().vars[i], a, b, i));
  ScalarSeries out(w);
  Exps e(a.nvars());
  for (const auto& [ea, ca] : a.terms())
    for (const auto& [eb, cb] : b.terms()) {
      for (int i = 0; i < a.nvars(); ++i) e[i] = ea[i] + eb[i];
      out.add(e, ca * cb);
    }
  return out;
}

ScalarSeries monomial(const Window& w, const Exps& e, const CycScalar& c) {
  Window x;
  x.lattice = w.lattice;
  x.vars.assign(w.nvars(), Interval::exact());
  ScalarSeries s(x);
  s.add(e, c);
  return s;
}

ScalarSeries mul_monomial(const ScalarSeries& s, const Exps& e) {
  Window w = s.window();
  for (int i = 0; i < w.nvars(); ++i) {
    if (!w.vars[i].lo_inf) w.vars[i].lo += e[i];
    if (!w.vars[i].hi_inf) w.vars[i].hi += e[i];
  }
  ScalarSeries out(w);
  Exps t(e.size());
  for (const auto& [x, c] : s.terms()) {
    for (size_t i = 0; i < e.size(); ++i) t[i] = x[i] + e[i];
    out.add(t, c);
  }
  return out;
}

namespace {
FracExp finite_hi(const Interval& I, const char* what) {
  if (I.hi_inf) throw window_error(std::string("window must be finite in ") + what);
  return I.hi;
}
}  // namespace

ScalarSeries binom_expand(int first, int second, int sign, const FracExp& r, const Window& w) {
  const FracExp M = finite_hi(w.vars[second], "the expansion variable");
  Window nat;
  nat.lattice = w.lattice;
  nat.vars.assign(w.nvars(), Interval::exact());
  nat.vars[second] = Interval::from(0, FracExp(M.floor()));
  ScalarSeries s(nat);
  Exps e(w.nvars(), FracExp(0));
  for (long m = 0; m <= M.floor(); ++m) {
    e[first] = r - FracExp(m);
    e[second] = FracExp(m);
    Rational c = binom(r, m);
    if (sign < 0 && (m & 1)) c = -c;
    s.add(e, CycScalar(c));
  }
  return s;
}

ScalarSeries delta_series(const Exps& e, const CycScalar& c, const Window& w) {
  int pivot = -1;
  for (int i = 0; i < w.nvars(); ++i)
    if (e[i] != FracExp(0)) {
      pivot = i;
      break;
    }
  if (pivot < 0) throw std::invalid_argument("delta of a constant");
  const Interval& P = w.vars[pivot];
  if (P.lo_inf || P.hi_inf) throw window_error("delta_series needs a finite window");
  FracExp a = P.lo / e[pivot], b = P.hi / e[pivot];
  if (a > b) std::swap(a, b);
  Window nat = w;
  for (auto& v : nat.vars) v.zero_below = false;
  ScalarSeries s(nat);
  Exps x(w.nvars());
  for (long n = a.ceil(); n <= b.floor(); ++n) {
    for (int i = 0; i < w.nvars(); ++i) x[i] = e[i] * FracExp(n);
    s.add(x, c.pow(n));
  }
  return s;
}

ScalarSeries delta_binomial(int a, int b, int sign, int den, const FracExp& step, const FracExp& r,
                            const FracExp& shift, const CycScalar& c, const Window& w) {
  const Interval& D = w.vars[den];
  if (D.lo_inf || D.hi_inf) throw window_error("delta_binomial needs a finite window in the denominator variable");
  const FracExp M = finite_hi(w.vars[b], "the expansion variable");
  Window nat;
  nat.lattice = w.lattice;
  nat.vars.assign(w.nvars(), Interval::exact());
  nat.vars[den] = D;
  nat.vars[den].zero_below = false;
  nat.vars[b] = Interval::from(0, FracExp(M.floor()));
  ScalarSeries s(nat);
  // den exponent -(n*step + r) + shift in [lo, hi]
  FracExp n_lo = (shift - r - D.hi) / step, n_hi = (shift - r - D.lo) / step;
  if (n_lo > n_hi) std::swap(n_lo, n_hi);
  Exps e(w.nvars(), FracExp(0));
  for (long n = n_lo.ceil(); n <= n_hi.floor(); ++n) {
    FracExp pw = FracExp(n) * step + r;
    CycScalar cn = c.pow(n);
    for (long m = 0; m <= M.floor(); ++m) {
      e[a] = pw - FracExp(m);
      e[b] = FracExp(m);
      e[den] = shift - pw;
      Rational bc = binom(pw, m);
      if (sign < 0 && (m & 1)) bc = -bc;
      s.add(e, cn * CycScalar(bc));
    }
  }
  return s;
}

ScalarSeries residue(const ScalarSeries& s, int var) {
  if (!s.window().vars[var].knows(FracExp(-1)))
    throw window_error("window does not cover exponent -1 in variable " + std::to_string(var));
  Window w;
  w.lattice = s.window().lattice;
  for (int i = 0; i < s.nvars(); ++i)
    if (i != var) w.vars.push_back(s.window().vars[i]);
  ScalarSeries out(w);
  for (const auto& [e, c] : s.terms()) {
    if (e[var] != FracExp(-1)) continue;
    Exps r;
    for (int i = 0; i < s.nvars(); ++i)
      if (i != var) r.push_back(e[i]);
    out.add(r, c);
  }
  return out;
}

ScalarSeries derivative(const ScalarSeries& s, int var) {
  Window w = s.window();
  auto& v = w.vars[var];
  if (!v.lo_inf) v.lo -= 1;
  if (!v.hi_inf) v.hi -= 1;
  ScalarSeries out(w);
  for (const auto& [e, c] : s.terms()) {
    Exps d = e;
    d[var] -= 1;
    out.add(d, c * CycScalar(e[var].to_rational()));
  }
  return out;
}

ScalarSeries scale_exponents(const ScalarSeries& s, int var, const CycScalar& O) {
  ScalarSeries out(s.window());
  for (const auto& [e, c] : s.terms()) {
    if (!e[var].is_integer()) throw std::domain_error("O^{L(0)} with a scalar O needs integral exponents");
    out.add(e, c * O.pow(e[var].num()));
  }
  return out;
}

ScalarSeries scale_exponents_root(const ScalarSeries& s, int var, int N, long m) {
  ScalarSeries out(s.window());
  for (const auto& [e, c] : s.terms()) {
    FracExp p = e[var] * FracExp(m);
    if (!p.is_integer()) throw std::domain_error("root power not defined on this exponent lattice");
    out.add(e, c * cyc_root_of_unity(N, p.num()));
  }
  return out;
}

ScalarSeries scale_exponents_monomial(const ScalarSeries& s, int var, int target, const FracExp& factor) {
  Window w = s.window();
  if (!w.vars[target].is_exact()) throw window_error("target variable must carry no truncation");
  w.lattice = std::lcm(w.lattice, (factor * FracExp(1, w.lattice)).den());
  ScalarSeries out(w);
  for (const auto& [e, c] : s.terms()) {
    Exps t = e;
    t[target] += factor * e[var];
    out.add(t, c);
  }
  return out;
}

namespace {

ScalarSeries one_like(const Window& w) { return monomial(w, Exps(w.nvars(), FracExp(0))); }

ScalarSeries power(const ScalarSeries& h, long n, int zvar) {
  if (n >= 0) {
    ScalarSeries out = one_like(h.window());
    for (long i = 0; i < n; ++i) out = out * h;
    return out;
  }
  if (h.terms().empty()) throw std::domain_error("non-composable substitution: zero series");
  FracExp low = h.terms().begin()->first[zvar];
  for (const auto& [e, c] : h.terms()) low = std::min(low, e[zvar]);
  if (!h.window().vars[zvar].zero_below || h.window().vars[zvar].lo > low)
    throw std::domain_error("non-composable substitution: lowest order not known");
  std::vector<std::pair<Exps, CycScalar>> lead;
  for (const auto& [e, c] : h.terms())
    if (e[zvar] == low) lead.emplace_back(e, c);
  if (lead.size() != 1 || low <= FracExp(0))
    throw std::domain_error("non-composable substitution: leading term must be one monomial of positive order");
  Exps inv_e = lead[0].first;
  for (auto& x : inv_e) x = -x;
  ScalarSeries Linv = monomial(h.window(), inv_e, lead[0].second.inverse());
  ScalarSeries eps = h * Linv - one_like(h.window());  // h = L (1 + eps)
  FracExp span = h.window().vars[zvar].hi - low;
  FracExp gap = span;
  for (const auto& [e, c] : eps.terms())
    if (e[zvar] > FracExp(0)) gap = std::min(gap, e[zvar]);
  long imax = gap > FracExp(0) ? (span / gap).floor() : 0;
  ScalarSeries geo = one_like(h.window()), term = one_like(h.window());
  ScalarSeries neg_eps = eps * CycScalar(-1);
  for (long i = 1; i <= imax; ++i) {
    term = term * neg_eps;
    geo += term;
  }
  ScalarSeries inv = Linv * geo;
  return power(inv, -n, zvar);
}

}  // namespace

ScalarSeries change_of_variable(const ScalarSeries& f, int var, const ScalarSeries& h, const ScalarSeries& dh,
                                int zvar) {
  std::map<FracExp, ScalarSeries> parts;
  for (const auto& [e, c] : f.terms()) {
    if (!e[var].is_integer()) throw std::domain_error("substituted variable must carry integral exponents");
    auto it = parts.find(e[var]);
    if (it == parts.end()) {
      Window w = f.window();
      w.vars[var] = Interval::exact();
      it = parts.emplace(e[var], ScalarSeries(w)).first;
    }
    Exps t = e;
    t[var] = 0;
    it->second.add(t, c);
  }
  std::optional<ScalarSeries> acc;
  for (const auto& [n, fn] : parts) {
    ScalarSeries term = fn * power(h, n.num(), zvar);
    acc = acc ? *acc + term : term;
  }
  if (!acc) {
    Window w = f.window();
    w.vars[var] = Interval::exact();
    acc = ScalarSeries(w);
  }
  return dh * *acc;
}

std::string to_string(DeltaIdentity id) {
  switch (id) {
    case DeltaIdentity::DF1:
      return "delta.df1";
    case DeltaIdentity::DF2:
      return "delta.df2";
    case DeltaIdentity::DF3:
      return "delta.df3";
    case DeltaIdentity::ThreeTerm:
      return "delta.three_term";
  }
  return "delta.unknown";
}

void compare_series(const ScalarSeries& lhs, const ScalarSeries& rhs, CheckReport& report,
                    const std::vector<std::string>& names) {
  std::map<Exps, int> keys;
  for (const auto& [e, c] : lhs.terms()) keys[e] = 1;
  for (const auto& [e, c] : rhs.terms()) keys[e] = 1;
  for (const auto& [e, unused] : keys) {
    auto a = lhs.coeff(e), b = rhs.coeff(e);
    if (!a || !b) continue;
    std::string where;
    for (size_t i = 0; i < e.size(); ++i) {
      if (i) where += " ";
      where += (i < names.size() ? names[i] : "v" + std::to_string(i)) + "^" + e[i].to_string();
    }
    report.record(where, a->to_string(), b->to_string(), *a == *b);
  }
}

CheckReport verify_delta_identity(DeltaIdentity id, int k, const FracExp& r, const FracExp& radius) {
  enum { X0 = 0, X1 = 1, X2 = 2 };
  const std::vector<std::string> names = {"x0", "x1", "x2"};
  CheckReport rep;
  rep.name = to_string(id);
  rep.k = k;
  Window box = Window::box(3, 2 * k, -radius, radius);
  rep.window = box.to_json(names);
  rep.window["r"] = r.to_string();
  const FracExp one = 1, inv_k(1, k), minus1 = -1;
  ScalarSeries lhs, rhs;
  switch (id) {
    case DeltaIdentity::DF1:
      lhs = delta_binomial(X1, X0, -1, X2, one, r, minus1, 1, box);
      rhs = delta_binomial(X2, X0, +1, X1, one, -r, minus1, 1, box);
      break;
    case DeltaIdentity::DF2:
      for (int p = 0; p < k; ++p) {
        ScalarSeries t = delta_binomial(X1, X0, -1, X2, one, r + FracExp(p, k), minus1, 1, box);
        lhs = p == 0 ? t : lhs + t;
      }
      rhs = delta_binomial(X1, X0, -1, X2, inv_k, r, minus1, 1, box);
      break;
    case DeltaIdentity::DF3:
      lhs = delta_binomial(X1, X0, -1, X2, inv_k, r, minus1, 1, box);
      rhs = delta_binomial(X2, X0, +1, X1, inv_k, -r, minus1, 1, box);
      break;
    case DeltaIdentity::ThreeTerm:
      lhs = delta_binomial(X1, X2, -1, X0, one, 0, minus1, 1, box) -
            delta_binomial(X2, X1, -1, X0, one, 0, minus1, -1, box);
      rhs = delta_binomial(X1, X0, -1, X2, one, 0, minus1, 1, box);
      break;
  }
  // compare only inside the requested box
  auto clip = [&](const ScalarSeries& s) {
    Window w = s.window();
    for (int i = 0; i < 3; ++i) {
      auto& v = w.vars[i];
      bool knows_lo = v.lo_inf || v.zero_below || v.lo <= -radius;
      bool knows_hi = v.hi_inf || v.hi >= radius;
      if (!knows_lo || !knows_hi) throw window_error("series window does not cover the comparison box");
      v = Interval::closed(-radius, radius);
    }
    ScalarSeries out(w);
    for (const auto& [e, c] : s.terms()) out.add(e, c);
    return out;
  };
  try {
    compare_series(clip(lhs), clip(rhs), rep, names);
  } catch (const std::exception& ex) {
    rep.error = ex.what();
  }
  return rep;
}

}  // namespace orbifold
