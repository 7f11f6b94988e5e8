#include "orbifold/fock.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace orbifold {

FockSpace::FockSpace(Sector s) : sector_(s) { intern({}); }

FockSpace& FockSpace::ns() {
  static FockSpace f(Sector::NS);
  return f;
}

FockSpace& FockSpace::ramond() {
  static FockSpace f(Sector::R);
  return f;
}

int FockSpace::intern(const std::vector<int>& m2) {
  auto it = index_.find(m2);
  if (it != index_.end()) return it->second;
  int lvl = 0;
  for (size_t i = 0; i < m2.size(); ++i) {
    int m = m2[i];
    bool ok = sector_ == Sector::NS ? (m < 0 && (m & 1)) : (m <= 0 && !(m & 1));
    if (!ok || (i > 0 && m2[i - 1] >= m)) throw std::invalid_argument("malformed Fock basis vector");
    lvl -= m;
  }
  int id = static_cast<int>(basis_.size());
  basis_.push_back(m2);
  level2_.push_back(lvl);
  index_.emplace(m2, id);
  return id;
}

std::string FockSpace::label(int id) const {
  std::string s;
  for (int m : basis_[id]) {
    s += "psi(";
    s += (m % 2 == 0) ? std::to_string(m / 2) : std::to_string(m) + "/2";
    s += ")";
  }
  return s + (sector_ == Sector::NS ? "|0>" : "|R>");
}

int FockSpace::parse(const std::string& label) {
  std::vector<int> m2;
  size_t pos = 0;
  while (label.compare(pos, 4, "psi(") == 0) {
    size_t close = label.find(')', pos);
    if (close == std::string::npos) throw std::invalid_argument("bad basis label: " + label);
    FracExp v = FracExp::from_rational(parse_rational(label.substr(pos + 4, close - pos - 4)));
    m2.push_back(static_cast<int>(v.scaled(2)));
    pos = close + 1;
  }
  std::string tail = label.substr(pos);
  if (tail != (sector_ == Sector::NS ? "|0>" : "|R>")) throw std::invalid_argument("bad basis label: " + label);
  return intern(m2);
}

std::vector<int> FockSpace::basis_up_to(int max_level2) {
  std::vector<std::vector<int>> found;
  std::vector<int> cur;  // descending |mode|
  const int start = sector_ == Sector::NS ? 1 : 0;
  std::function<void(int, int)> rec = [&](int next, int budget) {
    std::vector<int> v(cur.rbegin(), cur.rend());
    for (auto& x : v) x = -x;
    found.push_back(v);
    for (int a = next; a <= budget; a += 2) {
      if (sector_ == Sector::R && a == 0 && budget < 0) continue;
      cur.push_back(a);
      rec(a + 2, budget - a);
      cur.pop_back();
    }
  };
  rec(start, max_level2);
  std::vector<int> ids;
  for (auto& v : found) {
    std::sort(v.begin(), v.end());
    ids.push_back(intern(v));
  }
  std::sort(ids.begin(), ids.end(), [&](int a, int b) {
    if (level2_[a] != level2_[b]) return level2_[a] < level2_[b];
    return basis_[a] < basis_[b];
  });
  return ids;
}

std::pair<Rational, int> apply_psi(FockSpace& F, int n2, int id) {
  const std::vector<int>& a = F.modes(id);
  if (F.sector() == Sector::NS ? !(n2 & 1) : (n2 & 1)) throw std::invalid_argument("psi mode off the sector lattice");
  if (n2 > 0) {
    for (size_t j = 0; j < a.size(); ++j)
      if (a[j] == -n2) {
        std::vector<int> r = a;
        r.erase(r.begin() + static_cast<long>(j));
        return {Rational((j & 1) ? -1 : 1), F.intern(r)};
      }
    return {0, 0};
  }
  size_t c = 0;
  while (c < a.size() && a[c] < n2) ++c;
  Rational sign = (c & 1) ? -1 : 1;
  if (c < a.size() && a[c] == n2) {
    if (n2 != 0) return {0, 0};
    std::vector<int> r = a;
    r.erase(r.begin() + static_cast<long>(c));
    return {sign / 2, F.intern(r)};
  }
  std::vector<int> r = a;
  r.insert(r.begin() + static_cast<long>(c), n2);
  return {sign, F.intern(r)};
}

QVec apply_psi(FockSpace& F, int n2, const QVec& v) { return apply_psi_s(F, n2, v); }

VertexEngine::VertexEngine(Sector target) : target_(target) {}

VertexEngine& VertexEngine::shared(Sector target) {
  static VertexEngine ns(Sector::NS), r(Sector::R);
  return target == Sector::NS ? ns : r;
}

bool VertexEngine::on_lattice(int b, const FracExp& t) const {
  return (t - offset(source().parity(b))).is_integer();
}

FracExp VertexEngine::out_level(int b, const FracExp& t, const FracExp& l) const {
  return l + source().level(b) - t - 1;
}

const QVec& VertexEngine::mode(int b, const FracExp& t, int w) {
  Key key{b, t, w};
  auto it = memo_.find(key);
  if (it != memo_.end()) return it->second;
  QVec r = compute(b, t, w);
  return memo_.emplace(key, std::move(r)).first->second;
}

QVec VertexEngine::mode(int b, const FracExp& t, const QVec& w) {
  QVec out;
  for (const auto& [id, c] : w.terms()) out.add_scaled(mode(b, t, id), c);
  return out;
}

QVec VertexEngine::mode(const QVec& b, const FracExp& t, const QVec& w) {
  QVec out;
  for (const auto& [id, c] : b.terms()) out.add_scaled(mode(id, t, w), c);
  return out;
}

CVec VertexEngine::mode(const QVec& b, const FracExp& t, const CVec& w) {
  CVec out;
  for (const auto& [bid, bc] : b.terms())
    for (const auto& [wid, wc] : w.terms()) out.add_scaled(mode(bid, t, wid), wc * CycScalar(bc));
  return out;
}

CVec VertexEngine::mode(const CVec& b, const FracExp& t, const CVec& w) {
  CVec out;
  for (const auto& [bid, bc] : b.terms())
    for (const auto& [wid, wc] : w.terms()) out.add_scaled(mode(bid, t, wid), wc * bc);
  return out;
}

namespace {
int psi2(const FracExp& s) {  // psi_(s) = psi_{s+1/2}, doubled index
  FracExp n = s * FracExp(2) + FracExp(1);
  if (!n.is_integer()) throw std::logic_error("generator mode off lattice");
  return static_cast<int>(n.num());
}
}  // namespace

QVec VertexEngine::compute(int b, const FracExp& t, int w) {
  FockSpace& S = source();
  FockSpace& T = space();
  if (!on_lattice(b, t)) return {};
  const FracExp lw = T.level(w);
  if (out_level(b, t, lw) < FracExp(0)) return {};
  const std::vector<int>& bm = S.modes(b);
  if (bm.empty()) return t == FracExp(-1) ? QVec(w, 1) : QVec();
  if (bm.size() == 1 && bm[0] == -1) {
    auto [c, r] = apply_psi(T, psi2(t), w);
    return sgn(c) == 0 ? QVec() : QVec(r, c);
  }
  // b = psi_(p) v with v the tail; the leading mode prepends with coefficient one
  const FracExp p = FracExp(bm[0] - 1, 2);
  const int v = S.intern(std::vector<int>(bm.begin() + 1, bm.end()));
  const int pv = S.parity(v);
  const FracExp m = offset(1);
  const FracExp n = t - m;
  const FracExp wt_v = S.level(v), wt_b = S.level(b);
  QVec out;

  const FracExp a_top = lw + wt_v - n - 1;
  for (long i = 0; FracExp(i) <= a_top; ++i) {
    Rational c = binom(p, i);
    if (i & 1) c = -c;
    if (sgn(c) == 0) continue;
    const QVec& vw = mode(v, n + FracExp(i), w);
    if (vw.empty()) continue;
    out.add_scaled(apply_psi(T, psi2(m + p - FracExp(i)), vw), c);
  }

  // -(-1)^p (-1)^{|v|}
  const Rational bsign = ((p.num() & 1) ? 1 : -1) * (pv ? -1 : 1);
  for (long i = 0; m + FracExp(i) + FracExp(1, 2) <= lw; ++i) {
    Rational c = binom(p, i);
    if (i & 1) c = -c;
    if (sgn(c) == 0) continue;
    QVec pw = apply_psi(T, psi2(m + FracExp(i)), QVec(w, 1));
    if (pw.empty()) continue;
    out.add_scaled(mode(v, n + p - FracExp(i), pw), c * bsign);
  }

  if (m != FracExp(0)) {
    for (long i = 1; wt_b - FracExp(i) >= FracExp(0); ++i) {
      Rational c = binom(m, i);
      if (sgn(c) == 0) continue;
      QVec pv_state = apply_psi(S, psi2(p + FracExp(i)), QVec(v, 1));
      if (pv_state.empty()) continue;
      out.add_scaled(mode(pv_state, t - FracExp(i), QVec(w, 1)), -c);
    }
  }
  return out;
}

nlohmann::ordered_json Field::to_json() const {
  FockSpace& F = FockSpace::of(sector);
  nlohmann::ordered_json j;
  j["sector"] = sector == Sector::NS ? "NS" : "R";
  j["parity"] = parity;
  j["window"] = {lo.to_string(), hi.to_string()};
  j["max_level"] = FracExp(max_level2, 2).to_string();
  auto& arr = j["terms"] = nlohmann::ordered_json::array();
  for (const auto& [e, maps] : terms)
    for (const auto& [src, img] : maps) {
      auto im = nlohmann::ordered_json::array();
      for (const auto& [dst, c] : img.terms()) im.push_back({{"basis", F.label(dst)}, {"coeff", c.to_string()}});
      arr.push_back({{"exp", e.to_string()}, {"src", F.label(src)}, {"image", im}});
    }
  return j;
}

std::string Field::to_csv() const {
  std::ostringstream os;
  os << "exp,row,col,coeff\n";
  for (const auto& [e, maps] : terms)
    for (const auto& [src, img] : maps)
      for (const auto& [dst, c] : img.terms()) os << e.to_string() << "," << dst << "," << src << "," << c.to_string() << "\n";
  return os.str();
}

}  // namespace orbifold
