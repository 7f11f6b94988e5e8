#pragma once

#include <map>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include "orbifold/formal.hpp"
#include "orbifold/scalars.hpp"

namespace orbifold {

// Sparse linear combination over an ordered key type. Zero coefficients are never stored.
template <class K, class S>
class Lin {
 public:
  using Map = std::map<K, S>;
  Lin() = default;
  Lin(const K& k, const S& s) { add(k, s); }

  void add(const K& k, const S& s) {
    if (is_zero(s)) return;
    auto it = t_.find(k);
    if (it == t_.end()) {
      t_.emplace(k, s);
      return;
    }
    it->second += s;
    if (is_zero(it->second)) t_.erase(it);
  }
  template <class S2>
  void add_scaled(const Lin<K, S2>& o, const S& c) {
    if (is_zero(c)) return;
    for (const auto& [k, s] : o.terms()) add(k, S(s) * c);
  }
  Lin& operator+=(const Lin& o) {
    for (const auto& [k, s] : o.t_) add(k, s);
    return *this;
  }
  Lin& operator-=(const Lin& o) {
    for (const auto& [k, s] : o.t_) add(k, -s);
    return *this;
  }
  Lin operator*(const S& c) const {
    Lin r;
    r.add_scaled(*this, c);
    return r;
  }
  S coeff(const K& k) const {
    auto it = t_.find(k);
    return it == t_.end() ? S(0) : it->second;
  }
  bool empty() const { return t_.empty(); }
  size_t size() const { return t_.size(); }
  const Map& terms() const { return t_; }
  friend bool operator==(const Lin& a, const Lin& b) { return a.t_ == b.t_; }

 private:
  Map t_;
};

using QVec = Lin<int, Rational>;
using CVec = Lin<int, CycScalar>;

template <class K>
Lin<K, CycScalar> to_cyc(const Lin<K, Rational>& v) {
  Lin<K, CycScalar> r;
  for (const auto& [k, s] : v.terms()) r.add(k, CycScalar(s));
  return r;
}

enum class Sector { NS, R };

// Basis of a fermionic Fock space. Modes are stored doubled (2n), ordered increasingly,
// i.e. the most negative creation mode first: psi(-3/2)psi(-1/2)|0> is {-3,-1}.
// NS modes are odd negative integers; R modes are even, <= 0.
// Intern tables are process-wide and append-only; not safe for concurrent writers.
class FockSpace {
 public:
  static FockSpace& ns();
  static FockSpace& ramond();
  static FockSpace& of(Sector s) { return s == Sector::NS ? ns() : ramond(); }

  Sector sector() const { return sector_; }
  int intern(const std::vector<int>& m2);
  const std::vector<int>& modes(int id) const { return basis_[id]; }
  int level2(int id) const { return level2_[id]; }
  FracExp level(int id) const { return FracExp(level2_[id], 2); }
  int parity(int id) const { return static_cast<int>(basis_[id].size() % 2); }
  int vacuum() const { return 0; }
  std::string label(int id) const;
  // All basis vectors with twice-level <= max_level2, in a fixed (level, lexicographic) order.
  std::vector<int> basis_up_to(int max_level2);
  int parse(const std::string& label);

 private:
  explicit FockSpace(Sector s);
  Sector sector_;
  std::vector<std::vector<int>> basis_;
  std::vector<int> level2_;
  std::map<std::vector<int>, int> index_;
};

// psi_n on a basis vector, n given doubled. Returns coefficient 0 when annihilated.
std::pair<Rational, int> apply_psi(FockSpace& F, int n2, int id);
QVec apply_psi(FockSpace& F, int n2, const QVec& v);

template <class S>
Lin<int, S> apply_psi_s(FockSpace& F, int n2, const Lin<int, S>& v) {
  Lin<int, S> out;
  for (const auto& [id, c] : v.terms()) {
    auto [q, r] = apply_psi(F, n2, id);
    if (sgn(q) != 0) out.add(r, c * S(q));
  }
  return out;
}

// Modes of vertex operators of NS states acting on either sector, produced by the
// (twisted) iterate recursion. Mode index t means the coefficient of x^{-t-1}.
// Target NS: Y(v,x) on V. Target R: Y_sigma(v,x) on M_sigma, odd v has t in 1/2 + Z.
// Not thread-safe (memo table); use one engine per thread.
class VertexEngine {
 public:
  explicit VertexEngine(Sector target);
  static VertexEngine& shared(Sector target);

  Sector target() const { return target_; }
  FockSpace& source() const { return FockSpace::ns(); }
  FockSpace& space() const { return FockSpace::of(target_); }

  // lattice offset of t for a vector of parity p
  FracExp offset(int parity) const { return parity && target_ == Sector::R ? FracExp(1, 2) : FracExp(0); }
  bool on_lattice(int b, const FracExp& t) const;
  // level of the output of b_(t) acting on a level-l vector (may be negative)
  FracExp out_level(int b, const FracExp& t, const FracExp& l) const;

  const QVec& mode(int b, const FracExp& t, int w);
  QVec mode(int b, const FracExp& t, const QVec& w);
  QVec mode(const QVec& b, const FracExp& t, const QVec& w);
  CVec mode(const QVec& b, const FracExp& t, const CVec& w);
  CVec mode(const CVec& b, const FracExp& t, const CVec& w);

  size_t memo_size() const { return memo_.size(); }

 private:
  QVec compute(int b, const FracExp& t, int w);
  struct Key {
    int b;
    FracExp t;
    int w;
    bool operator==(const Key&) const = default;
  };
  struct KeyHash {
    size_t operator()(const Key& k) const noexcept {
      return (static_cast<size_t>(k.b) * 1000003u) ^ (std::hash<FracExp>()(k.t) * 31u) ^ static_cast<size_t>(k.w);
    }
  };
  Sector target_;
  std::unordered_map<Key, QVec, KeyHash> memo_;
};

// Materialized operator-valued distribution: exponent -> (source basis -> image).
struct Field {
  Sector sector = Sector::NS;
  int parity = 0;
  FracExp lo, hi;   // exponent window
  int max_level2 = 0;  // sources of twice-level <= this
  std::map<FracExp, std::map<int, CVec>> terms;

  nlohmann::ordered_json to_json() const;
  std::string to_csv() const;
};

// One comparison per (key, basis vector) present on either side.
template <class Key, class Fmt>
void compare_state_maps(const std::map<Key, CVec>& lhs, const std::map<Key, CVec>& rhs, const FockSpace& F, Fmt fmt,
                        CheckReport& rep) {
  std::map<Key, int> keys;
  for (const auto& kv : lhs) keys[kv.first];
  for (const auto& kv : rhs) keys[kv.first];
  static const CVec none;
  for (const auto& kv : keys) {
    auto a = lhs.find(kv.first), b = rhs.find(kv.first);
    const CVec& A = a == lhs.end() ? none : a->second;
    const CVec& B = b == rhs.end() ? none : b->second;
    std::map<int, int> ids;
    for (const auto& t : A.terms()) ids[t.first];
    for (const auto& t : B.terms()) ids[t.first];
    for (const auto& id : ids) {
      CycScalar x = A.coeff(id.first), y = B.coeff(id.first);
      rep.record(fmt(kv.first) + " " + F.label(id.first), x.to_string(), y.to_string(), x == y);
    }
  }
}

}  // namespace orbifold
