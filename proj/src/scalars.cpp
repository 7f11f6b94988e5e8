#include "orbifold/scalars.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>

namespace orbifold {

Rational parse_rational(const std::string& s) {
  Rational q;
  if (q.set_str(s, 10) != 0) throw std::invalid_argument("not a rational: " + s);
  if (q.get_den() == 0) throw std::invalid_argument("zero denominator: " + s);
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) { return q.get_str(); }

Rational binom(const Rational& r, long m) {
  if (m < 0) return 0;
  Rational out = 1;
  for (long i = 0; i < m; ++i) out *= (r - i) / Rational(i + 1);
  return out;
}

namespace {

using Poly = std::vector<Rational>;  // dense, low degree first

void trim(Poly& p) {
  while (p.size() > 1 && sgn(p.back()) == 0) p.pop_back();
}

// Exact quotient a / b where b is monic and divides a.
Poly exact_div(Poly a, const Poly& b) {
  const size_t db = b.size() - 1;
  Poly q(a.size() - db, 0);
  for (size_t i = a.size(); i-- > db;) {
    Rational c = a[i];
    q[i - db] = c;
    if (sgn(c) == 0) continue;
    for (size_t j = 0; j <= db; ++j) a[i - db + j] -= c * b[j];
  }
  return q;
}

Poly cyclotomic(int N) {
  Poly p(N + 1, 0);
  p[0] = -1;
  p[N] = 1;
  for (int d = 1; d < N; ++d)
    if (N % d == 0) p = exact_div(p, cyclotomic(d));
  trim(p);
  return p;
}

int legendre(long a, long p) {
  a %= p;
  if (a < 0) a += p;
  if (a == 0) return 0;
  long r = 1, b = a, e = (p - 1) / 2;
  while (e > 0) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return r == 1 ? 1 : -1;
}

}  // namespace

CycField::CycField(int N) : N_(N) {
  if (N < 1) throw std::invalid_argument("conductor must be positive");
  Poly phi = cyclotomic(N);
  phi_ = static_cast<int>(phi.size()) - 1;
  mod_.assign(phi.begin(), phi.end() - 1);
  powers_.reserve(N);
  Poly cur(phi_, 0);
  cur[0] = 1;
  for (int m = 0; m < N; ++m) {
    powers_.push_back(cur);
    // multiply by t and reduce
    Rational top = cur[phi_ - 1];
    for (int i = phi_ - 1; i > 0; --i) cur[i] = cur[i - 1];
    cur[0] = 0;
    if (sgn(top) != 0)
      for (int i = 0; i < phi_; ++i) cur[i] -= top * mod_[i];
  }
}

const CycField& CycField::get(int N) {
  static std::mutex mu;
  static std::map<int, std::unique_ptr<CycField>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(N);
  if (it == cache.end()) it = cache.emplace(N, std::unique_ptr<CycField>(new CycField(N))).first;
  return *it->second;
}

const std::vector<Rational>& CycField::power(long m) const {
  long r = m % N_;
  if (r < 0) r += N_;
  return powers_[r];
}

CycScalar::CycScalar(int N, const Rational& q) : N_(N), c_(CycField::get(N).degree(), 0) { c_[0] = q; }

CycScalar::CycScalar(int N, std::vector<Rational> coeffs) : N_(N), c_(std::move(coeffs)) {
  if (static_cast<int>(c_.size()) != CycField::get(N).degree())
    throw std::invalid_argument("coefficient vector length differs from totient");
}

bool CycScalar::is_zero() const {
  for (const auto& c : c_)
    if (sgn(c) != 0) return false;
  return true;
}

bool CycScalar::is_rational() const {
  for (size_t i = 1; i < c_.size(); ++i)
    if (sgn(c_[i]) != 0) return false;
  return true;
}

CycScalar CycScalar::lifted(int N) const {
  if (N_ == N) return *this;
  if (N_ != 1) throw conductor_mismatch("cannot lift conductor " + std::to_string(N_) + " to " + std::to_string(N));
  return CycScalar(N, c_[0]);
}

namespace {
int common_conductor(int a, int b) {
  if (a == b || b == 1) return a;
  if (a == 1) return b;
  throw conductor_mismatch("conductors " + std::to_string(a) + " and " + std::to_string(b));
}
}  // namespace

CycScalar& CycScalar::operator+=(const CycScalar& o) {
  int N = common_conductor(N_, o.N_);
  if (N_ != N) *this = lifted(N);
  if (o.N_ == N) {
    for (size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
  } else {
    c_[0] += o.c_[0];
  }
  return *this;
}

CycScalar& CycScalar::operator-=(const CycScalar& o) { return *this += -o; }

CycScalar CycScalar::operator-() const {
  CycScalar r = *this;
  for (auto& c : r.c_) c = -c;
  return r;
}

CycScalar& CycScalar::operator*=(const CycScalar& o) {
  int N = common_conductor(N_, o.N_);
  if (o.is_rational()) {
    const Rational q = o.c_[0];
    for (auto& c : c_) c *= q;
    return *this;
  }
  if (is_rational()) {
    const Rational q = c_[0];
    *this = o;
    for (auto& c : c_) c *= q;
    return *this;
  }
  const CycField& F = CycField::get(N);
  const int d = F.degree();
  std::vector<Rational> prod(2 * d - 1, 0);
  for (int i = 0; i < d; ++i) {
    if (sgn(c_[i]) == 0) continue;
    for (int j = 0; j < d; ++j)
      if (sgn(o.c_[j]) != 0) prod[i + j] += c_[i] * o.c_[j];
  }
  const auto& mod = F.modulus();
  for (int i = 2 * d - 2; i >= d; --i) {
    if (sgn(prod[i]) == 0) continue;
    Rational top = prod[i];
    for (int j = 0; j < d; ++j) prod[i - d + j] -= top * mod[j];
  }
  prod.resize(d);
  N_ = N;
  c_ = std::move(prod);
  return *this;
}

CycScalar CycScalar::inverse() const {
  if (is_zero()) throw std::domain_error("inverse of zero");
  if (is_rational()) {
    CycScalar r = *this;
    r.c_[0] = 1 / c_[0];
    return r;
  }
  const CycField& F = CycField::get(N_);
  const int d = F.degree();
  // Column j of M is this * t^j; solve M s = e_0 by Gauss-Jordan.
  std::vector<std::vector<Rational>> M(d, std::vector<Rational>(d + 1, 0));
  for (int j = 0; j < d; ++j) {
    CycScalar col = *this * CycScalar(N_, F.power(j));
    for (int i = 0; i < d; ++i) M[i][j] = col.c_[i];
  }
  M[0][d] = 1;
  for (int c = 0; c < d; ++c) {
    int piv = c;
    while (sgn(M[piv][c]) == 0) ++piv;
    std::swap(M[piv], M[c]);
    Rational inv = 1 / M[c][c];
    for (int j = c; j <= d; ++j) M[c][j] *= inv;
    for (int i = 0; i < d; ++i) {
      if (i == c || sgn(M[i][c]) == 0) continue;
      Rational f = M[i][c];
      for (int j = c; j <= d; ++j) M[i][j] -= f * M[c][j];
    }
  }
  std::vector<Rational> s(d);
  for (int i = 0; i < d; ++i) s[i] = M[i][d];
  return CycScalar(N_, std::move(s));
}

CycScalar CycScalar::pow(long e) const {
  if (e < 0) return inverse().pow(-e);
  CycScalar result = CycScalar(N_, Rational(1));
  CycScalar base = *this;
  while (e > 0) {
    if (e & 1) result *= base;
    base *= base;
    e >>= 1;
  }
  return result;
}

bool operator==(const CycScalar& a, const CycScalar& b) {
  if (a.N_ == b.N_) return a.c_ == b.c_;
  if (a.N_ == 1 && b.is_rational()) return a.c_[0] == b.c_[0];
  if (b.N_ == 1 && a.is_rational()) return a.c_[0] == b.c_[0];
  return false;
}

void CycScalar::embed(double& re, double& im) const {
  re = im = 0;
  for (size_t i = 0; i < c_.size(); ++i) {
    double ang = 2 * std::numbers::pi * static_cast<double>(i) / N_;
    double v = c_[i].get_d();
    re += v * std::cos(ang);
    im += v * std::sin(ang);
  }
}

std::string CycScalar::to_string() const {
  if (is_rational()) return c_[0].get_str();
  std::string out;
  for (size_t i = 0; i < c_.size(); ++i) {
    if (sgn(c_[i]) == 0) continue;
    if (!out.empty()) out += " + ";
    out += "(" + c_[i].get_str() + ")";
    if (i > 0) out += "*z" + std::to_string(N_) + "^" + std::to_string(i);
  }
  return out;
}

CycScalar cyc_root_of_unity(int N, long m) { return CycScalar(N, CycField::get(N).power(m)); }

CycScalar cyc_sqrt_k(int k) {
  if (k < 1) throw std::invalid_argument("k must be positive");
  const int N = 4 * k;
  CycScalar s(N, Rational(1));
  int rest = k;
  for (int p = 2; p <= rest; ++p) {
    int e = 0;
    while (rest % p == 0) {
      rest /= p;
      ++e;
    }
    if (e == 0) continue;
    for (int i = 0; i < e / 2; ++i) s *= CycScalar(N, Rational(p));
    if (e % 2 == 0) continue;
    CycScalar r;
    if (p == 2) {
      r = cyc_root_of_unity(N, N / 8) + cyc_root_of_unity(N, -N / 8);
    } else {
      r = CycScalar(N, Rational(0));
      for (int a = 1; a < p; ++a) r += CycScalar(N, Rational(legendre(a, p))) * cyc_root_of_unity(N, (N / p) * a);
      if (p % 4 == 3) r *= cyc_root_of_unity(N, N / 4);
    }
    s *= r;
  }
  double re, im;
  s.embed(re, im);
  if (re < 0) s = -s;
  if (s * s != CycScalar(N, Rational(k))) throw std::logic_error("sqrt(k) construction failed");
  return s;
}

CycScalar cyc_k_power(int k, const Rational& p) {
  const int N = 4 * k;
  Rational twice = 2 * p;
  if (twice.get_den() != 1) throw std::invalid_argument("exponent not in (1/2)Z");
  long t = twice.get_num().get_si();
  long whole = (t >= 0 ? t : t - 1) / 2;  // floor(t/2)
  CycScalar out(N, Rational(1));
  Rational kk(k);
  Rational w = 1;
  for (long i = 0; i < std::labs(whole); ++i) w *= kk;
  out = CycScalar(N, whole >= 0 ? w : 1 / w);
  if (t - 2 * whole == 1) out *= cyc_sqrt_k(k);
  return out;
}

}  // namespace orbifold
