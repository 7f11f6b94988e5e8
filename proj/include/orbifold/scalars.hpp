#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace orbifold {

using Rational = mpq_class;

Rational parse_rational(const std::string& s);
std::string to_string(const Rational& q);
inline bool is_zero(const Rational& q) { return sgn(q) == 0; }

// Generalized binomial coefficient r(r-1)...(r-m+1)/m!, zero for m < 0.
Rational binom(const Rational& r, long m);

class conductor_mismatch : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Q[t]/Phi_N(t). Instances are built once per conductor and never mutated.
class CycField {
 public:
  static const CycField& get(int N);

  int conductor() const { return N_; }
  int degree() const { return phi_; }
  // Low-order coefficients of the monic cyclotomic polynomial (degree phi_ omitted).
  const std::vector<Rational>& modulus() const { return mod_; }
  // Reduced representative of t^m.
  const std::vector<Rational>& power(long m) const;

 private:
  explicit CycField(int N);
  int N_;
  int phi_;
  std::vector<Rational> mod_;
  std::vector<std::vector<Rational>> powers_;  // t^0 .. t^{N-1}
};

// Element of Q(zeta_N). Conductor 1 is the rational subfield and lifts into any conductor.
class CycScalar {
 public:
  CycScalar() : N_(1), c_(1) {}
  CycScalar(const Rational& q) : N_(1), c_{q} {}  // NOLINT: implicit embedding of Q
  CycScalar(long q) : N_(1), c_{Rational(q)} {}   // NOLINT
  CycScalar(int N, const Rational& q);
  CycScalar(int N, std::vector<Rational> coeffs);

  int conductor() const { return N_; }
  const std::vector<Rational>& coeffs() const { return c_; }

  bool is_zero() const;
  bool is_rational() const;
  Rational rational_part() const { return c_[0]; }
  // Lift to conductor N (requires current conductor 1 or N).
  CycScalar lifted(int N) const;

  CycScalar& operator+=(const CycScalar& o);
  CycScalar& operator-=(const CycScalar& o);
  CycScalar& operator*=(const CycScalar& o);
  CycScalar operator-() const;
  CycScalar inverse() const;
  CycScalar pow(long e) const;

  friend CycScalar operator+(CycScalar a, const CycScalar& b) { return a += b; }
  friend CycScalar operator-(CycScalar a, const CycScalar& b) { return a -= b; }
  friend CycScalar operator*(CycScalar a, const CycScalar& b) { return a *= b; }
  friend CycScalar operator/(const CycScalar& a, const CycScalar& b) { return a * b.inverse(); }
  friend bool operator==(const CycScalar& a, const CycScalar& b);
  friend bool operator!=(const CycScalar& a, const CycScalar& b) { return !(a == b); }

  // Approximate value under zeta_N -> exp(2 pi i / N); used for sign selection and --decimal only.
  void embed(double& re, double& im) const;
  std::string to_string() const;

 private:
  int N_;
  std::vector<Rational> c_;
};

inline bool is_zero(const CycScalar& c) { return c.is_zero(); }

CycScalar cyc_root_of_unity(int N, long m);
// Positive real square root of k inside Q(zeta_{4k}).
CycScalar cyc_sqrt_k(int k);
// k^p for p in (1/2)Z, inside Q(zeta_{4k}).
CycScalar cyc_k_power(int k, const Rational& p);

}  // namespace orbifold
