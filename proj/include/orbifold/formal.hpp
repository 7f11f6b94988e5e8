#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "orbifold/report.hpp"
#include "orbifold/scalars.hpp"

namespace orbifold {

// Reduced fraction with machine-word parts. Exponents and mode indices live here.
class FracExp {
 public:
  constexpr FracExp() = default;
  constexpr FracExp(std::int64_t n) : num_(n), den_(1) {}  // NOLINT
  FracExp(std::int64_t n, std::int64_t d);
  static FracExp from_rational(const Rational& q);

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }
  bool is_integer() const { return den_ == 1; }
  // denominator divides D, i.e. value lies on (1/D)Z
  bool on_lattice(std::int64_t D) const { return D % den_ == 0; }
  std::int64_t floor() const;
  std::int64_t ceil() const;
  // value * D, requires on_lattice(D)
  std::int64_t scaled(std::int64_t D) const;
  Rational to_rational() const { return Rational(mpz_class(static_cast<long>(num_)), mpz_class(static_cast<long>(den_))); }
  std::string to_string() const;

  FracExp operator-() const { return FracExp(-num_, den_); }
  friend FracExp operator+(const FracExp& a, const FracExp& b);
  friend FracExp operator-(const FracExp& a, const FracExp& b) { return a + (-b); }
  friend FracExp operator*(const FracExp& a, const FracExp& b);
  friend FracExp operator/(const FracExp& a, const FracExp& b);
  FracExp& operator+=(const FracExp& o) { return *this = *this + o; }
  FracExp& operator-=(const FracExp& o) { return *this = *this - o; }
  friend bool operator==(const FracExp& a, const FracExp& b) = default;
  friend std::strong_ordering operator<=>(const FracExp& a, const FracExp& b);

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

Rational binom(const FracExp& r, long m);

// Closed interval of exponents. An infinite side means every coefficient there is known.
// zero_below marks power-series-like data: coefficients below lo are known to vanish.
struct Interval {
  FracExp lo, hi;
  bool lo_inf = false, hi_inf = false;
  bool zero_below = false;

  static Interval exact() { return Interval{0, 0, true, true, false}; }
  static Interval closed(FracExp lo, FracExp hi) { return Interval{lo, hi, false, false, false}; }
  static Interval from(FracExp lo, FracExp hi) { return Interval{lo, hi, false, false, true}; }
  bool contains(const FracExp& e) const;
  bool knows(const FracExp& e) const;
  bool is_exact() const { return lo_inf && hi_inf; }
};

struct Window {
  std::int64_t lattice = 1;  // exponents lie on (1/lattice)Z
  std::vector<Interval> vars;

  static Window box(int nvars, std::int64_t lattice, FracExp lo, FracExp hi);
  int nvars() const { return static_cast<int>(vars.size()); }
  bool contains(const std::vector<FracExp>& e) const;
  bool knows(const std::vector<FracExp>& e) const;
  nlohmann::ordered_json to_json(const std::vector<std::string>& names = {}) const;
};

using Exps = std::vector<FracExp>;

// Truncated multivariate series. Coefficients outside window are unknown.
class ScalarSeries {
 public:
  ScalarSeries() = default;
  explicit ScalarSeries(Window w) : window_(std::move(w)) {}

  const Window& window() const { return window_; }
  Window& window() { return window_; }
  const std::map<Exps, CycScalar>& terms() const { return terms_; }
  int nvars() const { return window_.nvars(); }

  void add(const Exps& e, const CycScalar& c);
  // nullopt when e lies outside the window
  std::optional<CycScalar> coeff(const Exps& e) const;
  std::pair<FracExp, FracExp> support(int var) const;

  ScalarSeries& operator+=(const ScalarSeries& o);
  ScalarSeries& operator-=(const ScalarSeries& o);
  ScalarSeries operator*(const CycScalar& c) const;
  nlohmann::ordered_json to_json() const;

 private:
  Window window_;
  std::map<Exps, CycScalar> terms_;
};

ScalarSeries operator+(ScalarSeries a, const ScalarSeries& b);
ScalarSeries operator-(ScalarSeries a, const ScalarSeries& b);
// Window of the product is derived per variable; throws std::domain_error if undeterminable.
ScalarSeries operator*(const ScalarSeries& a, const ScalarSeries& b);

ScalarSeries monomial(const Window& w, const Exps& e, const CycScalar& c = CycScalar(1));
ScalarSeries mul_monomial(const ScalarSeries& s, const Exps& e);

// (x_first + sign*x_second)^r in nonnegative integral powers of x_second.
ScalarSeries binom_expand(int first, int second, int sign, const FracExp& r, const Window& w);

// delta(c * prod x_i^{e_i}) = sum_n c^n prod x_i^{n e_i}, restricted to the window.
ScalarSeries delta_series(const Exps& e, const CycScalar& c, const Window& w);

// sum_n c^n (x_a + sign x_b)^{n*step + r} x_den^{-(n*step + r) + shift}; covers every term in window.
ScalarSeries delta_binomial(int a, int b, int sign, int den, const FracExp& step, const FracExp& r,
                            const FracExp& shift, const CycScalar& c, const Window& w);

class window_error : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Coefficient of x_var^{-1}; the variable is dropped from the result.
ScalarSeries residue(const ScalarSeries& s, int var);
ScalarSeries derivative(const ScalarSeries& s, int var);

// O^{L(0)}: x^n -> O^n x^n. Integral exponents only unless O = zeta_N^m given as a root.
ScalarSeries scale_exponents(const ScalarSeries& s, int var, const CycScalar& O);
ScalarSeries scale_exponents_root(const ScalarSeries& s, int var, int N, long m);
// z^{factor L(0)}: x^n -> z^{factor n} x^n with z the variable target.
ScalarSeries scale_exponents_monomial(const ScalarSeries& s, int var, int target, const FracExp& factor);

// Returns (dh) * f(h) with x_var replaced by the series h in the variable of h.
// f must have finite support in var; h must start with a single monomial of positive order in zvar.
ScalarSeries change_of_variable(const ScalarSeries& f, int var, const ScalarSeries& h, const ScalarSeries& dh,
                                int zvar);

enum class DeltaIdentity { DF1, DF2, DF3, ThreeTerm };
std::string to_string(DeltaIdentity id);

// Variables are ordered (x0, x1, x2).
CheckReport verify_delta_identity(DeltaIdentity id, int k, const FracExp& r, const FracExp& radius);

// Coefficientwise comparison of two series on the intersection of their windows.
void compare_series(const ScalarSeries& lhs, const ScalarSeries& rhs, CheckReport& report,
                    const std::vector<std::string>& names);

}  // namespace orbifold

template <>
struct std::hash<orbifold::FracExp> {
  size_t operator()(const orbifold::FracExp& e) const noexcept {
    return std::hash<std::int64_t>()(e.num()) * 1000003u ^ std::hash<std::int64_t>()(e.den());
  }
};
