#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

namespace pwmel {

using Rational = mpq_class;

/// Exact conversion of a finite double (every double is a dyadic rational).
Rational to_rational(double value);
double to_double(const Rational& q);
long double to_long_double(const Rational& q);

/// Dense univariate polynomial with exact rational coefficients; coeff(k)
/// multiplies t^k. The zero polynomial has degree −1.
class RationalPoly {
 public:
  RationalPoly() = default;
  explicit RationalPoly(std::vector<Rational> coefficients);

  static RationalPoly monomial(const Rational& c, int power);

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  const std::vector<Rational>& coefficients() const { return coeffs_; }
  Rational coeff(int k) const;

  void add_term(const Rational& c, int power);

  RationalPoly& operator+=(const RationalPoly& other);
  RationalPoly& operator-=(const RationalPoly& other);
  RationalPoly& operator*=(const Rational& s);
  friend RationalPoly operator+(RationalPoly a, const RationalPoly& b) { return a += b; }
  friend RationalPoly operator-(RationalPoly a, const RationalPoly& b) { return a -= b; }
  friend RationalPoly operator*(RationalPoly a, const Rational& s) { return a *= s; }
  friend RationalPoly operator*(const RationalPoly& a, const RationalPoly& b);
  RationalPoly operator-() const;
  bool operator==(const RationalPoly& other) const { return coeffs_ == other.coeffs_; }

  /// p(q(t)).
  RationalPoly compose(const RationalPoly& inner) const;

  long double evaluate(long double t) const;
  /// Σ |c_k| |t|^k, the rounding-error scale of evaluate().
  long double magnitude(long double t) const;

  std::string to_string(const std::string& var = "t") const;

 private:
  void trim();
  std::vector<Rational> coeffs_;
};

/// Exact number q₀ + q₁·π.
struct PiRational {
  Rational rational = 0;
  Rational pi_multiple = 0;

  bool is_zero() const { return rational == 0 && pi_multiple == 0; }
  long double value() const;
  std::string to_string() const;

  PiRational& operator+=(const PiRational& o) {
    rational += o.rational;
    pi_multiple += o.pi_multiple;
    return *this;
  }
  friend PiRational operator*(const Rational& s, const PiRational& p) {
    return {s * p.rational, s * p.pi_multiple};
  }
  friend bool operator==(const PiRational& a, const PiRational& b) {
    return a.rational == b.rational && a.pi_multiple == b.pi_multiple;
  }
};

/// Polynomial over Q + Qπ; coefficient k multiplies t^k.
class PiPoly {
 public:
  PiPoly() = default;
  /// rational_part + π · pi_part.
  PiPoly(const RationalPoly& rational_part, const RationalPoly& pi_part);

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  const std::vector<PiRational>& coefficients() const { return coeffs_; }
  PiRational coeff(int k) const;

  long double evaluate(long double t) const;
  long double magnitude(long double t) const;
  /// Coefficients rounded to long double, for fast repeated evaluation.
  std::vector<long double> numeric() const;

 private:
  std::vector<PiRational> coeffs_;
};

/// Horner evaluation of numeric coefficients (c[k] multiplies t^k).
inline long double horner(const std::vector<long double>& c, long double t) {
  long double acc = 0.0L;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * t + *it;
  return acc;
}

}  // namespace pwmel
