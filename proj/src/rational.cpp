#include "pwmel/rational.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "pwmel/errors.hpp"

namespace pwmel {

Rational to_rational(double value) {
  if (!std::isfinite(value)) throw DomainError("to_rational: non-finite coefficient");
  Rational q(value);  // mpq_set_d is exact
  q.canonicalize();
  return q;
}

double to_double(const Rational& q) { return q.get_d(); }

long double to_long_double(const Rational& q) {
  // Split into a double head and a double tail for ~106 bits before rounding.
  const double head = q.get_d();
  const Rational rest = q - Rational(head);
  return static_cast<long double>(head) + static_cast<long double>(rest.get_d());
}

RationalPoly::RationalPoly(std::vector<Rational> coefficients) : coeffs_(std::move(coefficients)) {
  trim();
}

RationalPoly RationalPoly::monomial(const Rational& c, int power) {
  RationalPoly p;
  p.add_term(c, power);
  return p;
}

Rational RationalPoly::coeff(int k) const {
  if (k < 0 || k > degree()) return Rational(0);
  return coeffs_[static_cast<std::size_t>(k)];
}

void RationalPoly::add_term(const Rational& c, int power) {
  if (power < 0) throw DomainError("RationalPoly: negative power");
  if (c == 0) return;
  if (static_cast<int>(coeffs_.size()) <= power) coeffs_.resize(static_cast<std::size_t>(power) + 1);
  coeffs_[static_cast<std::size_t>(power)] += c;
  trim();
}

RationalPoly& RationalPoly::operator+=(const RationalPoly& other) {
  if (coeffs_.size() < other.coeffs_.size()) coeffs_.resize(other.coeffs_.size());
  for (std::size_t k = 0; k < other.coeffs_.size(); ++k) coeffs_[k] += other.coeffs_[k];
  trim();
  return *this;
}

RationalPoly& RationalPoly::operator-=(const RationalPoly& other) {
  if (coeffs_.size() < other.coeffs_.size()) coeffs_.resize(other.coeffs_.size());
  for (std::size_t k = 0; k < other.coeffs_.size(); ++k) coeffs_[k] -= other.coeffs_[k];
  trim();
  return *this;
}

RationalPoly& RationalPoly::operator*=(const Rational& s) {
  for (auto& c : coeffs_) c *= s;
  trim();
  return *this;
}

RationalPoly operator*(const RationalPoly& a, const RationalPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Rational> out(a.coeffs_.size() + b.coeffs_.size() - 1);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    if (a.coeffs_[i] == 0) continue;
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) out[i + j] += a.coeffs_[i] * b.coeffs_[j];
  }
  return RationalPoly(std::move(out));
}

RationalPoly RationalPoly::operator-() const {
  RationalPoly r = *this;
  for (auto& c : r.coeffs_) c = -c;
  return r;
}

RationalPoly RationalPoly::compose(const RationalPoly& inner) const {
  RationalPoly result;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    result = result * inner;
    result.add_term(*it, 0);
  }
  return result;
}

long double RationalPoly::evaluate(long double t) const {
  long double acc = 0.0L;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * t + to_long_double(*it);
  return acc;
}

long double RationalPoly::magnitude(long double t) const {
  long double acc = 0.0L;
  const long double at = std::fabs(t);
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    acc = acc * at + std::fabs(to_long_double(*it));
  }
  return acc;
}

std::string RationalPoly::to_string(const std::string& var) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int k = degree(); k >= 0; --k) {
    const Rational& c = coeffs_[static_cast<std::size_t>(k)];
    if (c == 0) continue;
    if (!first) os << (c < 0 ? " - " : " + ");
    else if (c < 0) os << "-";
    first = false;
    os << Rational(abs(c)).get_str();
    if (k >= 1) os << "*" << var;
    if (k >= 2) os << "^" << k;
  }
  return os.str();
}

void RationalPoly::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

long double PiRational::value() const {
  return to_long_double(rational) + std::numbers::pi_v<long double> * to_long_double(pi_multiple);
}

std::string PiRational::to_string() const {
  if (pi_multiple == 0) return rational.get_str();
  if (rational == 0) return pi_multiple.get_str() + "*pi";
  return rational.get_str() + (pi_multiple < 0 ? " - " : " + ") + Rational(abs(pi_multiple)).get_str() + "*pi";
}

PiPoly::PiPoly(const RationalPoly& rational_part, const RationalPoly& pi_part) {
  const int deg = std::max(rational_part.degree(), pi_part.degree());
  coeffs_.resize(static_cast<std::size_t>(deg + 1));
  for (int k = 0; k <= deg; ++k) {
    coeffs_[static_cast<std::size_t>(k)] = {rational_part.coeff(k), pi_part.coeff(k)};
  }
  while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

PiRational PiPoly::coeff(int k) const {
  if (k < 0 || k > degree()) return {};
  return coeffs_[static_cast<std::size_t>(k)];
}

long double PiPoly::evaluate(long double t) const { return horner(numeric(), t); }

long double PiPoly::magnitude(long double t) const {
  long double acc = 0.0L;
  const long double at = std::fabs(t);
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * at + std::fabs(it->value());
  return acc;
}

std::vector<long double> PiPoly::numeric() const {
  std::vector<long double> out;
  out.reserve(coeffs_.size());
  for (const auto& c : coeffs_) out.push_back(c.value());
  return out;
}

}  // namespace pwmel
