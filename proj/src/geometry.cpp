#include "pwmel/geometry.hpp"

#include <cmath>
#include <string>

#include "pwmel/errors.hpp"

namespace pwmel {

std::string_view to_string(Mode mode) {
  switch (mode) {
    case Mode::four_zone:
      return "four-zone";
    case Mode::two_zone_upper:
      return "two-zone-upper";
    case Mode::two_zone_lower:
      return "two-zone-lower";
  }
  return "?";
}

Mode mode_from_string(std::string_view text) {
  if (text == "four-zone") return Mode::four_zone;
  if (text == "two-zone-upper") return Mode::two_zone_upper;
  if (text == "two-zone-lower") return Mode::two_zone_lower;
  throw ParseError("unknown mode '" + std::string(text) +
                   "' (expected four-zone, two-zone-upper or two-zone-lower)");
}

double u_of_h(double h) {
  if (!(h > 0.0) || !std::isfinite(h)) {
    throw DomainError("u_of_h: energy level must be positive and finite, got " + std::to_string(h));
  }
  const double u2 = 2.0 * h / (std::sqrt(1.0 + 4.0 * h) + 1.0);
  return std::sqrt(u2);
}

double h_of_u(double u) {
  const double u2 = u * u;
  return u2 * u2 + u2;
}

CornerPoints corner_points(double h) {
  const double u = u_of_h(h);
  const double w = u * u;
  CornerPoints c;
  c.A = {u, w};
  c.B = {u, -w};
  c.C = {-u, -w};
  c.D = {-u, w};
  c.a_h = u;
  c.b_h = u;
  c.c_h = -u;
  c.d_h = -u;
  return c;
}

double boundary_tolerance(double x, double y) {
  return 1e-10 * std::max(1.0, x * x + y * y);
}

std::optional<Zone> zone_of(double x, double y, Mode mode) {
  const double tol = boundary_tolerance(x, y);
  const double x2 = x * x;
  const double upper = y - x2;  // > 0 above y = x²
  const double lower = y + x2;  // < 0 below y = −x²

  switch (mode) {
    case Mode::two_zone_upper:
      if (std::abs(upper) <= tol) return std::nullopt;
      return upper > 0.0 ? Zone::four : Zone::one;
    case Mode::two_zone_lower:
      if (std::abs(lower) <= tol) return std::nullopt;
      return lower < 0.0 ? Zone::four : Zone::one;
    case Mode::four_zone:
      break;
  }
  if (std::abs(upper) <= tol || std::abs(lower) <= tol) return std::nullopt;
  if (upper > 0.0) return Zone::four;
  if (lower < 0.0) return Zone::two;
  // Between the parabolas; x cannot vanish here because that would force |y| < 0.
  return x > 0.0 ? Zone::one : Zone::three;
}

}  // namespace pwmel
