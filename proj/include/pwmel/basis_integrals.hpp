#pragma once

#include <string_view>

#include "pwmel/quadrature.hpp"
#include "pwmel/rational.hpp"

namespace pwmel {

/// Moment families x^i y^j dx over the arcs of the level circle:
///   I → AB, J → BC, I_tilde → CD, J_tilde → DA        (four-zone)
///   U → A…D below y = x², V → DA above y = x²        (two-zone-upper)
enum class MomentFamily { I, J, I_tilde, J_tilde, U, V };

std::string_view to_string(MomentFamily family);
ArcLabel arc_of(MomentFamily family);

struct MomentId {
  MomentFamily family = MomentFamily::I;
  int i = 0;
  int j = 0;
};

/// Irreducible generators. The four-zone set is {I01, I11, J00, J01} and the
/// two-zone set {U00, U01, V00, V01}.
enum class BaseIntegral { none, I01, I11, J00, J01, U00, U01, V00, V01 };

std::string_view to_string(BaseIntegral base);

struct BaseValues {
  double I01 = 0, I11 = 0, J00 = 0, J01 = 0;
  double U00 = 0, U01 = 0, V00 = 0, V01 = 0;

  double operator[](BaseIntegral base) const;
};

/// Closed forms of the base integrals at level h (all eight, both modes).
BaseValues base_integrals(double h);

/// ∫₀^u sqrt(h − x²) dx with u = u_of_h(h), via its closed antiderivative.
double half_chord_area(double h);

/// A moment written as base_coeff · h^base_power · base(h) + boundary(u), where
/// boundary is a polynomial in u = sqrt(w), w = (sqrt(1+4h) − 1)/2; the u^k
/// coefficient therefore multiplies w^(k/2).
struct ReducedMoment {
  BaseIntegral base = BaseIntegral::none;
  Rational base_coeff = 0;
  int base_power = 0;
  RationalPoly boundary;

  bool is_zero() const { return base_coeff == 0 && boundary.is_zero(); }

  ReducedMoment& operator*=(const Rational& s);
  /// Multiply by h = u⁴ + u².
  ReducedMoment times_h() const;
};

/// x^i y^j dx moment reduced to its base integral by the level-curve
/// recurrences, memoized by (family, i, j). Thread-safe.
const ReducedMoment& reduce_moment(const MomentId& id);

/// ∫ x^i y^j dy over the family's arc, reduced the same way. For i ≥ 1 this is
/// (end-point term − i·K_{i−1, j+1}) / (j + 1).
ReducedMoment reduce_dy_moment(const MomentId& id);

long double evaluate(const ReducedMoment& rm, double h);
long double evaluate(const ReducedMoment& rm, double h, const BaseValues& bases);

/// Numerical value of the moment via its reduction.
double moment(const MomentId& id, double h);

/// [x^a y^b] from arc start to arc end, with corners (sx·u, sy·u²), as a
/// polynomial in u (a single monomial of degree a + 2b).
RationalPoly endpoint_difference(const CornerSign& start, const CornerSign& end, int a, int b);

/// Number of memoized reductions (for tests).
std::size_t reduction_cache_size();

}  // namespace pwmel
