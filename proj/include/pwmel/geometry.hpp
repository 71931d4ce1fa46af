#pragma once

#include <optional>
#include <string_view>

namespace pwmel {

/// Which switching curves are active.
///   four_zone:       y = x² and y = −x²
///   two_zone_upper:  y = x² only
///   two_zone_lower:  y = −x² only
enum class Mode { four_zone, two_zone_upper, two_zone_lower };

std::string_view to_string(Mode mode);
Mode mode_from_string(std::string_view text);

inline bool is_two_zone(Mode mode) { return mode != Mode::four_zone; }

struct Point {
  double x = 0.0;
  double y = 0.0;
};

/// Zone index as used by the perturbation tables. Four-zone mode uses all of
/// 1..4; the two-zone modes use 1 (the zone holding the positive x-axis) and 4.
enum class Zone : int { one = 1, two = 2, three = 3, four = 4 };

inline int index(Zone z) { return static_cast<int>(z); }

/// u = sqrt((sqrt(1+4h) − 1)/2), evaluated as u² = 2h/(sqrt(1+4h) + 1).
double u_of_h(double h);
/// Inverse of u_of_h: h = u⁴ + u².
double h_of_u(double u);

/// Intersections of the level circle x² + y² = h with y = ±x², labelled in
/// flow order: A = (u, u²), B = (u, −u²), C = (−u, −u²), D = (−u, u²).
struct CornerPoints {
  Point A, B, C, D;
  double a_h = 0.0, b_h = 0.0, c_h = 0.0, d_h = 0.0;
};

CornerPoints corner_points(double h);

/// Scale-aware distance below which a point counts as lying on a switching curve.
double boundary_tolerance(double x, double y);

/// Zone containing (x, y), or nullopt when the point sits on an active switching
/// curve within boundary_tolerance (the caller decides how to cross).
std::optional<Zone> zone_of(double x, double y, Mode mode);

/// Slope of the parabola y = ±x² (sign = +1 upper, −1 lower) at abscissa x.
inline double parabola_slope(int sign, double x) { return 2.0 * sign * x; }

}  // namespace pwmel
