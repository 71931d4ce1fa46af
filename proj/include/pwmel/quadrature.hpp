#pragma once

#include <functional>
#include <string_view>

namespace pwmel {

struct QuadratureOptions {
  double tol = 1e-11;          // mixed tolerance: error <= tol * max(1, |I|)
  int max_panels = 1 << 16;
};

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;
  int panels = 0;
};

/// Globally adaptive Gauss–Kronrod (10/21) quadrature of f over [a, b].
/// Reversed limits give the negated integral. Throws AccuracyFailure carrying
/// the best estimate when the panel limit is hit.
QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                                    const QuadratureOptions& opts = {});

inline double integrate_1d(const std::function<double(double)>& f, double a, double b,
                           double tol = 1e-11) {
  QuadratureOptions opts;
  opts.tol = tol;
  return integrate_adaptive(f, a, b, opts).value;
}

// ---------------------------------------------------------------------------
// Arcs of the level circle x² + y² = h, parametrized by angle and oriented
// along the clockwise unperturbed flow (θ decreasing).

enum class ArcLabel {
  AB,        // right arc, zone 1 (four-zone)
  BC,        // bottom arc, zone 2 (four-zone); zone 4 of two-zone-lower
  CD,        // left arc, zone 3 (four-zone)
  DA,        // top arc, zone 4 (four-zone and two-zone-upper)
  AD_lower,  // long arc A→B→C→D below y = x², zone 1 of two-zone-upper
  CB_upper,  // long arc C→D→A→B above y = −x², zone 1 of two-zone-lower
};

std::string_view to_string(ArcLabel label);

/// Corner of the level circle, written as (sx·u, sy·u²).
struct CornerSign {
  int sx = 1;
  int sy = 1;
};

struct Arc {
  ArcLabel label = ArcLabel::AB;
  double h = 1.0;
  double theta0 = 0.0;  // start angle (flow order)
  double theta1 = 0.0;  // end angle; theta1 < theta0 for a flow-oriented arc
  CornerSign start{};
  CornerSign end{};

  /// Same point set with the opposite orientation.
  Arc reversed() const;
};

Arc make_arc(ArcLabel label, double h);

enum class Form { dx, dy };

/// Oriented line integral of x^i y^j dx (or dy) along the arc, by quadrature in θ.
double arc_moment(const Arc& arc, int i, int j, Form form, const QuadratureOptions& opts = {});

/// ∫ (g dx − f dy) along the arc, by quadrature in θ. The callback receives
/// (x, y) and returns {f(x, y), g(x, y)}.
struct FieldValue {
  double f = 0.0;
  double g = 0.0;
};
double arc_work(const Arc& arc, const std::function<FieldValue(double, double)>& field,
                const QuadratureOptions& opts = {});

}  // namespace pwmel
