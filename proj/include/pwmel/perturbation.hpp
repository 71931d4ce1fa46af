#pragma once

#include <array>
#include <vector>

#include "pwmel/geometry.hpp"

namespace pwmel {

/// Coefficients a^k_{i,j} (of f_k) and b^k_{i,j} (of g_k) of a degree-n
/// piecewise polynomial perturbation, for 0 <= i + j <= n.
class PerturbationSpec {
 public:
  PerturbationSpec() : PerturbationSpec(0, Mode::four_zone) {}
  PerturbationSpec(int n, Mode mode);

  int degree() const { return n_; }
  Mode mode() const { return mode_; }

  /// Zones carrying a perturbation in this mode: {1,2,3,4} or {1,4}.
  const std::vector<Zone>& zones() const;
  bool has_zone(Zone zone) const;

  double a(Zone zone, int i, int j) const { return table(zone, false)[slot(i, j)]; }
  double b(Zone zone, int i, int j) const { return table(zone, true)[slot(i, j)]; }
  void set_a(Zone zone, int i, int j, double value);
  void set_b(Zone zone, int i, int j, double value);

  /// f_k(x, y) and g_k(x, y).
  double f(Zone zone, double x, double y) const { return evaluate(table(zone, false), x, y); }
  double g(Zone zone, double x, double y) const { return evaluate(table(zone, true), x, y); }

  bool is_zero() const;

  PerturbationSpec& operator+=(const PerturbationSpec& other);
  PerturbationSpec& operator*=(double s);
  friend PerturbationSpec operator+(PerturbationSpec a, const PerturbationSpec& b) { return a += b; }
  friend PerturbationSpec operator*(double s, PerturbationSpec a) { return a *= s; }
  friend bool operator==(const PerturbationSpec& a, const PerturbationSpec& b);

  /// Number of (i, j) pairs with i + j <= n.
  static int triangle_size(int n) { return (n + 1) * (n + 2) / 2; }
  /// Linear position of (i, j) inside the triangle.
  int slot(int i, int j) const;

 private:
  const std::vector<double>& table(Zone zone, bool g) const;
  std::vector<double>& table(Zone zone, bool g);
  double evaluate(const std::vector<double>& c, double x, double y) const;

  int n_;
  Mode mode_;
  std::array<std::vector<double>, 4> a_;
  std::array<std::vector<double>, 4> b_;
};

/// Spec of the mirrored system under (x, y) → (x, −y) with time reversal:
/// â_{i,j} = −(−1)^j a_{i,j}, b̂_{i,j} = (−1)^j b_{i,j}. Maps two-zone-lower onto
/// two-zone-upper (and back); in four-zone mode zones 2 and 4 swap.
PerturbationSpec reflect_vertically(const PerturbationSpec& spec);

}  // namespace pwmel
