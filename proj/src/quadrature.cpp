#include "pwmel/quadrature.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <queue>
#include <string>
#include <vector>

#include "pwmel/errors.hpp"
#include "pwmel/geometry.hpp"

namespace pwmel {
namespace {

// QUADPACK qk21 abscissae and weights.
constexpr std::array<double, 11> kNodes = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.0};
constexpr std::array<double, 11> kKronrodWeights = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077682364264625, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};
// Gauss weights for the odd-indexed Kronrod nodes (1, 3, 5, 7, 9).
constexpr std::array<double, 5> kGaussWeights = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

struct Panel {
  double a, b, value, error;
  bool operator<(const Panel& other) const { return error < other.error; }
};

Panel gauss_kronrod_21(const std::function<double(double)>& f, double a, double b) {
  const double centre = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(centre);
  double kronrod = fc * kKronrodWeights[10];
  double gauss = 0.0;
  for (int k = 0; k < 10; ++k) {
    const double dx = half * kNodes[k];
    const double pair = f(centre - dx) + f(centre + dx);
    kronrod += kKronrodWeights[k] * pair;
    if (k % 2 == 1) gauss += kGaussWeights[k / 2] * pair;
  }
  return {a, b, kronrod * half, std::abs((kronrod - gauss) * half)};
}

}  // namespace

QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                                    const QuadratureOptions& opts) {
  if (!(opts.tol > 0.0)) throw DomainError("integrate_adaptive: tol must be positive");
  if (a == b) return {0.0, 0.0, 0};
  if (b < a) {
    auto r = integrate_adaptive(f, b, a, opts);
    r.value = -r.value;
    return r;
  }

  std::priority_queue<Panel> panels;
  Panel first = gauss_kronrod_21(f, a, b);
  panels.push(first);
  double total = first.value;
  double total_error = first.error;
  int count = 1;

  while (total_error > opts.tol * std::max(1.0, std::abs(total))) {
    if (count >= opts.max_panels) {
      throw AccuracyFailure("integrate_adaptive: panel limit " + std::to_string(opts.max_panels) +
                                " reached with error " + std::to_string(total_error),
                            total, total_error);
    }
    Panel worst = panels.top();
    panels.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    Panel left = gauss_kronrod_21(f, worst.a, mid);
    Panel right = gauss_kronrod_21(f, mid, worst.b);
    total += left.value + right.value - worst.value;
    total_error += left.error + right.error - worst.error;
    panels.push(left);
    panels.push(right);
    ++count;
  }

  // Re-sum to shed the drift of the running updates.
  double sum = 0.0;
  double err = 0.0;
  while (!panels.empty()) {
    sum += panels.top().value;
    err += panels.top().error;
    panels.pop();
  }
  return {sum, err, count};
}

std::string_view to_string(ArcLabel label) {
  switch (label) {
    case ArcLabel::AB:
      return "AB";
    case ArcLabel::BC:
      return "BC";
    case ArcLabel::CD:
      return "CD";
    case ArcLabel::DA:
      return "DA";
    case ArcLabel::AD_lower:
      return "AD-lower";
    case ArcLabel::CB_upper:
      return "CB-upper";
  }
  return "?";
}

Arc Arc::reversed() const {
  Arc r = *this;
  std::swap(r.theta0, r.theta1);
  std::swap(r.start, r.end);
  return r;
}

Arc make_arc(ArcLabel label, double h) {
  const double u = u_of_h(h);
  const double ta = std::atan(u);  // angle of A = atan2(u², u)
  constexpr double pi = std::numbers::pi;
  constexpr CornerSign A{1, 1}, B{1, -1}, C{-1, -1}, D{-1, 1};

  Arc arc;
  arc.label = label;
  arc.h = h;
  switch (label) {
    case ArcLabel::AB:
      arc.theta0 = ta, arc.theta1 = -ta, arc.start = A, arc.end = B;
      break;
    case ArcLabel::BC:
      arc.theta0 = -ta, arc.theta1 = ta - pi, arc.start = B, arc.end = C;
      break;
    case ArcLabel::CD:
      arc.theta0 = ta - pi, arc.theta1 = -pi - ta, arc.start = C, arc.end = D;
      break;
    case ArcLabel::DA:
      arc.theta0 = -pi - ta, arc.theta1 = ta - 2.0 * pi, arc.start = D, arc.end = A;
      break;
    case ArcLabel::AD_lower:
      arc.theta0 = ta, arc.theta1 = -pi - ta, arc.start = A, arc.end = D;
      break;
    case ArcLabel::CB_upper:
      arc.theta0 = ta - pi, arc.theta1 = -2.0 * pi - ta, arc.start = C, arc.end = B;
      break;
  }
  return arc;
}

double arc_moment(const Arc& arc, int i, int j, Form form, const QuadratureOptions& opts) {
  if (i < 0 || j < 0) throw DomainError("arc_moment: exponents must be non-negative");
  const double r = std::sqrt(arc.h);
  auto integrand = [=](double t) {
    const double c = std::cos(t);
    const double s = std::sin(t);
    const double x = r * c;
    const double y = r * s;
    const double d = form == Form::dx ? -r * s : r * c;
    return std::pow(x, i) * std::pow(y, j) * d;
  };
  return integrate_adaptive(integrand, arc.theta0, arc.theta1, opts).value;
}

double arc_work(const Arc& arc, const std::function<FieldValue(double, double)>& field,
                const QuadratureOptions& opts) {
  const double r = std::sqrt(arc.h);
  auto integrand = [&](double t) {
    const double c = std::cos(t);
    const double s = std::sin(t);
    const FieldValue v = field(r * c, r * s);
    // dx = −r sin θ dθ, dy = r cos θ dθ
    return v.g * (-r * s) - v.f * (r * c);
  };
  return integrate_adaptive(integrand, arc.theta0, arc.theta1, opts).value;
}

}  // namespace pwmel
