#include "pwmel/melnikov.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "pwmel/errors.hpp"
#include "pwmel/geometry.hpp"

namespace pwmel {
namespace {

/// Zone k moment family in four-zone and two-zone-upper modes.
MomentFamily family_of(Mode mode, Zone zone) {
  if (mode == Mode::four_zone) {
    switch (zone) {
      case Zone::one:
        return MomentFamily::I;
      case Zone::two:
        return MomentFamily::J;
      case Zone::three:
        return MomentFamily::I_tilde;
      case Zone::four:
        return MomentFamily::J_tilde;
    }
  }
  return zone == Zone::one ? MomentFamily::U : MomentFamily::V;
}

/// Which slot (α, β, γ, δ) a base integral feeds.
RationalPoly& slot_of(CanonicalForm& cf, BaseIntegral base) {
  switch (base) {
    case BaseIntegral::I01:
    case BaseIntegral::U00:
      return cf.alpha;
    case BaseIntegral::I11:
    case BaseIntegral::U01:
      return cf.beta;
    case BaseIntegral::J00:
    case BaseIntegral::V00:
      return cf.gamma;
    case BaseIntegral::J01:
    case BaseIntegral::V01:
      return cf.delta;
    case BaseIntegral::none:
      break;
  }
  throw std::logic_error("canonical_form: moment reduced to no base");
}

void accumulate(CanonicalForm& cf, const ReducedMoment& rm, const Rational& weight) {
  if (weight == 0) return;
  if (rm.base_coeff != 0) slot_of(cf, rm.base).add_term(weight * rm.base_coeff, rm.base_power);
  cf.phi += rm.boundary * weight;
}

int floor_div2(int k) { return k >= 0 ? k / 2 : -((-k + 1) / 2); }

/// One corner crossing in flow order: the switching curve (sign of ±x²) and
/// the zones before and after.
struct Transition {
  Point p;
  int curve_sign;
  Zone before, after;
};

std::vector<Transition> transitions(double h, Mode mode) {
  const CornerPoints c = corner_points(h);
  switch (mode) {
    case Mode::four_zone:
      return {{c.B, -1, Zone::one, Zone::two},
              {c.C, -1, Zone::two, Zone::three},
              {c.D, +1, Zone::three, Zone::four},
              {c.A, +1, Zone::four, Zone::one}};
    case Mode::two_zone_upper:
      return {{c.D, +1, Zone::one, Zone::four}, {c.A, +1, Zone::four, Zone::one}};
    case Mode::two_zone_lower:
      return {{c.B, -1, Zone::one, Zone::four}, {c.C, -1, Zone::four, Zone::one}};
  }
  return {};
}

/// ∇H^k(P) · (1, f'(P.x)); every zone shares H = ½(x² + y²).
double gradient_along_curve(Zone /*zone*/, const Point& p, int curve_sign) {
  const double hx = p.x;
  const double hy = p.y;
  return hx + hy * parabola_slope(curve_sign, p.x);
}

}  // namespace

std::vector<double> phi_factors(double h, Mode mode) {
  const auto ts = transitions(h, mode);
  // Φ for the arc ending at transition k multiplies the ratios of every
  // transition from k to the end of the loop.
  std::vector<double> phi(ts.size(), 1.0);
  for (std::size_t k = 0; k < ts.size(); ++k) {
    double product = 1.0;
    for (std::size_t t = k; t < ts.size(); ++t) {
      const double num = gradient_along_curve(ts[t].after, ts[t].p, ts[t].curve_sign);
      const double den = gradient_along_curve(ts[t].before, ts[t].p, ts[t].curve_sign);
      if (den == 0.0) throw DegenerateCorner("phi_factors: vanishing gradient factor at a corner");
      product *= num / den;
    }
    phi[k] = product;
  }
  return phi;
}

std::vector<std::pair<Zone, ArcLabel>> zone_arcs(Mode mode) {
  switch (mode) {
    case Mode::four_zone:
      return {{Zone::one, ArcLabel::AB},
              {Zone::two, ArcLabel::BC},
              {Zone::three, ArcLabel::CD},
              {Zone::four, ArcLabel::DA}};
    case Mode::two_zone_upper:
      return {{Zone::one, ArcLabel::AD_lower}, {Zone::four, ArcLabel::DA}};
    case Mode::two_zone_lower:
      return {{Zone::one, ArcLabel::CB_upper}, {Zone::four, ArcLabel::BC}};
  }
  return {};
}

double melnikov_direct(const PerturbationSpec& spec, double h, const QuadratureOptions& opts) {
  const auto phi = phi_factors(h, spec.mode());
  const auto arcs = zone_arcs(spec.mode());
  double total = 0.0;
  for (std::size_t k = 0; k < arcs.size(); ++k) {
    const auto [zone, label] = arcs[k];
    const Arc arc = make_arc(label, h);
    auto field = [&spec, zone = zone](double x, double y) {
      return FieldValue{spec.f(zone, x, y), spec.g(zone, x, y)};
    };
    total += phi[k] * arc_work(arc, field, opts);
  }
  return total;
}

std::array<BaseIntegral, 4> CanonicalForm::bases() const {
  if (mode == Mode::four_zone) {
    return {BaseIntegral::I01, BaseIntegral::I11, BaseIntegral::J00, BaseIntegral::J01};
  }
  return {BaseIntegral::U00, BaseIntegral::U01, BaseIntegral::V00, BaseIntegral::V01};
}

bool CanonicalForm::is_zero() const {
  return alpha.is_zero() && beta.is_zero() && gamma.is_zero() && delta.is_zero() && phi.is_zero();
}

CanonicalForm canonical_form(const PerturbationSpec& spec) {
  if (spec.mode() == Mode::two_zone_lower) {
    // Mirror onto the upper system; the mirror reverses the loop orientation.
    CanonicalForm cf = canonical_form(reflect_vertically(spec));
    cf.mode = Mode::two_zone_lower;
    const Rational minus_one(-1);
    cf.alpha *= minus_one;
    cf.beta *= minus_one;
    cf.gamma *= minus_one;
    cf.delta *= minus_one;
    cf.phi *= minus_one;
    return cf;
  }

  CanonicalForm cf;
  cf.mode = spec.mode();
  cf.n = spec.degree();
  for (Zone zone : spec.zones()) {
    const MomentFamily family = family_of(spec.mode(), zone);
    for (int d = 0; d <= spec.degree(); ++d) {
      for (int i = 0; i <= d; ++i) {
        const int j = d - i;
        // ∫ g dx − f dy, term by term.
        accumulate(cf, reduce_moment({family, i, j}), to_rational(spec.b(zone, i, j)));
        const double a = spec.a(zone, i, j);
        if (a != 0.0) accumulate(cf, reduce_dy_moment({family, i, j}), -to_rational(a));
      }
    }
  }
  return cf;
}

long double evaluate(const CanonicalForm& cf, double h) {
  const BaseValues b = base_integrals(h);
  const auto bases = cf.bases();
  const long double hl = h;
  const long double u = u_of_h(h);
  return cf.alpha.evaluate(hl) * b[bases[0]] + cf.beta.evaluate(hl) * b[bases[1]] +
         cf.gamma.evaluate(hl) * b[bases[2]] + cf.delta.evaluate(hl) * b[bases[3]] +
         cf.phi.evaluate(u);
}

DegreeBounds degree_bounds(int n, Mode mode) {
  if (mode == Mode::four_zone) {
    return {floor_div2(n - 1), floor_div2(n - 2), floor_div2(n), floor_div2(n - 1),
            2 * n + (n % 2 == 0 ? 2 : 1)};
  }
  return {floor_div2(n), floor_div2(n - 1), floor_div2(n), floor_div2(n - 1), 2 * n + 1};
}

std::string degree_violation(const CanonicalForm& cf) {
  const DegreeBounds b = degree_bounds(cf.n, cf.mode);
  std::ostringstream os;
  auto check = [&](const char* name, const RationalPoly& p, int bound) {
    if (p.degree() > bound && os.tellp() == 0) {
      os << "deg " << name << " = " << p.degree() << " exceeds " << bound;
    }
  };
  check("alpha", cf.alpha, b.alpha);
  check("beta", cf.beta, b.beta);
  check("gamma", cf.gamma, b.gamma);
  check("delta", cf.delta, b.delta);
  check("phi", cf.phi, b.phi);
  if (os.tellp() == 0 && is_two_zone(cf.mode)) {
    for (int k = 0; k <= cf.phi.degree(); ++k) {
      if (cf.phi.coeff(k) != 0 && (k < 3 || k % 2 == 0)) {
        os << "phi has a u^" << k << " term; expected u^3 * q(u^2)";
        break;
      }
    }
  }
  return os.str();
}

long double eval_W(long double u) {
  if (u < 0.0L) throw DomainError("eval_W: u must be non-negative");
  if (std::isinf(u)) return 0.0L;
  // With s = 1/sqrt(1+u²): s·sqrt(1−s²) = u/(1+u²) and asin s = atan(1/u).
  const long double ratio = u / (1.0L + u * u);
  if (u <= 1.0L) return std::numbers::pi_v<long double> / 4.0L + 0.5L * (ratio - std::atan(u));
  return 0.5L * (ratio + std::atan(1.0L / u));
}

double eval_W(double u) { return static_cast<double>(eval_W(static_cast<long double>(u))); }

long double W_remainder(long double u) {
  if (u < 0.0L) throw DomainError("W_remainder: u must be non-negative");
  if (u > 0.5L) return eval_W(u) - std::numbers::pi_v<long double> / 4.0L + u * u * u / 3.0L;
  // Σ_{k≥2} (−1)^k k/(2k+1) u^(2k+1)
  const long double u2 = u * u;
  long double power = u2 * u2 * u;
  long double sum = 0.0L;
  for (int k = 2; k < 200; ++k) {
    const long double term = (k % 2 == 0 ? 1.0L : -1.0L) * k / (2.0L * k + 1.0L) * power;
    sum += term;
    if (std::fabs(term) <= std::numeric_limits<long double>::epsilon() * std::fabs(sum) * 0.25L) break;
    power *= u2;
  }
  return sum;
}

UForm::UForm(Mode mode_, int n_, PiPoly P_, RationalPoly Qc_)
    : mode(mode_), n(n_), P(std::move(P_)), Qc(std::move(Qc_)) {
  p_numeric_ = P.numeric();
  for (const auto& c : Qc.coefficients()) q_numeric_.push_back(to_long_double(c));
}

long double UForm::operator()(long double u) const {
  const long double v = u * u * (u * u + 1.0L);
  long double value = u * horner(p_numeric_, u);
  if (!q_numeric_.empty()) value += v * horner(q_numeric_, v) * eval_W(u);
  return value;
}

long double UForm::magnitude(long double u) const {
  const long double v = u * u * (u * u + 1.0L);
  const long double au = std::fabs(u);
  long double p = 0.0L;
  for (auto it = p_numeric_.rbegin(); it != p_numeric_.rend(); ++it) p = p * au + std::fabs(*it);
  long double q = 0.0L;
  for (auto it = q_numeric_.rbegin(); it != q_numeric_.rend(); ++it) q = q * v + std::fabs(*it);
  return au * p + v * q * eval_W(u);
}

UForm u_form(const CanonicalForm& cf) {
  const RationalPoly H({0, 0, 1, 0, 1});  // h = u⁴ + u²
  const RationalPoly U({0, 1});
  RationalPoly rational_part;
  RationalPoly pi_part;
  RationalPoly Qc;

  if (cf.mode == Mode::four_zone) {
    // I01 = πh/2 − J01, J01 = 2h·W(u), I11 = (2/3)u⁶, J00 = −2u.
    rational_part = U * cf.gamma.compose(H) * Rational(-2) +
                    RationalPoly::monomial(Rational(2, 3), 6) * cf.beta.compose(H) + cf.phi;
    pi_part = H * cf.alpha.compose(H) * Rational(1, 2);
    Qc = (cf.delta - cf.alpha) * Rational(2);
  } else {
    // U00 = −2u, V00 = 2u, U01 = πh − J01, V01 = J01 = 2h·W(u).
    rational_part = U * (cf.gamma - cf.alpha).compose(H) * Rational(2) + cf.phi;
    pi_part = H * cf.beta.compose(H);
    Qc = (cf.delta - cf.beta) * Rational(2);
  }

  if (rational_part.coeff(0) != 0 || pi_part.coeff(0) != 0) {
    throw std::logic_error("u_form: polynomial part does not vanish at u = 0");
  }
  auto shift_down = [](const RationalPoly& p) {
    std::vector<Rational> c;
    for (int k = 1; k <= p.degree(); ++k) c.push_back(p.coeff(k));
    return RationalPoly(std::move(c));
  };
  return UForm(cf.mode, cf.n, PiPoly(shift_down(rational_part), shift_down(pi_part)), Qc);
}

double melnikov_canonical(const UForm& uf, double h) {
  return static_cast<double>(uf(static_cast<long double>(u_of_h(h))));
}

}  // namespace pwmel
